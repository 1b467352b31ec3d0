#pragma once

#include <vector>

#include "treespace/dual.hpp"
#include "treespace/pc.hpp"
#include "treespace/sets.hpp"
#include "treespace/trees.hpp"

namespace treespace {

// A finitely branching subtree carrying all of f, with an exact audit of
// the pruned subtree masses.  For representable functionals the level-wise
// selection keeps every child of positive subtree mass, so the total pruned
// mass is exactly zero and the per-level budgets eps/2^k are trivially met.
struct ReductionResult {
    TreeView tree;
    Rational pruned_mass;  // exact; 0 for this functional class
    Rational budget;       // the eps the reduction was asked for
};

inline ReductionResult finitely_branching_reduction(const std::vector<Functional>& fs,
                                                    const Rational& eps) {
    require(eps > 0, "eps must be positive");
    std::set<NodeId> core;
    std::vector<Branch> tails;
    std::size_t hor = 1;
    for (const auto& f : fs) {
        require(f.kind == TreeKind::countable, "reduction works on the countably branching tree");
        hor = std::max(hor, horizon(f));
        for (const auto& [t, v] : f.finite_part) core.insert(t);
        for (const auto& part : f.branch_parts) tails.push_back(part.branch);
    }
    for (const auto& b : tails)
        for (std::size_t j = 0; j <= hor; ++j) core.insert(b.node_at(j));
    ReductionResult out{TreeView::make_reduced(TreeKind::countable, std::move(core), tails),
                        Rational(0), eps};

    // audit: every node whose subtree carries mass sits inside the tree, so
    // all pruned subtrees have mass exactly zero
    for (const auto& f : fs) {
        detail::AntichainDp dp(f);
        std::vector<NodeId> frontier{root()};
        while (!frontier.empty()) {
            const NodeId u = frontier.back();
            frontier.pop_back();
            if (u.depth() > hor) continue;
            for (const auto& c : dp.data_children(u)) {
                if (!out.tree.contains(c))
                    out.pruned_mass += subtree_mass(f, c);
                else
                    frontier.push_back(c);
            }
        }
    }
    check_certificate(out.pruned_mass < eps, "pruned mass exceeds the budget");
    check_certificate(out.pruned_mass == 0, "representable reduction should prune zero mass");
    return out;
}

inline ReductionResult finitely_branching_reduction(const Functional& f, const Rational& eps) {
    return finitely_branching_reduction(std::vector<Functional>{f}, eps);
}

// A basic weak-open set W(x0, delta0) = {y in B : |y(s) - x0(s)| < delta0
// on supp(x0)} contained in the given neighborhood of the countably
// branching tree ball, with the exact inequality chain as certificate.
struct PibaseWitness {
    FinVector x0;
    Rational delta0;
    TreeView tree;  // the finitely branching reduction used
    // per constraint: |f(center - x0)|, dual norm of the restriction,
    // residual mass off the tree, and the certified total bound
    struct Row {
        Rational center_term;
        Rational restricted_dual_norm;
        Rational residual;
        Rational total_bound;
        Rational eps;
    };
    std::vector<Row> certificate;

    WeakNbhdSpec basic_neighborhood() const {
        std::vector<std::pair<Functional, Rational>> cs;
        for (const auto& [s, v] : x0.entries) cs.emplace_back(e_star(s, x0.kind), delta0);
        return WeakNbhdSpec{SetId::BX, x0, std::move(cs)};
    }
};

inline PibaseWitness pibase_basic_witness(const WeakNbhdSpec& w) {
    require(w.set == SetId::BX, "pibase_basic_witness expects a neighborhood of the ball");
    require(w.center.kind == TreeKind::countable, "countably branching tree operation");

    Rational eps_min(1);
    std::vector<Functional> fs;
    for (const auto& [f, e] : w.constraints) {
        fs.push_back(f);
        eps_min = std::min(eps_min, e);
    }
    auto red = finitely_branching_reduction(fs.empty() ? std::vector<Functional>{Functional(
                                                              TreeKind::countable)}
                                                       : fs,
                                            eps_min / 4);
    // make sure the center lives inside the reduced tree
    {
        std::set<NodeId> core = red.tree.core;
        for (const auto& [t, v] : w.center.entries)
            for (std::size_t j = 0; j <= t.depth(); ++j) core.insert(t.prefix(j));
        red.tree = TreeView::make_reduced(TreeKind::countable, std::move(core), red.tree.tails);
    }

    std::vector<std::pair<Functional, Rational>> quartered;
    for (const auto& [f, e] : w.constraints)
        quartered.emplace_back(restrict_to_tree(f, red.tree), e / 4);
    const FinVector x0 = pc_point_near(red.tree, w.center, quartered);

    // h: the most support nodes any branch can collect
    std::size_t h = 1;
    for (const auto& [t, v] : x0.entries) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j <= t.depth(); ++j) hits += x0.coeff(t.prefix(j)) != 0;
        h = std::max(h, hits);
    }

    PibaseWitness out;
    out.tree = red.tree;
    out.x0 = x0;
    out.delta0 = Rational(1);
    std::vector<Rational> dual_norms;
    for (const auto& [f, e] : quartered) {
        const Rational m = dual_norm(f).value;
        dual_norms.push_back(m);
        out.delta0 = std::min(out.delta0,
                              w.constraints[dual_norms.size() - 1].second /
                                  (Rational(8) * Rational(Integer(h)) * std::max(m, Rational(1))));
    }
    if (w.constraints.empty()) out.delta0 = Rational(1, 8);

    // diam(W(x0, d) ∩ B_{X0}) < 4 h d: each off-support coordinate and each
    // off-support chain piece is caught by the unit branch masses of x0
    for (std::size_t i = 0; i < w.constraints.size(); ++i) {
        PibaseWitness::Row row;
        row.center_term = abs_of(w.constraints[i].first.eval(w.center) -
                                 w.constraints[i].first.eval(x0));
        row.restricted_dual_norm = dual_norms[i];
        row.residual = Rational(0);  // audited exactly by the reduction
        row.total_bound = row.center_term +
                          dual_norms[i] * Rational(2) * Rational(Integer(h)) * out.delta0 +
                          Rational(2) * row.residual;
        row.eps = w.constraints[i].second;
        check_certificate(row.center_term < row.eps / 4, "center term exceeds eps/4");
        check_certificate(row.total_bound < row.eps, "containment bound not strict");
        out.certificate.push_back(row);
    }
    check_certificate(unit_mass_on_every_branch(x0, red.tree), "x0 is not PC in the reduced ball");
    return out;
}

}  // namespace treespace
