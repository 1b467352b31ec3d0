#pragma once

#include <vector>

#include "treespace/balance.hpp"
#include "treespace/classify.hpp"
#include "treespace/dual.hpp"
#include "treespace/sets.hpp"
#include "treespace/trees.hpp"

namespace treespace {

// A point of continuity of the unit ball of the (possibly reduced) tree
// with |f_j(x)| < eps for every given functional, built exactly as a
// telescoping branch correction at a stabilized level plus a sign-balanced
// spray over the rest of that level.
inline FinVector pc_approximant(const std::vector<Functional>& fs, const Rational& eps,
                                const TreeView& tree = TreeView::full_binary()) {
    require(eps > 0, "eps must be positive");
    for (const auto& f : fs) require(f.kind == tree.kind, "functional kind mismatch");
    if (fs.empty()) return basis_vector(root(), tree.kind);

    const std::size_t k = fs.size();
    const Rational tau = eps / pow2(static_cast<int>(k) + 1);
    const auto stl = small_tail_level(fs, tau);
    const std::size_t n1 = std::max(stl.level, joint_horizon(fs)) + 1;
    const std::size_t n2 = n1 + 1;

    const auto& branches = stl.branches;
    for (const auto& b : branches)
        require(tree.contains(b.node_at(n2)), "returned branch leaves the tree");

    // split the level into the branch subtrees S_i and the remainder R
    std::vector<NodeId> level = tree.level(n2);
    std::vector<NodeId> S, R;
    for (const auto& t : level) {
        bool under = false, is_branch_node = false;
        for (const auto& b : branches) {
            if (is_prefix_of(b.node_at(n1), t)) under = true;
            if (b.node_at(n2) == t) is_branch_node = true;
        }
        if (is_branch_node) continue;
        (under ? S : R).push_back(t);
    }

    FinVector x(tree.kind);
    const Rational half(1, 2);
    for (const auto& b : branches) {
        x.add(b.node_at(n2), half);
        x.add(b.node_at(n1), -half);
    }

    if (!S.empty() || !R.empty()) {
        // the sign lemma on the scaled coefficient matrix, S-columns halved
        SignProblem p;
        p.rows.resize(k);
        for (std::size_t j = 0; j < k; ++j) {
            for (const auto& t : S) p.rows[j].push_back(half * fs[j].coefficient(t) / tau);
            for (const auto& t : R) p.rows[j].push_back(fs[j].coefficient(t) / tau);
            for (const auto& a : p.rows[j])
                check_certificate(abs_of(a) < 1, "level coefficient at or above the threshold");
        }
        const auto bal = balance_signs(p);
        std::size_t col = 0;
        for (const auto& t : S) x.add(t, half * Rational(bal.theta[col++]));
        for (const auto& t : R) x.add(t, Rational(bal.theta[col++]));
    }

    check_certificate(unit_mass_on_every_branch(x, tree),
                      "approximant misses unit mass on some branch");
    for (const auto& f : fs)
        check_certificate(abs_of(f.eval(x)) < eps, "approximant not inside the weak neighborhood");
    return x;
}

// A point of continuity close to y in the weak sense: fills the missing
// branch mass below level n with shifted approximants whose budgets are cut
// so the constraint functionals cannot tell the difference.
inline FinVector pc_point_near(const TreeView& tree, const FinVector& y,
                               const std::vector<std::pair<Functional, Rational>>& constraints) {
    require(y.kind == tree.kind, "vector kind mismatch");
    require(norm_chains(y).value <= 1, "y must lie in the unit ball");
    for (const auto& [t, v] : y.entries) require(tree.contains(t), "y leaves the tree");

    const std::size_t n = y.is_zero() ? 0 : y.support_depth() + 1;
    const auto level = tree.level(n);

    Rational tau(1);
    for (const auto& [f, e] : constraints) tau = std::min(tau, e);
    tau /= Rational(Integer(level.size()) + 1);

    FinVector out = y;
    for (const auto& t : level) {
        Rational lambda(0);
        for (std::size_t j = 0; j <= t.depth(); ++j) lambda += abs_of(y.coeff(t.prefix(j)));
        if (lambda == 1) continue;
        std::vector<Functional> pulled;
        for (const auto& [f, e] : constraints) pulled.push_back(pullback(f, t));
        const FinVector xt = pc_approximant(pulled, tau, tree.subtree_at(t));
        out += (Rational(1) - lambda) * shift(xt, t);
    }

    check_certificate(unit_mass_on_every_branch(out, tree), "pc_point_near output is not PC");
    for (const auto& [f, e] : constraints)
        check_certificate(abs_of(f.eval(out) - f.eval(y)) < e,
                          "pc_point_near output left the neighborhood");
    return out;
}

// Binary tree space entry point: a point of continuity of B_X inside the
// given weak neighborhood of its center.
inline FinVector pc_near(const FinVector& y, const WeakNbhdSpec& w) {
    require(w.set == SetId::BX, "pc_near expects a neighborhood of B_X");
    require(w.center == y, "neighborhood center mismatch");
    require(y.kind == TreeKind::binary, "binary tree space operation");
    FinVector out = pc_point_near(TreeView::full_binary(), y, w.constraints);
    check_certificate(classify(out).point_of_continuity, "output is not a point of continuity");
    check_certificate(nbhd_membership(out, w), "output is not in the neighborhood");
    return out;
}

}  // namespace treespace
