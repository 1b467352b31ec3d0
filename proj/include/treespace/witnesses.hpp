#pragma once

#include <optional>
#include <vector>

#include "treespace/classify.hpp"
#include "treespace/sets.hpp"

namespace treespace {

namespace detail {

// Least (depth, word)-ordered strict descendant of `start` of depth at
// least `min_depth` where every listed functional has coefficient exactly
// zero.  Binary tree.  Deterministic; exists because each level blocks at
// most finitely many nodes.
inline NodeId deep_clear_node(const NodeId& start, const std::vector<const Functional*>& fs,
                              std::size_t min_depth) {
    std::size_t d = std::max(min_depth, start.depth() + 1);
    while (true) {
        const std::size_t rel = d - start.depth();
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rel); ++bits) {
            NodeId s = start;
            for (std::size_t i = 0; i < rel; ++i)
                s.word.push_back(static_cast<std::uint32_t>(bits >> (rel - 1 - i) & 1));
            bool clear = true;
            for (const auto* f : fs) clear = clear && f->coefficient(s) == 0;
            if (clear) return s;
        }
        ++d;
    }
}

}  // namespace detail

// A single Daugavet-style witness: an element of the given positive-ball
// slice at exact distance 2 from x, certified by one chain along which both
// x and y sum to one.
struct DaugavetWitness {
    FinVector y;
    Chain chain;
    NodeId fresh;     // the node carrying the replenished mass
    Rational lambda;  // mass of the slice maximizer above it
};

inline DaugavetWitness daugavet_witness(const FinVector& x, const SliceSpec& slice) {
    require(slice.set == SetId::BPLUS, "daugavet_witness expects a slice of B+");
    require(x.kind == TreeKind::binary, "binary tree space operation");
    require(x.nonnegative() && norm_chains(x).value == 1, "x must lie in the positive unit sphere");

    const auto sup = sup_positive(slice.f);
    const FinVector& y0 = sup.witness;
    const auto norming = norm_chains(x).optimal_set;
    const NodeId anchor = norming.back();

    const std::size_t min_depth =
        std::max(anchor.depth() + 1, y0.support_depth() + 1);
    const NodeId s = detail::deep_clear_node(anchor, {&slice.f}, min_depth);

    Rational lambda(0);
    for (std::size_t k = 0; k < s.depth(); ++k) lambda += y0.coeff(s.prefix(k));

    FinVector y = y0;
    y.add(s, Rational(1) - lambda);
    const Chain chain = ancestor_chain(s);

    Rational sx(0), sy(0);
    for (const auto& t : chain.nodes) {
        sx += x.coeff(t);
        sy += y.coeff(t);
    }
    check_certificate(sx == 1 && sy == 1, "daugavet chain sums are not exactly one");
    check_certificate(slice_membership(y, slice), "daugavet witness left the slice");
    check_certificate(norm_chains(x + y).value == 2, "norm(x + y) is not exactly two");
    return {std::move(y), chain, s, lambda};
}

// A replayable defiance certificate: elements drawn from the given slices
// or neighborhoods, one chain along which they stack up to norm exactly n,
// and a norm-one separator pinning them away from the target.
struct DefianceTranscript {
    std::vector<FinVector> elements;
    std::vector<int> signs;  // empty for the positive variant (all +1)
    Chain chain;
    std::optional<Functional> separator;
    FinVector target;  // 0, or the avoided point
    Rational gap;      // separator(elements) - separator(target)
};

// Iterated positive-slice defiance: elements x_i of the B+ slices with a
// single chain C such that every x_i sums to 1 along C, so the stack
// x_1 + ... + x_n has norm exactly n.  With `avoid` in Omega+, the chain
// starts at a node incomparable to its support, making the separator
// vanish at it.
inline DefianceTranscript positive_slice_defiance(const std::vector<SliceSpec>& slices,
                                                  const std::optional<FinVector>& avoid = {}) {
    for (const auto& s : slices)
        require(s.set == SetId::BPLUS, "positive_slice_defiance expects slices of B+");

    DefianceTranscript out;
    out.target = FinVector(TreeKind::binary);
    NodeId tip = root();
    if (avoid) {
        require(classify(*avoid).in_omega_plus,
                "avoid must lie in Omega+ (a maximal support antichain blocks every chain)");
        out.target = *avoid;
        const auto s0 = fresh_node(root(), avoid->support(), TreeKind::binary,
                                   FreshMode::incomparable_to_all);
        require(s0.has_value(), "no node incomparable to the support of avoid");
        tip = *s0;
    }

    for (const auto& slice : slices) {
        const auto sup = sup_positive(slice.f);
        const FinVector& y0 = sup.witness;
        const NodeId s = detail::deep_clear_node(tip, {&slice.f}, y0.support_depth() + 1);
        Rational lambda(0);
        for (std::size_t k = 0; k < s.depth(); ++k) lambda += y0.coeff(s.prefix(k));
        FinVector xi = y0;
        xi.add(s, Rational(1) - lambda);
        out.elements.push_back(std::move(xi));
        tip = s;
        have_tip = true;
    }
    out.chain = slices.empty() ? Chain{} : ancestor_chain(tip);
    if (!slices.empty()) out.separator = chain_functional(out.chain);
    out.gap = Rational(1);

    // full recheck of the transcript invariants
    if (out.separator) {
        check_certificate(dual_norm(*out.separator).value == 1, "separator is not norm one");
        check_certificate(out.separator->eval(out.target) == 0,
                          "separator does not vanish at the avoided point");
    }
    FinVector stack(TreeKind::binary);
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const auto& xi = out.elements[i];
        check_certificate(slice_membership(xi, slices[i]), "defiance element left its slice");
        Rational along(0);
        for (const auto& t : out.chain.nodes) along += xi.coeff(t);
        check_certificate(along == 1, "element does not sum to one along the chain");
        check_certificate(out.separator->eval(xi) == 1, "separator is not one at an element");
        stack += xi;
    }
    check_certificate(norm_chains(stack).value == Rational(Integer(slices.size())),
                      "stacked defiance elements do not reach norm n");
    return out;
}

// Signed defiance for relative weak neighborhoods of Sigma: elements
// x_i in V_i and signs theta_i with a chain along which the signed stack
// reaches norm exactly n, keeping all nonzero theta_i x_i(t) aligned.
inline DefianceTranscript sigma_pibase_defiance(const std::vector<WeakNbhdSpec>& nbhds) {
    for (const auto& w : nbhds) {
        require(w.set == SetId::SIGMA, "sigma_pibase_defiance expects neighborhoods of Sigma");
        require(set_membership(SetId::SIGMA, w.center), "center must lie in Sigma");
        for (const auto& [f, eps] : w.constraints)
            require(f.branch_parts.empty(), "pi-base defiance needs finitely supported functionals");
    }

    DefianceTranscript out;
    out.target = FinVector(TreeKind::binary);
    std::vector<NodeId> chain_nodes;
    FinVector running(TreeKind::binary);  // sum of theta_i x_i

    for (const auto& w : nbhds) {
        const FinVector& c = w.center;
        const bool first = chain_nodes.empty();
        const NodeId tip = first ? root() : Chain(chain_nodes).max();

        // a unit coordinate of the center compatible with the chain
        std::optional<NodeId> s;
        for (const auto& [t, v] : c.entries)
            if (first || comparable(t, tip))
                if (!s || bfs_less(t, *s)) s = t;

        FinVector xi(TreeKind::binary);
        int theta = 1;
        if (s) {
            xi = c;
            const bool on_chain =
                std::find(chain_nodes.begin(), chain_nodes.end(), *s) != chain_nodes.end();
            if (on_chain)
                theta = sign_pm(running.coeff(*s)) * sign_pm(c.coeff(*s));
            else
                chain_nodes.push_back(*s);
        } else {
            // the center vanishes on every chain-compatible node; perturb it
            // by a fresh basis vector the constraints cannot see
            std::vector<const Functional*> fs;
            for (const auto& [f, eps] : w.constraints) fs.push_back(&f);
            const NodeId star = detail::deep_clear_node(tip, fs, tip.depth() + 1);
            xi = c;
            xi.add(star, Rational(1));
            chain_nodes.push_back(star);
        }
        out.elements.push_back(xi);
        out.signs.push_back(theta);
        running += Rational(theta) * xi;
    }

    out.chain = Chain(chain_nodes);
    Functional sep(TreeKind::binary);
    for (const auto& t : out.chain.nodes) sep.add_finite(t, Rational(sign_pm(running.coeff(t))));
    if (!nbhds.empty()) out.separator = sep;
    out.gap = Rational(1);

    // recheck: memberships, alignment, chain sums, the exact norm
    Rational along(0);
    for (const auto& t : out.chain.nodes) {
        along += abs_of(running.coeff(t));
        for (std::size_t i = 0; i < out.elements.size(); ++i) {
            const Rational v = Rational(out.signs[i]) * out.elements[i].coeff(t);
            check_certificate(v * running.coeff(t) >= 0, "sign discipline broken on the chain");
        }
    }
    check_certificate(along == Rational(Integer(nbhds.size())),
                      "signed chain sums do not reach n");
    check_certificate(norm_chains(running).value == Rational(Integer(nbhds.size())),
                      "signed stack does not have norm n");
    for (std::size_t i = 0; i < nbhds.size(); ++i) {
        check_certificate(nbhd_membership(out.elements[i], nbhds[i]),
                          "defiance element left its neighborhood");
        if (out.separator)
            check_certificate(
                out.separator->eval(Rational(out.signs[i]) * out.elements[i]) == 1,
                "separator is not one at a signed element");
    }
    if (out.separator)
        check_certificate(dual_norm(*out.separator).value == 1, "separator is not norm one");
    return out;
}

// Alternative Daugavet witness: a strongly exposed y in the B_X slice and a
// sign theta with norm(x + theta y) exactly 2.
struct AdpWitness {
    FinVector y;
    int theta = 1;
    Chain chain;
    NodeId crossing;  // the unique meeting point of the antichain and the branch
};

inline AdpWitness adp_witness(const FinVector& x, const SliceSpec& slice) {
    require(slice.set == SetId::BX, "adp_witness expects a slice of B_X");
    require(x.kind == TreeKind::binary, "binary tree space operation");
    require(norm_chains(x).value == 1, "x must lie on the unit sphere");

    const auto d = dual_norm(slice.f);
    const FinVector y = d.witness(TreeKind::binary);

    const auto norming = norm_chains(x).optimal_set;
    const NodeId anchor = norming.back();
    // walk the all-0 extension of the norming chain until it meets alpha
    NodeId crossing = anchor;
    {
        const Antichain alpha(d.alpha);
        std::optional<NodeId> above;
        for (const auto& a : alpha.nodes)
            if (is_prefix_of(a, anchor)) above = a;
        if (above) {
            crossing = *above;
        } else {
            while (!alpha.contains(crossing)) crossing = crossing.child(0);
        }
    }
    const int theta = sign_pm(x.coeff(crossing)) * sign_pm(y.coeff(crossing));

    const Chain chain =
        ancestor_chain(crossing.depth() > anchor.depth() ? crossing : anchor);
    const FinVector z = x + Rational(theta) * y;
    Rational along(0);
    for (const auto& t : chain.nodes) along += abs_of(z.coeff(t));
    check_certificate(along == 2, "chain certificate does not sum to two");
    check_certificate(norm_chains(z).value == 2, "norm(x + theta y) is not exactly two");
    check_certificate(classify(y).extreme, "slice witness is not strongly exposed");
    check_certificate(slice_membership(y, slice), "slice witness left the slice");
    return {y, theta, chain, crossing};
}

// Selection certificate showing no sequence drawn from the given slices of
// C can converge to x in Omega+ on the sphere: a separator pair (g, h) with
// g = 1 on the positive-side picks but g(x) = 0, and h = 1 at x but h <= 0
// on the negative cone.  Every convex combination of the selection stays at
// distance >= 1/4 from x.
struct CNonScdWitness {
    std::vector<FinVector> elements;      // aligned with the input slices
    std::vector<bool> from_positive;      // which slices meet B+
    std::optional<Functional> g;          // positive-part separator (if any slice meets B+)
    Functional h;                          // norming chain functional of x
    Chain chain;
    Rational gap_bound;                    // 1/4
};

inline CNonScdWitness c_non_scd_witness(const FinVector& x, const std::vector<SliceSpec>& slices) {
    for (const auto& s : slices) require(s.set == SetId::C, "c_non_scd_witness expects slices of C");
    const auto rep = classify(x);
    require(rep.in_omega_plus && rep.on_sphere, "x must lie in Omega+ on the unit sphere");

    CNonScdWitness out;
    out.gap_bound = Rational(1, 4);
    out.elements.resize(slices.size(), FinVector(TreeKind::binary));
    out.from_positive.resize(slices.size(), false);

    std::vector<SliceSpec> positive_slices;
    std::vector<std::size_t> positive_index;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const Rational plus = sup_positive(slices[i].f).value;
        const Rational minus = sup_positive(-slices[i].f).value;
        const Rational sup_c = std::max(plus, minus);
        if (plus > sup_c - slices[i].delta) {
            out.from_positive[i] = true;
            positive_slices.push_back(
                make_slice(SetId::BPLUS, slices[i].f, slices[i].delta - (sup_c - plus)));
            positive_index.push_back(i);
        } else {
            // the slice lives on the negative side; take its attaining point
            out.elements[i] = -sup_positive(-slices[i].f).witness;
        }
    }
    if (!positive_slices.empty()) {
        auto defiance = positive_slice_defiance(positive_slices, x);
        for (std::size_t j = 0; j < positive_index.size(); ++j)
            out.elements[positive_index[j]] = std::move(defiance.elements[j]);
        out.g = std::move(defiance.separator);
        out.chain = std::move(defiance.chain);
    }
    out.h = chain_functional(Chain(norm_chains(x).optimal_set));

    check_certificate(dual_norm(out.h).value == 1, "h is not norm one");
    check_certificate(out.h.eval(x) == 1, "h does not norm x");
    if (out.g) check_certificate(out.g->eval(x) == 0, "g does not vanish at x");
    for (std::size_t i = 0; i < slices.size(); ++i) {
        check_certificate(slice_membership(out.elements[i], slices[i]),
                          "selection element left its slice of C");
        if (out.g && out.from_positive[i])
            check_certificate(out.g->eval(out.elements[i]) == 1,
                              "g is not one on a positive-side element");
        if (!out.from_positive[i])
            check_certificate((-out.elements[i]).nonnegative(),
                              "negative-side element is not in B-");
    }
    return out;
}

}  // namespace treespace
