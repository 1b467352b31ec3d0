#pragma once

#include <optional>
#include <set>
#include <vector>

#include "treespace/families.hpp"
#include "treespace/vectors.hpp"

namespace treespace {

// Minimal-weight decomposition of a nonnegative vector into antichain
// indicators: min sum(lambda) with  sum lambda_a 1_a = y,  lambda >= 0.
// With `exclude_maximal` the antichains are restricted to the non-maximal
// ones (the vertices of the Omega+ hull), which turns the total into the
// gauge of conv(Omega+); without it the total is the gauge of conv(Sigma+),
// i.e. the norm of y.  Solved exactly by column generation: the pricing
// problem is the (flagged) antichain dynamic program over the support.
struct AntichainDecomposition {
    Rational total;
    std::vector<std::pair<Rational, std::vector<NodeId>>> parts;
};

namespace detail {

// max of sum u_t over antichains contained in the support, optionally
// required to leave a free branch (binary tree).
struct PricingDp {
    const std::vector<NodeId>& supp;
    const std::vector<Rational>& u;
    std::set<NodeId> hull;
    mutable std::map<std::pair<NodeId, bool>, Rational> memo;

    PricingDp(const std::vector<NodeId>& s, const std::vector<Rational>& duals)
        : supp(s), u(duals) {
        for (const auto& t : s)
            for (std::size_t k = 0; k <= t.depth(); ++k) hull.insert(t.prefix(k));
    }

    std::optional<Rational> weight(const NodeId& t) const {
        for (std::size_t i = 0; i < supp.size(); ++i)
            if (supp[i] == t) return u[i];
        return std::nullopt;
    }

    Rational best(const NodeId& t, bool need_free) const {
        if (!hull.count(t)) return Rational(0);  // empty selection, branches free
        if (auto it = memo.find({t, need_free}); it != memo.end()) return it->second;
        const NodeId c0 = t.child(0), c1 = t.child(1);
        Rational v;
        if (!need_free) {
            v = std::max(best(c0, false) + best(c1, false), Rational(0));
            if (auto w = weight(t)) v = std::max(v, *w);
        } else {
            v = std::max({Rational(0), best(c0, true) + best(c1, false),
                          best(c0, false) + best(c1, true)});
        }
        memo.emplace(std::make_pair(t, need_free), v);
        return v;
    }

    void realize(const NodeId& t, bool need_free, std::vector<NodeId>& out) const {
        if (!hull.count(t) || best(t, need_free) == 0) return;
        const NodeId c0 = t.child(0), c1 = t.child(1);
        if (!need_free) {
            if (auto w = weight(t); w && *w == best(t, false) &&
                                    *w >= best(c0, false) + best(c1, false)) {
                out.push_back(t);
                return;
            }
            realize(c0, false, out);
            realize(c1, false, out);
            return;
        }
        if (best(t, true) == best(c0, true) + best(c1, false)) {
            realize(c0, true, out);
            realize(c1, false, out);
        } else {
            realize(c0, false, out);
            realize(c1, true, out);
        }
    }
};

}  // namespace detail

inline std::optional<AntichainDecomposition> antichain_decomposition(const FinVector& y,
                                                                     bool exclude_maximal) {
    require(y.kind == TreeKind::binary, "decompositions live on the binary tree");
    require(y.nonnegative(), "decomposition input must be nonnegative");
    if (y.is_zero()) return AntichainDecomposition{Rational(0), {}};
    // {eps} is the only antichain containing the root, and it is maximal.
    if (exclude_maximal && y.coeff(root()) != 0) return std::nullopt;

    const auto supp = y.support();
    const std::size_t m = supp.size();

    // Columns are antichains encoded as sorted index sets into supp.
    std::vector<std::vector<std::size_t>> columns;
    std::set<std::vector<std::size_t>> seen;
    const auto add_column = [&](const std::vector<NodeId>& nodes) {
        std::vector<std::size_t> col;
        for (const auto& t : nodes)
            col.push_back(std::size_t(
                std::find(supp.begin(), supp.end(), t) - supp.begin()));
        std::sort(col.begin(), col.end());
        if (seen.insert(col).second) columns.push_back(col);
        return std::size_t(std::find(columns.begin(), columns.end(), col) - columns.begin());
    };
    // Singletons are always admissible (a non-root singleton is never a
    // maximal antichain) and give the initial identity basis.
    for (const auto& t : supp) add_column({t});

    std::vector<std::size_t> basis(m);
    std::vector<std::vector<Rational>> binv(m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> xb(m);
    for (std::size_t i = 0; i < m; ++i) {
        basis[i] = i;
        binv[i][i] = Rational(1);
        xb[i] = y.coeff(supp[i]);
    }

    const auto column_vec = [&](std::size_t c) {
        std::vector<Rational> a(m, Rational(0));
        for (auto i : columns[c]) a[i] = Rational(1);
        return a;
    };

    while (true) {
        // duals u = 1^T Binv (all basic costs are 1)
        std::vector<Rational> u(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) u[j] += binv[i][j];

        // Bland entering rule over the registry, then price a new column.
        std::size_t entering = columns.size();
        for (std::size_t c = 0; c < columns.size() && entering == columns.size(); ++c) {
            Rational red(1);
            for (auto i : columns[c]) red -= u[i];
            if (red < 0) entering = c;
        }
        if (entering == columns.size()) {
            detail::PricingDp dp(supp, u);
            if (dp.best(root(), exclude_maximal) <= 1) break;  // optimal
            std::vector<NodeId> nodes;
            dp.realize(root(), exclude_maximal, nodes);
            entering = add_column(nodes);
        }

        const auto a = column_vec(entering);
        std::vector<Rational> d(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) d[i] += binv[i][j] * a[j];
        std::size_t leave = m;
        Rational best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (d[i] <= 0) continue;
            const Rational ratio = xb[i] / d[i];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        check_certificate(leave != m, "decomposition simplex claims an unbounded ray");

        // pivot
        const Rational piv = d[leave];
        for (auto& v : binv[leave]) v /= piv;
        xb[leave] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || d[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) binv[i][j] -= d[i] * binv[leave][j];
            xb[i] -= d[i] * xb[leave];
        }
        basis[leave] = entering;
    }

    AntichainDecomposition out{Rational(0), {}};
    for (std::size_t i = 0; i < m; ++i) {
        if (xb[i] == 0) continue;
        out.total += xb[i];
        std::vector<NodeId> nodes;
        for (auto k : columns[basis[i]]) nodes.push_back(supp[k]);
        out.parts.emplace_back(xb[i], std::move(nodes));
    }

    // recheck the decomposition coordinatewise
    FinVector sum(y.kind);
    for (const auto& [w, nodes] : out.parts) {
        check_certificate(w > 0, "negative decomposition weight");
        Antichain alpha(nodes);
        if (exclude_maximal)
            check_certificate(!is_maximal_antichain(alpha, y.kind),
                              "excluded antichain appears in the decomposition");
        for (const auto& t : nodes) sum.add(t, w);
    }
    check_certificate(sum == y, "decomposition does not reproduce the vector");
    return out;
}

// Gauge of conv(Omega+) on the positive cone; nullopt means infinite
// (positive mass at the root can never be covered).
inline std::optional<Rational> gauge_omega_plus(const FinVector& y) {
    auto d = antichain_decomposition(y, true);
    if (!d) return std::nullopt;
    return d->total;
}

// Exact membership in D = cconv(Omega+ u Omega-).
inline bool in_symmetrized_omega_hull(const FinVector& x) {
    const auto [plus, minus] = lattice_parts(x);
    const auto gp = gauge_omega_plus(plus);
    if (!gp) return false;
    const auto gm = gauge_omega_plus(minus);
    if (!gm) return false;
    return *gp + *gm <= 1;
}

}  // namespace treespace
