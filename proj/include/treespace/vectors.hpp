#pragma once

#include <functional>
#include <map>
#include <vector>

#include "treespace/chains.hpp"
#include "treespace/nodes.hpp"
#include "treespace/rational.hpp"

namespace treespace {

// A finitely supported vector on the tree: the elements of c00(T) that the
// whole toolkit computes with.  Zero coefficients are never stored.
struct FinVector {
    TreeKind kind = TreeKind::binary;
    std::map<NodeId, Rational> entries;

    FinVector() = default;
    explicit FinVector(TreeKind k) : kind(k) {}

    Rational coeff(const NodeId& t) const {
        auto it = entries.find(t);
        return it == entries.end() ? Rational(0) : it->second;
    }

    void set(const NodeId& t, const Rational& v) {
        require(valid_for_kind(t, kind), "node does not fit the tree kind");
        if (v == 0)
            entries.erase(t);
        else
            entries[t] = v;
    }

    void add(const NodeId& t, const Rational& v) { set(t, coeff(t) + v); }

    bool is_zero() const { return entries.empty(); }

    std::size_t support_depth() const {
        std::size_t d = 0;
        for (const auto& [t, v] : entries) d = std::max(d, t.depth());
        return d;
    }

    std::vector<NodeId> support() const {
        std::vector<NodeId> s;
        s.reserve(entries.size());
        for (const auto& [t, v] : entries) s.push_back(t);
        return s;
    }

    bool nonnegative() const {
        for (const auto& [t, v] : entries)
            if (v < 0) return false;
        return true;
    }

    friend bool operator==(const FinVector&, const FinVector&) = default;

    FinVector& operator+=(const FinVector& o) {
        require(kind == o.kind, "mixed tree kinds");
        for (const auto& [t, v] : o.entries) add(t, v);
        return *this;
    }
    FinVector& operator-=(const FinVector& o) {
        require(kind == o.kind, "mixed tree kinds");
        for (const auto& [t, v] : o.entries) add(t, -v);
        return *this;
    }
    friend FinVector operator+(FinVector a, const FinVector& b) { return a += b; }
    friend FinVector operator-(FinVector a, const FinVector& b) { return a -= b; }
    friend FinVector operator*(const Rational& c, const FinVector& x) {
        FinVector out(x.kind);
        if (c != 0)
            for (const auto& [t, v] : x.entries) out.entries.emplace(t, c * v);
        return out;
    }
    friend FinVector operator-(const FinVector& x) { return Rational(-1) * x; }
};

inline FinVector basis_vector(const NodeId& t, TreeKind kind = TreeKind::binary) {
    FinVector x(kind);
    x.set(t, Rational(1));
    return x;
}

// Signed indicator of a node set (all coefficients +1 unless negated).
inline FinVector indicator(const std::vector<NodeId>& nodes, TreeKind kind = TreeKind::binary,
                           int sign = 1) {
    FinVector x(kind);
    for (const auto& t : nodes) x.set(t, Rational(sign));
    return x;
}

// Coordinate projection P_S: keeps the entries whose node satisfies the
// predicate.  Norm can only drop (1-unconditionality).
inline FinVector project(const FinVector& x, const std::function<bool(const NodeId&)>& in_S) {
    FinVector out(x.kind);
    for (const auto& [t, v] : x.entries)
        if (in_S(t)) out.entries.emplace(t, v);
    return out;
}

inline FinVector project_to_branch(const FinVector& x, const Branch& beta) {
    return project(x, [&](const NodeId& t) { return beta.passes_through(t); });
}

inline FinVector project_to_subtree(const FinVector& x, const NodeId& s) {
    return project(x, [&](const NodeId& t) { return is_prefix_of(s, t); });
}

// x = x_plus - x_minus with disjoint nonnegative parts.
inline std::pair<FinVector, FinVector> lattice_parts(const FinVector& x) {
    FinVector plus(x.kind), minus(x.kind);
    for (const auto& [t, v] : x.entries) {
        if (v > 0)
            plus.entries.emplace(t, v);
        else
            minus.entries.emplace(t, -v);
    }
    return {plus, minus};
}

// The isometric shift S_t: e_s -> e_{t^s}.
inline FinVector shift(const FinVector& x, const NodeId& t) {
    FinVector out(x.kind);
    for (const auto& [s, v] : x.entries) out.entries.emplace(t.concat(s), v);
    return out;
}

// Inverse shift; requires the support to lie in the subtree T(t).
inline FinVector unshift(const FinVector& x, const NodeId& t) {
    FinVector out(x.kind);
    for (const auto& [s, v] : x.entries) {
        require(is_prefix_of(t, s), "unshift: support outside the subtree");
        Word w(s.word.begin() + static_cast<std::ptrdiff_t>(t.depth()), s.word.end());
        out.entries.emplace(NodeId(std::move(w)), v);
    }
    return out;
}

// Ancestor closure of the support, sorted.  Every norm DP runs over this.
inline std::vector<NodeId> support_hull(const FinVector& x) {
    std::set<NodeId> hull;
    for (const auto& [t, v] : x.entries)
        for (std::size_t k = 0; k <= t.depth(); ++k) hull.insert(t.prefix(k));
    if (hull.empty()) hull.insert(root());
    return {hull.begin(), hull.end()};
}

}  // namespace treespace
