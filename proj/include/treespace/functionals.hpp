#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "treespace/trees.hpp"
#include "treespace/vectors.hpp"

namespace treespace {

// One eventually constant branch component of a functional: coefficient
// `tail` at every node of the branch, except finitely many depths that are
// overridden.  Parts with zero tail are folded into the finite part at
// construction, so a stored part always has tail != 0.
struct BranchPart {
    Branch branch;
    std::map<std::uint32_t, Rational> overrides;  // depth -> coefficient
    Rational tail;
};

// The representable class of dual elements: a finitely supported part plus
// finitely many eventually constant branch parts with pairwise distinct
// branches.  Closed under sums, scaling, shift pullbacks and restriction
// to reduced trees, and every branch limit is exact on it.
struct Functional {
    TreeKind kind = TreeKind::binary;
    std::map<NodeId, Rational> finite_part;
    std::vector<BranchPart> branch_parts;

    Functional() = default;
    explicit Functional(TreeKind k) : kind(k) {}

    Rational coefficient(const NodeId& t) const {
        Rational c(0);
        auto it = finite_part.find(t);
        if (it != finite_part.end()) c = it->second;
        for (const auto& part : branch_parts) {
            if (!part.branch.passes_through(t)) continue;
            auto ov = part.overrides.find(static_cast<std::uint32_t>(t.depth()));
            c += ov != part.overrides.end() ? ov->second : part.tail;
        }
        return c;
    }

    bool is_zero() const { return finite_part.empty() && branch_parts.empty(); }

    // Exact pairing with a finitely supported vector.
    Rational eval(const FinVector& x) const {
        Rational s(0);
        for (const auto& [t, v] : x.entries) s += coefficient(t) * v;
        return s;
    }

    void add_finite(const NodeId& t, const Rational& v) {
        auto [it, inserted] = finite_part.emplace(t, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) finite_part.erase(it);
        } else if (v == 0) {
            finite_part.erase(it);
        }
    }

    // Merges same-branch parts, folds zero-tail parts into the finite part
    // and drops overrides equal to the tail.
    void normalize() {
        std::vector<BranchPart> merged;
        for (auto& part : branch_parts) {
            auto it = std::find_if(merged.begin(), merged.end(), [&](const BranchPart& p) {
                return p.branch == part.branch;
            });
            if (it == merged.end()) {
                merged.push_back(std::move(part));
                continue;
            }
            for (const auto& [d, v] : part.overrides) {
                auto ov = it->overrides.find(d);
                if (ov == it->overrides.end())
                    it->overrides.emplace(d, v + it->tail);
                else
                    ov->second += v;
            }
            for (auto& [d, v] : it->overrides)
                if (!part.overrides.count(d)) v += part.tail;
            it->tail += part.tail;
        }
        branch_parts.clear();
        for (auto& part : merged) {
            if (part.tail == 0) {
                for (const auto& [d, v] : part.overrides) add_finite(part.branch.node_at(d), v);
                continue;
            }
            for (auto it = part.overrides.begin(); it != part.overrides.end();)
                it = it->second == part.tail ? part.overrides.erase(it) : std::next(it);
            branch_parts.push_back(std::move(part));
        }
        for (auto it = finite_part.begin(); it != finite_part.end();)
            it = it->second == 0 ? finite_part.erase(it) : std::next(it);
    }

    Functional& operator+=(const Functional& o) {
        require(kind == o.kind, "mixed tree kinds");
        for (const auto& [t, v] : o.finite_part) add_finite(t, v);
        branch_parts.insert(branch_parts.end(), o.branch_parts.begin(), o.branch_parts.end());
        normalize();
        return *this;
    }
    friend Functional operator+(Functional a, const Functional& b) { return a += b; }

    friend Functional operator*(const Rational& c, const Functional& f) {
        Functional out(f.kind);
        if (c == 0) return out;
        for (const auto& [t, v] : f.finite_part) out.finite_part.emplace(t, c * v);
        for (const auto& part : f.branch_parts) {
            BranchPart p{part.branch, {}, c * part.tail};
            for (const auto& [d, v] : part.overrides) p.overrides.emplace(d, c * v);
            out.branch_parts.push_back(std::move(p));
        }
        return out;
    }
    friend Functional operator-(const Functional& f) { return Rational(-1) * f; }

    std::size_t finite_data_depth() const {
        std::size_t d = 0;
        for (const auto& [t, v] : finite_part) d = std::max(d, t.depth());
        for (const auto& part : branch_parts)
            for (const auto& [dep, v] : part.overrides) d = std::max<std::size_t>(d, dep);
        return d;
    }
};

inline Functional e_star(const NodeId& t, TreeKind kind = TreeKind::binary) {
    Functional f(kind);
    f.finite_part.emplace(t, Rational(1));
    return f;
}

// Sum of (signed) coordinate functionals over a node set.
inline Functional combination_functional(const std::vector<std::pair<NodeId, Rational>>& terms,
                                         TreeKind kind = TreeKind::binary) {
    Functional f(kind);
    for (const auto& [t, c] : terms) f.add_finite(t, c);
    return f;
}

inline Functional chain_functional(const Chain& chain, TreeKind kind = TreeKind::binary) {
    Functional f(kind);
    for (const auto& t : chain.nodes) f.add_finite(t, Rational(1));
    return f;
}

inline Functional branch_functional(Branch b, const Rational& tail, TreeKind kind = TreeKind::binary,
                                    std::map<std::uint32_t, Rational> overrides = {}) {
    Functional f(kind);
    f.branch_parts.push_back(BranchPart{std::move(b), std::move(overrides), tail});
    f.normalize();
    return f;
}

// Depth beyond which the functionals carry no finite data and every node
// lies on at most one of their branches; coefficients there are pure tails.
inline std::size_t joint_horizon(std::span<const Functional> fs) {
    std::size_t h = 0;
    std::vector<const Branch*> branches;
    for (const auto& f : fs) {
        h = std::max(h, f.finite_data_depth());
        for (const auto& part : f.branch_parts) branches.push_back(&part.branch);
    }
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = i + 1; j < branches.size(); ++j)
            if (auto d = divergence_depth(*branches[i], *branches[j])) h = std::max(h, *d);
    return h + 1;
}

inline std::size_t horizon(const Functional& f) { return joint_horizon({&f, 1}); }

// Dual companion of the shift: coefficient(pullback(f,t), s) = coefficient(f, t^s).
inline Functional pullback(const Functional& f, const NodeId& t) {
    Functional out(f.kind);
    const std::size_t n = t.depth();
    for (const auto& [s, v] : f.finite_part)
        if (is_prefix_of(t, s)) {
            Word w(s.word.begin() + static_cast<std::ptrdiff_t>(n), s.word.end());
            out.finite_part.emplace(NodeId(std::move(w)), v);
        }
    for (const auto& part : f.branch_parts) {
        if (!part.branch.passes_through(t)) continue;
        BranchPart p{branch_pullback(part.branch, t), {}, part.tail};
        for (const auto& [d, v] : part.overrides)
            if (d >= n) p.overrides.emplace(static_cast<std::uint32_t>(d - n), v);
        out.branch_parts.push_back(std::move(p));
    }
    out.normalize();
    return out;
}

// Restriction P*_{T0} f as a representable functional on the reduced tree:
// branches that leave T0 decay into finitely many coordinate terms.
inline Functional restrict_to_tree(const Functional& f, const TreeView& tree) {
    Functional out(f.kind);
    for (const auto& [t, v] : f.finite_part)
        if (tree.contains(t)) out.finite_part.emplace(t, v);
    for (const auto& part : f.branch_parts) {
        bool is_tail = false;
        for (const auto& b : tree.tails) is_tail = is_tail || b == part.branch;
        std::size_t bound = 1 + part.branch.prefix.size() + part.branch.period.size();
        for (const auto& n : tree.core) bound = std::max(bound, n.depth() + 1);
        for (const auto& b : tree.tails)
            if (auto d = divergence_depth(b, part.branch)) bound = std::max(bound, *d + 1);
        bound += part.branch.period.size() + 1;

        std::optional<std::size_t> cut;
        if (!is_tail) {
            for (std::size_t j = 0; j <= bound; ++j)
                if (!tree.contains(part.branch.node_at(j))) {
                    cut = j;
                    break;
                }
        }
        if (!cut) {
            // the branch stays inside the tree for good
            out.branch_parts.push_back(part);
            continue;
        }
        for (std::size_t j = 0; j < *cut; ++j) {
            auto ov = part.overrides.find(static_cast<std::uint32_t>(j));
            const Rational v = ov != part.overrides.end() ? ov->second : part.tail;
            out.add_finite(part.branch.node_at(j), v);
        }
    }
    out.normalize();
    return out;
}

}  // namespace treespace
