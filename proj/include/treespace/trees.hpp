#pragma once

#include <map>
#include <set>
#include <vector>

#include "treespace/chains.hpp"
#include "treespace/vectors.hpp"

namespace treespace {

// Pull an eventually periodic branch back under t (drop the first |t|
// letters).  The class of representable branches is closed under this.
inline Branch branch_pullback(const Branch& b, const NodeId& t) {
    require(b.passes_through(t), "branch does not pass through the node");
    const std::size_t n = t.depth();
    Word pre;
    for (std::size_t i = n; i < std::max(b.prefix.size(), n); ++i) pre.push_back(b.letter_at(i));
    if (n >= b.prefix.size()) {
        // rotate the period so it starts at depth n
        const std::size_t off = (n - b.prefix.size()) % b.period.size();
        Word per(b.period.begin() + static_cast<std::ptrdiff_t>(off), b.period.end());
        per.insert(per.end(), b.period.begin(), b.period.begin() + static_cast<std::ptrdiff_t>(off));
        return Branch({}, std::move(per));
    }
    return Branch(std::move(pre), b.period);
}

// A tree to build vectors on: either the full binary tree or a finitely
// branching subtree of T / T_infinity described by a finite prefix-closed
// core plus eventually periodic continuation branches.  Core leaves that
// lie on no continuation branch are padded with an all-0 chain so that
// every node keeps at least one child.
struct TreeView {
    TreeKind kind = TreeKind::binary;
    bool reduced = false;
    std::set<NodeId> core;     // prefix-closed, contains the root
    std::vector<Branch> tails; // pairwise distinct

    static TreeView full_binary() { return TreeView{}; }

    static TreeView make_reduced(TreeKind kind, std::set<NodeId> core_nodes,
                                 std::vector<Branch> tail_branches) {
        TreeView t;
        t.kind = kind;
        t.reduced = true;
        t.core = std::move(core_nodes);
        t.core.insert(root());
        // close under prefixes
        std::vector<NodeId> add;
        for (const auto& n : t.core)
            for (std::size_t k = 0; k < n.depth(); ++k) add.push_back(n.prefix(k));
        t.core.insert(add.begin(), add.end());
        std::sort(tail_branches.begin(), tail_branches.end());
        tail_branches.erase(std::unique(tail_branches.begin(), tail_branches.end()),
                            tail_branches.end());
        t.tails = std::move(tail_branches);
        return t;
    }

    std::vector<NodeId> children(const NodeId& u) const {
        if (!reduced) return {u.child(0), u.child(1)};
        std::set<NodeId> out;
        if (core.count(u)) {
            for (auto it = core.upper_bound(u); it != core.end() && is_prefix_of(u, *it); ++it)
                if (it->depth() == u.depth() + 1) out.insert(*it);
        }
        for (const auto& b : tails)
            if (b.passes_through(u)) out.insert(u.child(b.letter_at(u.depth())));
        if (out.empty()) out.insert(u.child(0));  // zero padding
        return {out.begin(), out.end()};
    }

    bool contains(const NodeId& t) const {
        if (!reduced) return valid_for_kind(t, kind);
        NodeId u = root();
        for (std::size_t k = 0; k < t.depth(); ++k) {
            const NodeId next = t.prefix(k + 1);
            const auto cs = children(u);
            if (std::find(cs.begin(), cs.end(), next) == cs.end()) return false;
            u = next;
        }
        return true;
    }

    // L_n intersected with the tree.  Only for trees with finite levels.
    std::vector<NodeId> level(std::size_t n) const {
        require(reduced || kind == TreeKind::binary, "level of an infinitely branching tree");
        std::vector<NodeId> cur{root()};
        for (std::size_t d = 0; d < n; ++d) {
            std::vector<NodeId> next;
            for (const auto& u : cur) {
                auto cs = children(u);
                next.insert(next.end(), cs.begin(), cs.end());
            }
            cur = std::move(next);
        }
        return cur;
    }

    TreeView subtree_at(const NodeId& t) const {
        require(contains(t), "node not in the tree");
        if (!reduced) return *this;
        std::set<NodeId> sub_core;
        for (auto it = core.lower_bound(t); it != core.end() && is_prefix_of(t, *it); ++it) {
            Word w(it->word.begin() + static_cast<std::ptrdiff_t>(t.depth()), it->word.end());
            sub_core.insert(NodeId(std::move(w)));
        }
        std::vector<Branch> sub_tails;
        for (const auto& b : tails)
            if (b.passes_through(t)) sub_tails.push_back(branch_pullback(b, t));
        return make_reduced(kind, std::move(sub_core), std::move(sub_tails));
    }
};

// The point-of-continuity criterion for a finitely supported x: exactly one
// unit of |x|-mass along every branch of the tree.  This also forces
// norm(x) = 1.
inline bool unit_mass_on_every_branch(const FinVector& x, const TreeView& tree) {
    if (x.is_zero()) return false;
    const auto supp = x.support();
    for (const auto& s : supp)
        if (!tree.contains(s)) return false;
    const auto support_below = [&](const NodeId& u) {
        for (const auto& s : supp)
            if (is_prefix_of(u, s)) return true;
        return false;
    };
    // walk(u, mass above u): branches escaping through support-free
    // children must already carry mass exactly 1
    std::vector<std::pair<NodeId, Rational>> stack{{root(), Rational(0)}};
    while (!stack.empty()) {
        auto [u, above] = stack.back();
        stack.pop_back();
        const Rational here = above + abs_of(x.coeff(u));
        if (here > 1) return false;
        for (const auto& c : tree.children(u)) {
            if (support_below(c)) {
                stack.emplace_back(c, here);
            } else if (here != 1) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace treespace
