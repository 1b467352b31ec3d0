#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "treespace/nodes.hpp"

namespace treespace {

// A finite chain: pairwise comparable nodes, stored sorted by depth so that
// each element is a prefix of the next.
struct Chain {
    std::vector<NodeId> nodes;

    Chain() = default;
    explicit Chain(std::vector<NodeId> ns) : nodes(std::move(ns)) {
        std::sort(nodes.begin(), nodes.end(),
                  [](const NodeId& a, const NodeId& b) { return a.depth() < b.depth(); });
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        for (std::size_t i = 1; i < nodes.size(); ++i)
            require(is_prefix_of(nodes[i - 1], nodes[i]), "not a chain");
    }

    bool empty() const { return nodes.empty(); }
    const NodeId& max() const {
        require(!nodes.empty(), "empty chain has no maximum");
        return nodes.back();
    }
};

// The full chain root, t_|1, ..., t.
inline Chain ancestor_chain(const NodeId& t) {
    std::vector<NodeId> ns;
    for (std::size_t k = 0; k <= t.depth(); ++k) ns.push_back(t.prefix(k));
    return Chain(std::move(ns));
}

// A finite antichain: pairwise incomparable nodes.
struct Antichain {
    std::vector<NodeId> nodes;  // sorted by word

    Antichain() = default;
    explicit Antichain(std::vector<NodeId> ns) : nodes(std::move(ns)) {
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                require(!comparable(nodes[i], nodes[j]), "not an antichain");
    }

    bool empty() const { return nodes.empty(); }
    bool contains(const NodeId& t) const {
        return std::binary_search(nodes.begin(), nodes.end(), t);
    }
};

namespace detail {
// Does every branch of the binary subtree below t meet the antichain?
// Recursion only descends through strict ancestors of antichain elements,
// so the cost is O(|α| * max depth).
inline bool meets_all_branches(const NodeId& t, const Antichain& alpha) {
    bool strict_ancestor = false;
    for (const auto& a : alpha.nodes) {
        switch (compare(a, t)) {
            case Order::less:
            case Order::equal: return true;
            case Order::greater: strict_ancestor = true; break;
            case Order::incomparable: break;
        }
    }
    if (!strict_ancestor) return false;
    return meets_all_branches(t.child(0), alpha) && meets_all_branches(t.child(1), alpha);
}
}  // namespace detail

// True iff every branch of the tree meets alpha.  In the countably
// branching tree a finite antichain other than {root} always misses the
// branch through a fresh first letter, so only {root} is maximal there.
inline bool is_maximal_antichain(const Antichain& alpha, TreeKind kind) {
    if (alpha.empty()) return false;
    if (kind == TreeKind::countable)
        return alpha.nodes.size() == 1 && alpha.nodes[0].is_root();
    return detail::meets_all_branches(root(), alpha);
}

// An eventually periodic infinite branch prefix . period . period ...
// Canonical form: the period is primitive and cannot be rolled back into
// the prefix, which makes equality a plain field comparison.
struct Branch {
    Word prefix;
    Word period;

    Branch() : period{0} {}
    Branch(Word pre, Word per) : prefix(std::move(pre)), period(std::move(per)) {
        require(!period.empty(), "branch period must be nonempty");
        canonicalize();
    }

    std::uint32_t letter_at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }

    NodeId node_at(std::size_t n) const {
        Word w;
        w.reserve(n);
        for (std::size_t i = 0; i < n; ++i) w.push_back(letter_at(i));
        return NodeId(std::move(w));
    }

    bool passes_through(const NodeId& t) const {
        for (std::size_t i = 0; i < t.word.size(); ++i)
            if (t.word[i] != letter_at(i)) return false;
        return true;
    }

    friend auto operator<=>(const Branch&, const Branch&) = default;

   private:
    void canonicalize() {
        // shrink to the primitive period
        for (std::size_t d = 1; d <= period.size() / 2; ++d) {
            if (period.size() % d) continue;
            bool rep = true;
            for (std::size_t i = d; i < period.size() && rep; ++i)
                rep = period[i] == period[i % d];
            if (rep) {
                period.resize(d);
                break;
            }
        }
        // roll the period left over the prefix:  p.a (v.a)^inf = p (a.v)^inf
        while (!prefix.empty() && prefix.back() == period.back()) {
            prefix.pop_back();
            period.insert(period.begin(), period.back());
            period.pop_back();
        }
    }
};

// First depth at which the two branches use different letters, or nullopt
// when they are the same branch.
inline std::optional<std::size_t> divergence_depth(const Branch& a, const Branch& b) {
    if (a == b) return std::nullopt;
    const std::size_t bound = a.prefix.size() + b.prefix.size() +
                              std::lcm(a.period.size(), b.period.size());
    for (std::size_t i = 0; i <= bound; ++i)
        if (a.letter_at(i) != b.letter_at(i)) return i;
    return std::nullopt;  // unreachable for canonical distinct branches
}

enum class FreshMode {
    not_in,             // s > extending, s not in avoiding
    clean_ancestry,     // s > extending, anc(s) and s disjoint from avoiding
    incomparable_to_all // s > extending, s incomparable to every avoided node
};

// Deterministic fresh-node selection: the admissible node least in
// (depth, word) order.  Returns nullopt when no admissible node exists
// (e.g. incomparability requested but `avoiding` covers every subtree).
inline std::optional<NodeId> fresh_node(const NodeId& extending,
                                        const std::vector<NodeId>& avoiding, TreeKind kind,
                                        FreshMode mode = FreshMode::not_in) {
    const auto avoided = [&](const NodeId& s) {
        return std::find(avoiding.begin(), avoiding.end(), s) != avoiding.end();
    };
    const auto has_avoid_ancestor_or_self = [&](const NodeId& s) {
        for (const auto& a : avoiding)
            if (is_prefix_of(a, s)) return true;
        return false;
    };
    const auto qualifies = [&](const NodeId& s) {
        switch (mode) {
            case FreshMode::not_in: return !avoided(s);
            case FreshMode::clean_ancestry: return !has_avoid_ancestor_or_self(s);
            case FreshMode::incomparable_to_all:
                for (const auto& a : avoiding)
                    if (comparable(a, s)) return false;
                return true;
        }
        return false;
    };

    if (mode == FreshMode::clean_ancestry && has_avoid_ancestor_or_self(extending))
        return std::nullopt;

    // Children of u worth exploring, in index order.  For the countable
    // tree this is the children steered at by `avoiding` plus the least
    // untouched index; one of those is always admissible or leads on.
    const auto child_indices = [&](const NodeId& u) {
        std::vector<std::uint32_t> idx;
        if (kind == TreeKind::binary) {
            idx = {0, 1};
        } else {
            std::set<std::uint32_t> used;
            for (const auto& a : avoiding)
                if (a.depth() > u.depth() && is_prefix_of(u, a)) used.insert(a.word[u.depth()]);
            std::uint32_t fresh = 0;
            while (used.count(fresh)) ++fresh;
            idx.assign(used.begin(), used.end());
            idx.insert(std::lower_bound(idx.begin(), idx.end(), fresh), fresh);
        }
        return idx;
    };

    const auto bfs_cmp = [](const NodeId& a, const NodeId& b) { return bfs_less(a, b); };
    std::set<NodeId, decltype(bfs_cmp)> frontier(bfs_cmp);
    for (auto i : child_indices(extending)) frontier.insert(extending.child(i));
    while (!frontier.empty()) {
        NodeId u = *frontier.begin();
        frontier.erase(frontier.begin());
        if (qualifies(u)) return u;
        // Subtrees below an avoided ancestor can never qualify in the
        // incomparable variant; everywhere else they may.
        if (mode == FreshMode::incomparable_to_all && has_avoid_ancestor_or_self(u)) continue;
        if (mode == FreshMode::clean_ancestry && avoided(u)) continue;
        if (mode == FreshMode::incomparable_to_all) {
            // only ancestors of avoided nodes are worth descending through
            bool anc = false;
            for (const auto& a : avoiding) anc = anc || (is_prefix_of(u, a) && u != a);
            if (!anc) continue;
        }
        for (auto i : child_indices(u)) frontier.insert(u.child(i));
    }
    return std::nullopt;
}

}  // namespace treespace
