#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "treespace/vectors.hpp"

namespace treespace {

enum class SpaceTag { XT, XTINF, XM, ADEQUATE };

// A Banach space generated by an adequate family of node sets.  XT and
// XTINF use all chains of the binary / countably branching tree, XM the
// modified family on the unrooted binary tree (chains plus lambda-segments
// and their subsets), ADEQUATE an arbitrary hereditary oracle that accepts
// all singletons.
struct Space {
    SpaceTag tag = SpaceTag::XT;
    std::string name = "T";
    TreeKind tree_kind = TreeKind::binary;
    std::function<bool(const std::vector<NodeId>&)> oracle;  // ADEQUATE only

    TreeKind kind() const { return tree_kind; }

    static Space binary_tree() { return Space{}; }
    static Space countably_branching() {
        return Space{SpaceTag::XTINF, "Tinf", TreeKind::countable, nullptr};
    }
    static Space modified() { return Space{SpaceTag::XM, "M", TreeKind::binary, nullptr}; }
    static Space adequate(std::string name,
                          std::function<bool(const std::vector<NodeId>&)> oracle,
                          TreeKind kind = TreeKind::binary) {
        return Space{SpaceTag::ADEQUATE, std::move(name), kind, std::move(oracle)};
    }
};

inline bool pairwise_comparable(const std::vector<NodeId>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (!comparable(nodes[i], nodes[j])) return false;
    return true;
}

inline bool pairwise_incomparable(const std::vector<NodeId>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (comparable(nodes[i], nodes[j])) return false;
    return true;
}

// Membership of a set in the modified family: a chain of the unrooted tree,
// or a subset of a lambda-segment {t <= s} u {s0, s1}.  A subset with both
// siblings s0, s1 present pins down s; everything else is already a chain.
inline bool member_modified(const std::vector<NodeId>& nodes) {
    for (const auto& t : nodes)
        if (t.is_root()) return false;
    if (pairwise_comparable(nodes)) return true;
    std::vector<NodeId> maximal;
    for (const auto& t : nodes) {
        bool has_above = false;
        for (const auto& u : nodes) has_above = has_above || (t != u && is_prefix_of(t, u));
        if (!has_above) maximal.push_back(t);
    }
    if (maximal.size() != 2) return false;
    const NodeId &a = maximal[0], &b = maximal[1];
    if (a.depth() != b.depth() || a.depth() == 0 || a.parent() != b.parent()) return false;
    const NodeId s = a.parent();
    for (const auto& t : nodes)
        if (t != a && t != b && !is_prefix_of(t, s)) return false;
    return true;
}

inline bool family_member(const Space& space, const std::vector<NodeId>& nodes) {
    switch (space.tag) {
        case SpaceTag::XT:
        case SpaceTag::XTINF: return pairwise_comparable(nodes);
        case SpaceTag::XM: return member_modified(nodes);
        case SpaceTag::ADEQUATE: return space.oracle(nodes);
    }
    return false;
}

// The norm sup over the family of the l1-sum, together with an attaining
// family set.  Re-summing |x| over the set reproduces the value.
struct NormResult {
    Rational value;
    std::vector<NodeId> optimal_set;
};

namespace detail {

struct HullDp {
    std::map<NodeId, std::vector<NodeId>> kids;
    std::map<NodeId, Rational> best;  // |x(t)| + best chain strictly below t

    explicit HullDp(const FinVector& x) {
        auto hull = support_hull(x);
        for (const auto& t : hull)
            if (!t.is_root()) kids[t.parent()].push_back(t);
        // bottom-up over the hull, deepest first
        std::sort(hull.begin(), hull.end(), [](const NodeId& a, const NodeId& b) {
            return a.depth() > b.depth();
        });
        for (const auto& t : hull) {
            Rational b = abs_of(x.coeff(t));
            Rational below(0);
            for (const auto& c : kids[t]) below = std::max(below, best.at(c));
            best.emplace(t, b + below);
        }
    }

    // Greedy argmax walk; ties resolved toward the lexicographically least
    // child for reproducible certificates.
    std::vector<NodeId> argmax_path(const FinVector& x) const {
        std::vector<NodeId> path;
        NodeId t = root();
        while (true) {
            if (x.coeff(t) != 0) path.push_back(t);
            const Rational rest = best.at(t) - abs_of(x.coeff(t));
            if (rest == 0) break;
            auto it = kids.find(t);
            for (const auto& c : it->second)
                if (best.at(c) == rest) {
                    t = c;
                    break;
                }
        }
        return path;
    }
};

}  // namespace detail

// Chain-family norm (XT and XTINF): depth-first recurrence
// N(t) = |x(t)| + max over children of N.
inline NormResult norm_chains(const FinVector& x) {
    detail::HullDp dp(x);
    return {dp.best.at(root()), dp.argmax_path(x)};
}

// Modified-family norm: best chain of the unrooted tree against the best
// lambda-segment value pathsum(s) + |x(s0)| + |x(s1)|.
inline NormResult norm_modified(const FinVector& x) {
    require(x.coeff(root()) == 0, "modified space vectors have no root coordinate");
    NormResult best = norm_chains(x);  // root coefficient is zero
    std::set<NodeId> candidates;
    for (const auto& t : support_hull(x)) candidates.insert(t);
    for (const auto& [t, v] : x.entries)
        if (!t.is_root()) candidates.insert(t.parent());
    for (const auto& s : candidates) {
        Rational total(0);
        std::vector<NodeId> set;
        for (std::size_t k = 1; k <= s.depth(); ++k) {
            const NodeId p = s.prefix(k);
            if (x.coeff(p) != 0) {
                total += abs_of(x.coeff(p));
                set.push_back(p);
            }
        }
        for (std::uint32_t i = 0; i < 2; ++i) {
            const NodeId c = s.child(i);
            if (x.coeff(c) != 0) {
                total += abs_of(x.coeff(c));
                set.push_back(c);
            }
        }
        if (total > best.value) best = {total, set};
    }
    return best;
}

// Generic adequate family: memoized branch and bound over subsets of the
// support (hereditarity makes the optimum live inside the support).
// Correct at any size, intended for small supports.
inline NormResult norm_adequate(const Space& space, const FinVector& x) {
    std::vector<std::pair<NodeId, Rational>> items;
    for (const auto& [t, v] : x.entries) items.emplace_back(t, abs_of(v));
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<Rational> suffix(items.size() + 1, Rational(0));
    for (std::size_t i = items.size(); i > 0; --i)
        suffix[i - 1] = suffix[i] + items[i - 1].second;

    NormResult best{Rational(0), {}};
    std::vector<NodeId> current;
    Rational current_sum(0);
    const std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (current_sum > best.value) best = {current_sum, current};
        if (i == items.size() || current_sum + suffix[i] <= best.value) return;
        current.push_back(items[i].first);
        if (space.oracle(current)) {
            current_sum += items[i].second;
            go(i + 1);
            current_sum -= items[i].second;
        }
        current.pop_back();
        go(i + 1);
    };
    go(0);
    std::sort(best.optimal_set.begin(), best.optimal_set.end());
    return best;
}

inline NormResult norm_with_certificate(const Space& space, const FinVector& x) {
    require(x.kind == space.kind(), "vector kind does not match the space");
    switch (space.tag) {
        case SpaceTag::XT:
        case SpaceTag::XTINF: return norm_chains(x);
        case SpaceTag::XM: return norm_modified(x);
        case SpaceTag::ADEQUATE: return norm_adequate(space, x);
    }
    return {};
}

inline Rational norm(const Space& space, const FinVector& x) {
    return norm_with_certificate(space, x).value;
}

// Chain-family norm of a vector over its own tree kind (XT or XTINF).
inline Rational norm(const FinVector& x) { return norm_chains(x).value; }

// Independent route used by verification: enumerate the inclusion-maximal
// chains of the support hull (the ancestor path of each hull node).  Any
// chain's l1-sum is dominated by the path through its deepest element, so
// the maximum over paths is the norm.
inline Rational norm_by_maximal_chains(const FinVector& x) {
    std::map<NodeId, Rational> path_sum;
    Rational best(0);
    for (const auto& t : support_hull(x)) {
        const Rational above = t.is_root() ? Rational(0) : path_sum.at(t.parent());
        const Rational here = above + abs_of(x.coeff(t));
        path_sum.emplace(t, here);
        best = std::max(best, here);
    }
    return best;
}

// Fully independent oracle for small supports: every subset of the support
// is tested against the family membership predicate.
inline Rational norm_by_subset_enumeration(const Space& space, const FinVector& x) {
    const auto supp = x.support();
    require(supp.size() <= 20, "subset enumeration limited to 20 support nodes");
    Rational best(0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << supp.size()); ++mask) {
        std::vector<NodeId> set;
        Rational sum(0);
        for (std::size_t i = 0; i < supp.size(); ++i)
            if (mask >> i & 1) {
                set.push_back(supp[i]);
                sum += abs_of(x.coeff(supp[i]));
            }
        if (sum > best && family_member(space, set)) best = sum;
    }
    return best;
}

// Gauge of C = cconv(B+ u B-): because the norm is monotone on the
// positive cone this is norm(x+) + norm(x-).  Satisfies
// norm <= gauge <= 2 norm, the 2-unconditional renorming.
inline Rational gauge_norm(const FinVector& x) {
    require(x.kind == TreeKind::binary, "gauge norm lives on the binary tree space");
    const auto [plus, minus] = lattice_parts(x);
    return norm_chains(plus).value + norm_chains(minus).value;
}

inline void verify_norm_certificate(const Space& space, const FinVector& x,
                                    const NormResult& r) {
    Rational sum(0);
    for (const auto& t : r.optimal_set) sum += abs_of(x.coeff(t));
    check_certificate(sum == r.value, "norm certificate does not re-sum to the value");
    check_certificate(family_member(space, r.optimal_set),
                      "norm certificate set is not in the family");
}

}  // namespace treespace
