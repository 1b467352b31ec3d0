#pragma once

#include <map>
#include <span>
#include <vector>

#include "treespace/families.hpp"
#include "treespace/functionals.hpp"

namespace treespace {

// Dual norm with an attaining certificate.  On the binary tree the
// certificate is a finite maximal antichain alpha with signs such that the
// signed indicator attains the supremum over B_X; on the countably
// branching tree it is a plain finite antichain (no finite antichain other
// than {root} is maximal there).
struct DualNormResult {
    Rational value;
    std::vector<NodeId> alpha;
    std::vector<int> signs;  // sign_pm of the coefficient at alpha[i]

    FinVector witness(TreeKind kind) const {
        FinVector x(kind);
        for (std::size_t i = 0; i < alpha.size(); ++i) x.set(alpha[i], Rational(signs[i]));
        return x;
    }
};

namespace detail {

// Shared machinery of the antichain dynamic programs.  Beyond the horizon
// every node lies on at most one branch and carries a pure tail
// coefficient, so the recursions stop there.
struct AntichainDp {
    const Functional& f;
    std::size_t hor;
    std::map<NodeId, Rational> memo_abs, memo_pos, memo_free;

    explicit AntichainDp(const Functional& fn) : f(fn), hor(horizon(fn)) {}

    bool has_data(const NodeId& t) const {
        for (const auto& [s, v] : f.finite_part)
            if (is_prefix_of(t, s)) return true;
        for (const auto& part : f.branch_parts)
            if (part.branch.passes_through(t)) return true;
        return false;
    }

    std::vector<NodeId> data_children(const NodeId& t) const {
        std::set<std::uint32_t> letters;
        for (const auto& [s, v] : f.finite_part)
            if (s.depth() > t.depth() && is_prefix_of(t, s)) letters.insert(s.word[t.depth()]);
        for (const auto& part : f.branch_parts)
            if (part.branch.passes_through(t)) letters.insert(part.branch.letter_at(t.depth()));
        std::vector<NodeId> out;
        for (auto l : letters) out.push_back(t.child(l));
        return out;
    }

    // sup over maximal antichains below t of the |coefficient| sum
    Rational value_abs(const NodeId& t) {
        if (auto it = memo_abs.find(t); it != memo_abs.end()) return it->second;
        Rational v;
        if (t.depth() >= hor) {
            v = abs_of(f.coefficient(t));
        } else {
            Rational kids(0);
            for (const auto& c : data_children(t)) kids += value_abs(c);
            v = std::max(abs_of(f.coefficient(t)), kids);
        }
        memo_abs.emplace(t, v);
        return v;
    }

    // sup over antichains below t of the positive-part sum
    Rational value_pos(const NodeId& t) {
        if (auto it = memo_pos.find(t); it != memo_pos.end()) return it->second;
        Rational v;
        if (t.depth() >= hor) {
            v = pos_part(f.coefficient(t));
        } else {
            Rational kids(0);
            for (const auto& c : data_children(t)) kids += value_pos(c);
            v = std::max(pos_part(f.coefficient(t)), kids);
        }
        memo_pos.emplace(t, v);
        return v;
    }

    // as value_pos but restricted to antichains leaving some branch of the
    // subtree free (binary only); taking t itself is never allowed here
    Rational value_pos_free(const NodeId& t) {
        if (auto it = memo_free.find(t); it != memo_free.end()) return it->second;
        Rational v;
        if (t.depth() >= hor) {
            // the positive tail can be collected one level deeper on its
            // branch, which frees the sibling subtree
            v = pos_part(f.coefficient(t));
        } else {
            const NodeId c0 = t.child(0), c1 = t.child(1);
            v = std::max(value_pos_free(c0) + value_pos(c1),
                         value_pos(c0) + value_pos_free(c1));
        }
        memo_free.emplace(t, v);
        return v;
    }

    std::uint32_t branch_letter(const NodeId& t) const {
        for (const auto& part : f.branch_parts)
            if (part.branch.passes_through(t)) return part.branch.letter_at(t.depth());
        throw verification_error("no branch through a pure-tail node");
    }

    // maximal-antichain realization of value_abs (binary)
    void realize_abs(const NodeId& t, DualNormResult& out) {
        const Rational c = abs_of(f.coefficient(t));
        Rational kids(0);
        if (t.depth() < hor)
            for (const auto& ch : data_children(t)) kids += value_abs(ch);
        if (t.depth() >= hor || c >= kids) {
            out.alpha.push_back(t);
            out.signs.push_back(sign_pm(f.coefficient(t)));
            return;
        }
        realize_abs(t.child(0), out);
        realize_abs(t.child(1), out);
    }

    // antichain realization of value_abs for the countably branching tree
    void realize_abs_countable(const NodeId& t, DualNormResult& out) {
        const Rational c = abs_of(f.coefficient(t));
        Rational kids(0);
        const auto dc = t.depth() < hor ? data_children(t) : std::vector<NodeId>{};
        for (const auto& ch : dc) kids += value_abs(ch);
        if (c >= kids) {
            if (c > 0) {
                out.alpha.push_back(t);
                out.signs.push_back(sign_pm(f.coefficient(t)));
            }
            return;
        }
        for (const auto& ch : dc) realize_abs_countable(ch, out);
    }

    void realize_pos(const NodeId& t, std::vector<NodeId>& out) {
        if (value_pos(t) == 0) return;
        const Rational c = pos_part(f.coefficient(t));
        Rational kids(0);
        if (t.depth() < hor)
            for (const auto& ch : data_children(t)) kids += value_pos(ch);
        if (t.depth() >= hor || c >= kids) {
            out.push_back(t);
            return;
        }
        for (const auto& ch : data_children(t)) realize_pos(ch, out);
    }

    void realize_pos_free(const NodeId& t, std::vector<NodeId>& out) {
        if (value_pos_free(t) == 0) return;
        if (t.depth() >= hor) {
            // one step along the unique branch; the sibling stays free
            out.push_back(t.child(branch_letter(t)));
            return;
        }
        const NodeId c0 = t.child(0), c1 = t.child(1);
        if (value_pos_free(t) == value_pos_free(c0) + value_pos(c1)) {
            realize_pos_free(c0, out);
            realize_pos(c1, out);
        } else {
            realize_pos(c0, out);
            realize_pos_free(c1, out);
        }
    }
};

}  // namespace detail

// Dual norm by the recurrence V(t) = max(|f(e_t)|, sum over children of V),
// V beyond all finite data = |tail| of the branch through the node.
// For this class the supremum over B_X is always attained by the signed
// indicator of the certificate antichain.
inline DualNormResult dual_norm(const Functional& f) {
    detail::AntichainDp dp(f);
    DualNormResult out;
    out.value = dp.value_abs(root());
    if (f.kind == TreeKind::binary)
        dp.realize_abs(root(), out);
    else
        dp.realize_abs_countable(root(), out);
    return out;
}

// sup of f over the positive unit ball, with an attaining indicator witness.
struct PositiveSupResult {
    Rational value;
    FinVector witness;
};

inline PositiveSupResult sup_positive(const Functional& f) {
    detail::AntichainDp dp(f);
    PositiveSupResult out{dp.value_pos(root()), FinVector(f.kind)};
    std::vector<NodeId> taken;
    dp.realize_pos(root(), taken);
    for (const auto& t : taken) out.witness.set(t, Rational(1));
    return out;
}

// sup of f over the non-maximal-antichain indicators (the set Omega+),
// tracked by the free-branch flag.  Binary tree only.
inline PositiveSupResult sup_omega_plus(const Functional& f) {
    require(f.kind == TreeKind::binary, "Omega+ lives in the binary tree space");
    detail::AntichainDp dp(f);
    PositiveSupResult out{dp.value_pos_free(root()), FinVector(f.kind)};
    std::vector<NodeId> taken;
    dp.realize_pos_free(root(), taken);
    for (const auto& t : taken) out.witness.set(t, Rational(1));
    return out;
}

// limsup of |f(e_t)| along the branch: the tail of the matching part.
inline Rational l_beta(const Functional& f, const Branch& beta) {
    for (const auto& part : f.branch_parts)
        if (part.branch == beta) return abs_of(part.tail);
    return Rational(0);
}

// Dual norm of the restriction of f to the subtree T(t).
inline Rational subtree_mass(const Functional& f, const NodeId& t) {
    return dual_norm(pullback(f, t)).value;
}

struct SmallTailLevel {
    std::vector<Branch> branches;
    std::size_t level = 0;  // N: all deeper off-branch coefficients are < threshold
};

// The finitely many branches whose tails reach the threshold, plus the
// minimal level N such that every node of depth > N off those branches has
// all |f_j(e_s)| below the threshold.
inline SmallTailLevel small_tail_level(std::span<const Functional> fs, const Rational& threshold) {
    require(threshold > 0, "threshold must be positive");
    SmallTailLevel out;
    std::set<Branch> big;
    for (const auto& f : fs)
        for (const auto& part : f.branch_parts)
            if (abs_of(part.tail) >= threshold) big.insert(part.branch);
    out.branches.assign(big.begin(), big.end());

    const std::size_t hor = joint_horizon(fs);
    std::set<NodeId> candidates;
    for (const auto& f : fs) {
        for (const auto& [t, v] : f.finite_part) candidates.insert(t);
        for (const auto& part : f.branch_parts)
            for (std::size_t j = 0; j <= hor; ++j) candidates.insert(part.branch.node_at(j));
    }
    for (const auto& s : candidates) {
        bool on_big = false;
        for (const auto& b : out.branches) on_big = on_big || b.passes_through(s);
        if (on_big) continue;
        for (const auto& f : fs)
            if (abs_of(f.coefficient(s)) >= threshold) {
                out.level = std::max(out.level, s.depth());
                break;
            }
    }
    return out;
}

inline SmallTailLevel small_tail_level(const std::vector<Functional>& fs,
                                       const Rational& threshold) {
    return small_tail_level(std::span<const Functional>(fs.data(), fs.size()), threshold);
}

inline void verify_dual_certificate(const Functional& f, const DualNormResult& r) {
    Rational sum(0);
    for (std::size_t i = 0; i < r.alpha.size(); ++i) {
        sum += abs_of(f.coefficient(r.alpha[i]));
        check_certificate(r.signs[i] == sign_pm(f.coefficient(r.alpha[i])),
                          "dual certificate sign mismatch");
    }
    check_certificate(sum == r.value, "dual certificate does not re-sum to the value");
    Antichain alpha(r.alpha);
    if (f.kind == TreeKind::binary && !r.alpha.empty())
        check_certificate(is_maximal_antichain(alpha, f.kind),
                          "dual certificate antichain is not maximal");
}

}  // namespace treespace
