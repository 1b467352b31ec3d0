#pragma once

#include <string>
#include <vector>

#include "treespace/classify.hpp"
#include "treespace/decompose.hpp"
#include "treespace/dual.hpp"

namespace treespace {

// The named subsets of the binary tree space the constructions work with:
//   BX         unit ball
//   BPLUS      positive unit ball
//   SIGMA      {-1,0,1}-valued ball vectors (supports are antichains)
//   SIGMA_PLUS its positive part
//   C          cconv(B+ u B-), the gauge renorming ball
//   D          cconv(Omega+ u Omega-), Omega = Sigma minus the extreme points
enum class SetId { BX, BPLUS, SIGMA, SIGMA_PLUS, C, D };

inline const char* set_name(SetId s) {
    switch (s) {
        case SetId::BX: return "BX";
        case SetId::BPLUS: return "B+";
        case SetId::SIGMA: return "Sigma";
        case SetId::SIGMA_PLUS: return "Sigma+";
        case SetId::C: return "C";
        case SetId::D: return "D";
    }
    return "?";
}

inline SetId parse_set(const std::string& s) {
    if (s == "BX" || s == "B") return SetId::BX;
    if (s == "B+" || s == "BPLUS") return SetId::BPLUS;
    if (s == "Sigma" || s == "SIGMA") return SetId::SIGMA;
    if (s == "Sigma+" || s == "SIGMA+" || s == "SIGMA_PLUS") return SetId::SIGMA_PLUS;
    if (s == "C") return SetId::C;
    if (s == "D") return SetId::D;
    throw parse_error("unknown set: " + s);
}

// Exact membership.  BX works on both tree kinds; the other sets are
// binary-tree notions.  D-membership runs the exact decomposition LP.
inline bool set_membership(SetId set, const FinVector& x) {
    if (set != SetId::BX)
        require(x.kind == TreeKind::binary, std::string(set_name(set)) + " lives in the binary tree space");
    switch (set) {
        case SetId::BX: return norm_chains(x).value <= 1;
        case SetId::BPLUS: return x.nonnegative() && norm_chains(x).value <= 1;
        case SetId::SIGMA:
        case SetId::SIGMA_PLUS: {
            for (const auto& [t, v] : x.entries)
                if (abs_of(v) != 1) return false;
            if (set == SetId::SIGMA_PLUS && !x.nonnegative()) return false;
            return norm_chains(x).value <= 1;
        }
        case SetId::C: return gauge_norm(x) <= 1;
        case SetId::D: {
            // fast path: signed indicators of non-maximal antichains
            const auto rep_ok = [](const FinVector& v) {
                const auto r = classify(v);
                return r.in_omega_plus;
            };
            if (x.is_zero()) return true;
            if (x.nonnegative() && rep_ok(x)) return true;
            if ((-x).nonnegative() && rep_ok(-x)) return true;
            return in_symmetrized_omega_hull(x);
        }
    }
    return false;
}

struct SupResult {
    Rational value;
    FinVector witness;  // an attaining element of the set
};

// sup of f over the named set, with an attaining witness.  In the
// representable functional class every one of these suprema is attained by
// a finitely supported vector, realized from the antichain dynamic programs.
inline SupResult sup_over(SetId set, const Functional& f) {
    require(f.kind == TreeKind::binary, "sup_over is a binary tree space operation");
    switch (set) {
        case SetId::BX:
        case SetId::SIGMA: {
            const auto d = dual_norm(f);
            return {d.value, d.witness(f.kind)};
        }
        case SetId::BPLUS:
        case SetId::SIGMA_PLUS: {
            const auto p = sup_positive(f);
            return {p.value, p.witness};
        }
        case SetId::C: {
            const auto plus = sup_positive(f);
            const auto minus = sup_positive(-f);
            if (plus.value >= minus.value) return {plus.value, plus.witness};
            return {minus.value, -minus.witness};
        }
        case SetId::D: {
            const auto plus = sup_omega_plus(f);
            const auto minus = sup_omega_plus(-f);
            if (plus.value >= minus.value) return {plus.value, plus.witness};
            return {minus.value, -minus.witness};
        }
    }
    return {Rational(0), FinVector(f.kind)};
}

// A slice S(set, f, delta) = {x in set : f(x) > sup f(set) - delta}.
struct SliceSpec {
    SetId set = SetId::BX;
    Functional f;
    Rational delta;
};

inline SliceSpec make_slice(SetId set, Functional f, Rational delta) {
    require(delta > 0, "slice width must be positive");
    return SliceSpec{set, std::move(f), std::move(delta)};
}

// A relative weak neighborhood {y in set : |f_j(y - center)| < eps_j}.
struct WeakNbhdSpec {
    SetId set = SetId::BX;
    FinVector center;
    std::vector<std::pair<Functional, Rational>> constraints;
};

inline WeakNbhdSpec make_nbhd(SetId set, FinVector center,
                              std::vector<std::pair<Functional, Rational>> constraints) {
    for (const auto& [f, eps] : constraints) require(eps > 0, "neighborhood radius must be positive");
    require(set == SetId::BX || center.kind == TreeKind::binary, "kind mismatch");
    WeakNbhdSpec w{set, std::move(center), std::move(constraints)};
    require(set_membership(set, w.center), "neighborhood center must lie in the set");
    return w;
}

inline bool slice_membership(const FinVector& x, const SliceSpec& s) {
    if (!set_membership(s.set, x)) return false;
    return s.f.eval(x) > sup_over(s.set, s.f).value - s.delta;
}

inline bool nbhd_membership(const FinVector& x, const WeakNbhdSpec& w) {
    if (!set_membership(w.set, x)) return false;
    for (const auto& [f, eps] : w.constraints)
        if (abs_of(f.eval(x) - f.eval(w.center)) >= eps) return false;
    return true;
}

}  // namespace treespace
