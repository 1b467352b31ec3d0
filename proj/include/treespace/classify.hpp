#pragma once

#include <optional>
#include <string>

#include "treespace/dual.hpp"
#include "treespace/families.hpp"
#include "treespace/trees.hpp"

namespace treespace {

// Point classification of the binary tree space unit ball.  Extreme points
// coincide with the strongly exposed ones: unit coordinates along a finite
// maximal antichain.  Points of continuity are the sphere points with unit
// |x|-mass along every branch; off the sphere the report says why PC fails.
struct ClassificationReport {
    Rational norm_value;
    bool in_ball = false;
    bool on_sphere = false;
    bool extreme = false;  // equivalently: strongly exposed
    std::optional<std::vector<NodeId>> exposing_antichain;
    bool in_sigma = false;
    bool in_sigma_plus = false;
    bool in_omega_plus = false;
    bool point_of_continuity = false;
    std::string pc_reason;
};

inline ClassificationReport classify(const Space& space, const FinVector& x) {
    require(space.tag == SpaceTag::XT,
            "classification is supported for the binary tree space only");
    require(x.kind == TreeKind::binary, "vector kind does not match the space");
    ClassificationReport rep;
    rep.norm_value = norm_chains(x).value;
    rep.in_ball = rep.norm_value <= 1;
    rep.on_sphere = rep.norm_value == 1;

    if (rep.on_sphere) {
        std::vector<NodeId> units;
        for (const auto& [t, v] : x.entries)
            if (abs_of(v) == 1) units.push_back(t);
        // two comparable unit coordinates would give a chain sum of 2
        Antichain alpha(units);
        if (!alpha.empty() && is_maximal_antichain(alpha, TreeKind::binary)) {
            rep.extreme = true;
            rep.exposing_antichain = alpha.nodes;
        }
    }

    bool pm_one = true;
    for (const auto& [t, v] : x.entries) pm_one = pm_one && abs_of(v) == 1;
    rep.in_sigma = rep.in_ball && pm_one;
    rep.in_sigma_plus = rep.in_sigma && x.nonnegative();
    rep.in_omega_plus = rep.in_sigma_plus && !rep.extreme;

    if (!rep.on_sphere) {
        rep.pc_reason = rep.in_ball ? "norm < 1" : "norm > 1";
    } else if (unit_mass_on_every_branch(x, TreeView::full_binary())) {
        rep.point_of_continuity = true;
    } else {
        rep.pc_reason = "some branch carries |x|-mass < 1";
    }
    return rep;
}

inline ClassificationReport classify(const FinVector& x) {
    return classify(Space::binary_tree(), x);
}

// The strongly exposing functional (1/|alpha|) sum of sign(x(s)) e*_s over
// the witness antichain; has dual norm 1 and attains 1 at x.
inline Functional exposing_functional(const FinVector& x) {
    const auto rep = classify(x);
    require(rep.extreme, "exposing functional requires a strongly exposed point");
    const auto& alpha = *rep.exposing_antichain;
    Functional f(TreeKind::binary);
    const Rational w(1, Integer(alpha.size()));
    for (const auto& s : alpha) f.add_finite(s, Rational(sign_pm(x.coeff(s))) * w);
    check_certificate(dual_norm(f).value == 1, "exposing functional is not norm one");
    check_certificate(f.eval(x) == 1, "exposing functional does not attain 1 at x");
    return f;
}

}  // namespace treespace
