#pragma once

// Frozen-orbit condition under doubly-averaged J2 + Earth-quadrupole
// dynamics: picks the inclination that freezes the argument of periapsis
// at 90 or 270 deg for a given (a, e). The Earth is treated as circular
// and equatorial here, matching the averaged theory's own assumption.

#include "lgnss/astro.hpp"

namespace lgnss {

struct SecularRates {
    double de_dt = 0.0;       // 1/s
    double domega_dt = 0.0;   // rad/s
    double di_dt = 0.0;       // rad/s
};

struct FrozenOptions {
    bool include_j2 = true;
    // Optional J2-like correction added to the oblateness term (stands in
    // for averaged C22 effects when calibration calls for it).
    double j2_effective_extra = 0.0;
};

// Doubly-averaged apsidal/eccentricity rates at (a, e, i, omega).
SecularRates secular_rates(double sma_km, double ecc, double inc_deg, double argp_deg,
                           const PhysicalConstants& consts, const FrozenOptions& opt = {});

struct FrozenRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inclination in (0, 90) deg with domega_dt = 0 for omega in {90, 270} deg.
// Bracketing bisection on (1, 89) deg plus a Newton polish; throws
// FrozenRootError when the rate has no sign change on the bracket.
double frozen_inclination(double sma_km, double ecc, double argp_deg,
                          const PhysicalConstants& consts, const FrozenOptions& opt = {});

// J2 secular RAAN rate (rad/s); used by the fast evaluation tier and as a
// test oracle for the numeric propagator.
double j2_nodal_rate(double sma_km, double ecc, double inc_deg, const PhysicalConstants& consts);

// Common-plane nodal drift (J2 + Earth quadrupole) used by the fast tier.
double secular_nodal_rate(double sma_km, double ecc, double inc_deg,
                          const PhysicalConstants& consts);

}  // namespace lgnss
