#include "lgnss/frozen.hpp"

#include <cmath>

namespace lgnss {

namespace {

double earth_mean_motion_sq(const PhysicalConstants& c) {
    const double a3 = c.a_earth_moon_km * c.a_earth_moon_km * c.a_earth_moon_km;
    return c.mu_earth / a3;
}

// sin of an angle given in degrees, exact at multiples of 180 so the
// frozen argument-of-periapsis values kill the eccentricity rate exactly.
double sin_deg(double deg) {
    const double folded = std::fmod(deg, 360.0);
    if (folded == 0.0 || folded == 180.0 || folded == -180.0) return 0.0;
    return std::sin(deg2rad(deg));
}

}  // namespace

SecularRates secular_rates(double sma_km, double ecc, double inc_deg, double argp_deg,
                           const PhysicalConstants& consts, const FrozenOptions& opt) {
    const double n = mean_motion(consts.mu_moon, sma_km);
    const double n3sq = earth_mean_motion_sq(consts);
    const double e2 = ecc * ecc;
    const double one_m_e2 = 1.0 - e2;
    const double i = deg2rad(inc_deg);
    const double s = std::sin(i) * std::sin(i);
    const double cos2i = 1.0 - s;
    const double sinw = sin_deg(argp_deg);
    const double sin2w = sinw * sinw;

    const double j2 = opt.include_j2 ? consts.j2_moon + opt.j2_effective_extra
                                     : opt.j2_effective_extra;
    const double ratio = consts.r_moon_mean_km / sma_km;
    const double domega_j2 =
        (3.0 * n * j2 / (4.0 * one_m_e2 * one_m_e2)) * ratio * ratio * (5.0 * cos2i - 1.0);
    const double domega_3b = (3.0 * n3sq / (4.0 * n)) / std::sqrt(one_m_e2) *
                             (2.0 * one_m_e2 + 5.0 * sin2w * (e2 - s));
    const double de_3b =
        (15.0 * n3sq / (8.0 * n)) * ecc * std::sqrt(one_m_e2) * s * sin_deg(2.0 * argp_deg);

    return {de_3b, domega_j2 + domega_3b, 0.0};
}

double frozen_inclination(double sma_km, double ecc, double argp_deg,
                          const PhysicalConstants& consts, const FrozenOptions& opt) {
    auto rate = [&](double inc_deg) {
        return secular_rates(sma_km, ecc, inc_deg, argp_deg, consts, opt).domega_dt;
    };

    double lo = 1.0, hi = 89.0;
    double f_lo = rate(lo), f_hi = rate(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw FrozenRootError("no apsidal-rate sign change on (1, 89) deg");

    for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = rate(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    // Newton polish; the rate is linear in sin^2(i), so this converges fast.
    double inc = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const double f = rate(inc);
        const double h = 1e-6;
        const double df = (rate(inc + h) - rate(inc - h)) / (2.0 * h);
        if (df == 0.0) break;
        const double next = inc - f / df;
        if (next <= 0.0 || next >= 90.0) break;
        inc = next;
        if (std::fabs(rate(inc)) < 1e-18) break;
    }
    return inc;
}

double j2_nodal_rate(double sma_km, double ecc, double inc_deg, const PhysicalConstants& consts) {
    const double n = mean_motion(consts.mu_moon, sma_km);
    const double ratio = consts.r_moon_mean_km / sma_km;
    const double one_m_e2 = 1.0 - ecc * ecc;
    return -1.5 * n * consts.j2_moon * ratio * ratio * std::cos(deg2rad(inc_deg)) /
           (one_m_e2 * one_m_e2);
}

double secular_nodal_rate(double sma_km, double ecc, double inc_deg,
                          const PhysicalConstants& consts) {
    const double n = mean_motion(consts.mu_moon, sma_km);
    const double n3sq = earth_mean_motion_sq(consts);
    const double third_body =
        -(3.0 * n3sq / (4.0 * n)) * std::cos(deg2rad(inc_deg)) / std::sqrt(1.0 - ecc * ecc);
    return j2_nodal_rate(sma_km, ecc, inc_deg, consts) + third_body;
}

}  // namespace lgnss
