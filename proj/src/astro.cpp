#include "lgnss/astro.hpp"

#include <algorithm>
#include <cmath>

namespace lgnss {

double wrap_deg(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}

double wrap_rad(double rad) {
    double w = std::fmod(rad, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

double angular_distance_deg(double a_deg, double b_deg) {
    double d = std::fabs(wrap_deg(a_deg) - wrap_deg(b_deg));
    return d > 180.0 ? 360.0 - d : d;
}

double solve_kepler(double mean_anomaly_rad, double ecc) {
    if (ecc < 0.0 || ecc >= 1.0) throw std::invalid_argument("solve_kepler: ecc must be in [0, 1)");
    if (ecc == 0.0) return mean_anomaly_rad;

    // Reduce to Mr in (-pi, pi]; the offset is restored at the end.
    const double offset = kTwoPi * std::floor((mean_anomaly_rad + kPi) / kTwoPi);
    const double mr = mean_anomaly_rad - offset;

    auto f = [&](double e_anom) { return e_anom - ecc * std::sin(e_anom) - mr; };

    double e_anom = (ecc < 0.8) ? mr : std::copysign(kPi, mr == 0.0 ? 1.0 : mr);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        const double step = f(e_anom) / (1.0 - ecc * std::cos(e_anom));
        e_anom -= step;
        if (std::fabs(f(e_anom)) < 1e-13) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        // f is strictly increasing, so this bracket always holds a root.
        double lo = mr - ecc - 0.1, hi = mr + ecc + 0.1;
        for (int it = 0; it < 200 && (hi - lo) > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) < 0.0 ? lo : hi) = mid;
        }
        e_anom = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it)
            e_anom -= f(e_anom) / (1.0 - ecc * std::cos(e_anom));
    }
    return e_anom + offset;
}

double true_to_mean_anomaly(double true_anomaly_rad, double ecc) {
    const double nu = true_anomaly_rad;
    const double e_anom = std::atan2(std::sqrt(1.0 - ecc * ecc) * std::sin(nu), ecc + std::cos(nu));
    // atan2 folds into (-pi, pi]; restore the revolution count of nu.
    const double offset = kTwoPi * std::floor((nu + kPi) / kTwoPi);
    return e_anom + offset - ecc * std::sin(e_anom);
}

double mean_to_true_anomaly(double mean_anomaly_rad, double ecc) {
    const double e_anom = solve_kepler(mean_anomaly_rad, ecc);
    const double nu = std::atan2(std::sqrt(1.0 - ecc * ecc) * std::sin(e_anom),
                                 std::cos(e_anom) - ecc);
    const double offset = kTwoPi * std::floor((e_anom + kPi) / kTwoPi);
    return nu + offset;
}

CartesianState kepler_to_cartesian(const KeplerianElements& el, double mu) {
    if (el.sma_km <= 0.0) throw std::invalid_argument("kepler_to_cartesian: sma must be positive");
    if (el.ecc < 0.0 || el.ecc >= 1.0)
        throw std::invalid_argument("kepler_to_cartesian: ecc must be in [0, 1)");

    const double nu = deg2rad(el.true_anomaly_deg);
    const double p = el.sma_km * (1.0 - el.ecc * el.ecc);
    const double r = p / (1.0 + el.ecc * std::cos(nu));

    const Vec3 r_pf{r * std::cos(nu), r * std::sin(nu), 0.0};
    const double vs = std::sqrt(mu / p);
    const Vec3 v_pf{-vs * std::sin(nu), vs * (el.ecc + std::cos(nu)), 0.0};

    auto to_inertial = [&](const Vec3& v) {
        return rotate_z(rotate_x(rotate_z(v, deg2rad(el.argp_deg)), deg2rad(el.inc_deg)),
                        deg2rad(el.raan_deg));
    };
    return {to_inertial(r_pf), to_inertial(v_pf)};
}

KeplerianElements cartesian_to_kepler(const CartesianState& state, double mu) {
    const Vec3& r = state.position_km;
    const Vec3& v = state.velocity_kmps;
    const double rn = r.norm();
    const double vn2 = v.norm2();

    const double energy = 0.5 * vn2 - mu / rn;
    if (energy >= 0.0) throw std::invalid_argument("cartesian_to_kepler: state is not bound");

    const Vec3 h = r.cross(v);
    const double hn = h.norm();
    if (hn < 1e-9 * rn * std::sqrt(vn2))
        throw std::invalid_argument("cartesian_to_kepler: rectilinear state");

    const Vec3 e_vec = (r * (vn2 - mu / rn) - v * r.dot(v)) / mu;
    const double ecc = e_vec.norm();
    const double sma = -mu / (2.0 * energy);
    const double inc = std::acos(std::clamp(h.z / hn, -1.0, 1.0));

    const Vec3 node{-h.y, h.x, 0.0};
    const double node_n = node.norm();
    constexpr double kEccTol = 1e-9;
    const bool equatorial = node_n < 1e-12 * hn;
    const bool circular = ecc < kEccTol;

    // Node direction; x axis when the orbit is equatorial (raan := 0).
    const Vec3 n_dir = equatorial ? Vec3{1.0, 0.0, 0.0} : node / node_n;
    double raan = equatorial ? 0.0 : std::atan2(n_dir.y, n_dir.x);

    double argp = 0.0, nu = 0.0;
    if (circular) {
        // argp := 0; anomaly measured from the node.
        const double cosu = std::clamp(n_dir.dot(r) / rn, -1.0, 1.0);
        nu = std::acos(cosu);
        const double r_out_of_plane = equatorial ? r.y * (h.z >= 0 ? 1.0 : -1.0)
                                                 : r.z;
        if (r_out_of_plane < 0.0) nu = kTwoPi - nu;
    } else {
        const Vec3 e_dir = e_vec / ecc;
        double cosw = std::clamp(n_dir.dot(e_dir), -1.0, 1.0);
        argp = std::acos(cosw);
        const double e_out_of_plane = equatorial ? e_vec.y * (h.z >= 0 ? 1.0 : -1.0)
                                                 : e_vec.z;
        if (e_out_of_plane < 0.0) argp = kTwoPi - argp;

        nu = std::acos(std::clamp(e_dir.dot(r) / rn, -1.0, 1.0));
        if (r.dot(v) < 0.0) nu = kTwoPi - nu;
    }

    return {sma, ecc, rad2deg(inc), wrap_deg(rad2deg(raan)), wrap_deg(rad2deg(argp)),
            wrap_deg(rad2deg(nu))};
}

}  // namespace lgnss
