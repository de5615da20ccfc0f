#pragma once

// Time, constants and two-body element/state conversions shared by the
// rest of the toolkit. All positions are expressed in a Moon-centered
// inertial frame whose xy-plane is the lunar equator.

#include <compare>
#include <stdexcept>

#include "lgnss/vec3.hpp"

namespace lgnss {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDegPerRad = 180.0 / kPi;
constexpr double kRadPerDeg = kPi / 180.0;
constexpr double kSecondsPerDay = 86400.0;
constexpr double kDaysPerYear = 365.25;
constexpr double kAstronomicalUnitKm = 1.495978707e8;

inline double deg2rad(double d) { return d * kRadPerDeg; }
inline double rad2deg(double r) { return r * kDegPerRad; }

// Normalize an angle in degrees to [0, 360).
double wrap_deg(double deg);
// Normalize an angle in radians to [0, 2*pi).
double wrap_rad(double rad);
// Smallest absolute angular distance between two angles, degrees, in [0, 180].
double angular_distance_deg(double a_deg, double b_deg);

// Seconds relative to a configurable reference instant (the run
// configuration documents which calendar instant t = 0 means).
struct Epoch {
    double sec = 0.0;

    constexpr Epoch() = default;
    constexpr explicit Epoch(double s) : sec(s) {}
    static constexpr Epoch from_days(double d) { return Epoch(d * kSecondsPerDay); }

    auto operator<=>(const Epoch&) const = default;
    constexpr Epoch operator+(double ds) const { return Epoch(sec + ds); }
    constexpr Epoch operator-(double ds) const { return Epoch(sec - ds); }
    constexpr double operator-(const Epoch& o) const { return sec - o.sec; }
};

struct KeplerianElements {
    double sma_km = 0.0;
    double ecc = 0.0;
    double inc_deg = 0.0;
    double raan_deg = 0.0;
    double argp_deg = 0.0;
    double true_anomaly_deg = 0.0;
};

// Moon-centered inertial position/velocity.
struct CartesianState {
    Vec3 position_km;
    Vec3 velocity_kmps;
};

struct PhysicalConstants {
    double mu_moon = 4902.800;          // km^3/s^2
    double r_moon_mean_km = 1738.1;     // grid radius and harmonics reference
    double mu_earth = 398600.44;        // km^3/s^2
    double mu_sun = 1.32712440018e11;   // km^3/s^2
    double a_earth_moon_km = 384400.0;
    double sidereal_month_days = 27.321661;
    double c_kmps = 299792.458;
    double j2_moon = 2.0330e-4;
    double c22_moon = 2.2430e-5;

    double sidereal_month_s() const { return sidereal_month_days * kSecondsPerDay; }
};

inline double mean_motion(double mu, double sma_km) {
    return std::sqrt(mu / (sma_km * sma_km * sma_km));
}

inline double orbital_period(double mu, double sma_km) {
    return kTwoPi / mean_motion(mu, sma_km);
}

// Kepler's equation E - e*sin(E) = M, solved to |residual| < 1e-12.
// Newton iteration with a bisection fallback; always converges for e < 1.
double solve_kepler(double mean_anomaly_rad, double ecc);

double true_to_mean_anomaly(double true_anomaly_rad, double ecc);
double mean_to_true_anomaly(double mean_anomaly_rad, double ecc);

// Throws std::invalid_argument for non-elliptic elements (e >= 1, a <= 0).
CartesianState kepler_to_cartesian(const KeplerianElements& el, double mu);

// Inverse of kepler_to_cartesian. Degenerate conventions: for e < 1e-9 the
// argument of periapsis is 0 and the anomaly is measured from the node; for
// near-zero inclination the RAAN is 0. Throws std::invalid_argument for
// unbound or rectilinear states.
KeplerianElements cartesian_to_kepler(const CartesianState& state, double mu);

}  // namespace lgnss
