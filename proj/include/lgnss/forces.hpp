#pragma once

// Acceleration model: lunar gravity harmonics, Earth/Sun third body
// (differential form) and cannon-ball solar radiation pressure.

#include <string>
#include <vector>

#include "lgnss/astro.hpp"
#include "lgnss/ephemeris.hpp"

namespace lgnss {

// Unnormalized Stokes coefficient of one (degree, order) term.
struct HarmonicCoefficient {
    int degree = 0;
    int order = 0;
    double c = 0.0;
    double s = 0.0;
};

struct ForceModelConfig {
    PhysicalConstants constants;
    int harmonics_degree = 10;
    int harmonics_order = 10;
    std::vector<HarmonicCoefficient> coefficient_table;  // degree >= 2 entries
    bool earth_third_body = true;
    bool sun_third_body = true;
    PerturberOrbitModel earth;
    PerturberOrbitModel sun;
    bool srp_enabled = true;
    double cr = 1.8;
    double srp_area_m2 = 3.0;
    double sat_mass_kg = 332.5;
    // The harmonics frame spins about +z at the synchronous rate so the
    // equatorial ellipticity terms track the Earth direction.
    bool body_rotation = true;
    double body_rotation_theta0_deg = 0.0;

    void validate() const;  // throws std::invalid_argument
};

// Two-coefficient default table: J2 and C22 from the shared constants.
std::vector<HarmonicCoefficient> default_coefficient_table(const PhysicalConstants& c);

// Plain-text rows "degree order C S"; '#' starts a comment.
std::vector<HarmonicCoefficient> load_coefficient_table(const std::string& path);

ForceModelConfig default_force_model(const PhysicalConstants& c);

// Keplerian two-body setup (all perturbations off), for oracles and tests.
ForceModelConfig two_body_force_model(const PhysicalConstants& c);

struct ImpactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Total acceleration in km/s^2. Throws ImpactError for subsurface states.
Vec3 acceleration(const CartesianState& state, Epoch epoch, const ForceModelConfig& fm);

// Gravity (central + harmonics) alone, positions in the inertial frame.
Vec3 gravity_acceleration(const Vec3& position_km, Epoch epoch, const ForceModelConfig& fm);

// Differential third-body term for a perturber at `perturber_pos`.
Vec3 third_body_acceleration(const Vec3& sat_pos_km, const Vec3& perturber_pos_km, double mu);

}  // namespace lgnss
