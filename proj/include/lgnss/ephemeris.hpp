#pragma once

// Analytic Earth/Sun positions in the Moon-centered inertial frame. A
// Keplerian track per body stands in for precise planetary ephemerides;
// the orbital period is configured explicitly so the Earth track can be
// pinned to the sidereal month.

#include "lgnss/astro.hpp"

namespace lgnss {

enum class PerturberBody { Earth, Sun };

struct PerturberOrbitModel {
    PerturberBody body = PerturberBody::Earth;
    double mu = 0.0;                  // km^3/s^2, used by third-body force terms
    double sma_km = 0.0;
    double ecc = 0.0;
    double inc_to_frame_deg = 0.0;
    double raan_deg = 0.0;
    double argp_deg = 0.0;
    double mean_anomaly_at_epoch_deg = 0.0;
    double period_days = 0.0;          // sets the mean motion of the track
    double node_regression_deg_per_yr = 0.0;  // 0 disables nodal motion

    double mean_motion_rad_s() const { return kTwoPi / (period_days * kSecondsPerDay); }
};

PerturberOrbitModel default_earth_model(const PhysicalConstants& c);
PerturberOrbitModel default_sun_model(const PhysicalConstants& c);

// Keplerian propagation of the track to the requested epoch.
CartesianState perturber_state(const PerturberOrbitModel& model, Epoch epoch);

}  // namespace lgnss
