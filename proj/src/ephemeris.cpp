#include "lgnss/ephemeris.hpp"

namespace lgnss {

PerturberOrbitModel default_earth_model(const PhysicalConstants& c) {
    PerturberOrbitModel m;
    m.body = PerturberBody::Earth;
    m.mu = c.mu_earth;
    m.sma_km = c.a_earth_moon_km;
    m.ecc = 0.0549;
    m.inc_to_frame_deg = 6.68;  // Cassini-laws obliquity to the lunar equator
    m.period_days = c.sidereal_month_days;
    return m;
}

PerturberOrbitModel default_sun_model(const PhysicalConstants& c) {
    PerturberOrbitModel m;
    m.body = PerturberBody::Sun;
    m.mu = c.mu_sun;
    m.sma_km = kAstronomicalUnitKm;
    m.ecc = 0.0;
    m.inc_to_frame_deg = 1.54;
    m.period_days = 365.25;
    return m;
}

CartesianState perturber_state(const PerturberOrbitModel& model, Epoch epoch) {
    const double n = model.mean_motion_rad_s();
    const double mean_anom = deg2rad(model.mean_anomaly_at_epoch_deg) + n * epoch.sec;
    const double nu = mean_to_true_anomaly(mean_anom, model.ecc);

    const double p = model.sma_km * (1.0 - model.ecc * model.ecc);
    const double r = p / (1.0 + model.ecc * std::cos(nu));
    const Vec3 r_pf{r * std::cos(nu), r * std::sin(nu), 0.0};
    // Velocity consistent with the configured period, not with mu.
    const double vs = n * model.sma_km / std::sqrt(1.0 - model.ecc * model.ecc);
    const Vec3 v_pf{-vs * std::sin(nu), vs * (model.ecc + std::cos(nu)), 0.0};

    const double raan = deg2rad(model.raan_deg) +
                        deg2rad(model.node_regression_deg_per_yr) * epoch.sec /
                            (kDaysPerYear * kSecondsPerDay);
    auto to_frame = [&](const Vec3& v) {
        return rotate_z(rotate_x(rotate_z(v, deg2rad(model.argp_deg)),
                                 deg2rad(model.inc_to_frame_deg)),
                        raan);
    };
    return {to_frame(r_pf), to_frame(v_pf)};
}

}  // namespace lgnss
