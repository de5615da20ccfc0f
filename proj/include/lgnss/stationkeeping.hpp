#pragma once

// Station-keeping delta-V estimation: propagate under the full force
// model, trigger a two-impulse correction when the eccentricity or
// apsidal deadbands are violated, and annualize the per-satellite total.

#include <optional>
#include <vector>

#include "lgnss/decoder.hpp"
#include "lgnss/propagator.hpp"

namespace lgnss {

struct DeadbandConfig {
    double ecc_rel_tol = 0.008;
    double argp_tol_deg = 1.0;        // active only when e0 > argp_activation_ecc
    double r_apo_target_tol_km = 1.0;
    double ecc_abs_floor = 0.002;     // widens the band for near-circular targets
    double floor_activation_ecc = 0.1;  // pure relative band at or above this e0
    double argp_activation_ecc = 0.1;
    double check_interval_s = 600.0;

    double ecc_band(double e0) const {
        const double rel = ecc_rel_tol * e0;
        return e0 >= floor_activation_ecc ? rel : std::max(rel, ecc_abs_floor);
    }
};

enum class ViolationKind { Eccentricity, ArgPeriapsis };

// Deadband test against the target elements; nullopt when inside the bands.
std::optional<ViolationKind> violation_check(const KeplerianElements& el_now,
                                             const KeplerianElements& el_target,
                                             const DeadbandConfig& db);

struct ManeuverTargets {
    double ecc = 0.0;
    double argp_deg = 0.0;
    double r_apo_km = 0.0;
    bool argp_active = false;
};

struct TargeterConfig {
    int max_iterations = 25;
    double fd_step_kmps = 1e-6;
    double tol_ecc = 1e-4;
    double tol_argp_deg = 0.05;
    double tol_r_apo_km = 1.0;
};

struct ManeuverEvent {
    int sat_id = 0;
    Epoch epoch;        // first burn
    Epoch epoch2;       // second burn (apoapsis passage)
    Vec3 dv1_kmps;
    Vec3 dv2_kmps;
    double total_dv_kmps = 0.0;
    bool converged = false;
    int iterations = 0;
    // Post-fit residuals against the targets, from the final targeter leg.
    double post_ecc_err = 0.0;
    double post_argp_err_deg = 0.0;
    double post_r_apo_err_km = 0.0;
};

struct ManeuverOutcome {
    ManeuverEvent event;
    CartesianState state_after;  // post-second-burn state at event.epoch2
};

// Two-impulse correction: a tangential+radial burn now and a tangential
// burn at the subsequent apoapsis, solved by damped Newton-Raphson with
// finite-difference sensitivities against (e, argp, r_apo) targets.
ManeuverOutcome corrective_maneuver(const CartesianState& state, Epoch epoch,
                                    const ManeuverTargets& targets, const ForceModelConfig& fm,
                                    const IntegratorConfig& integ,
                                    const TargeterConfig& tg = {});

struct StationKeepingConfig {
    double horizon_days = 56.0;  // contract minimum 28
    bool all_satellites = false;  // default: one representative per plane
    double penalty_kmps_yr = 5.0;
    DeadbandConfig deadbands;
    TargeterConfig targeter;
    int threads = 1;
};

struct StationKeepingResult {
    double dv_kmps_per_sat_yr = 0.0;
    bool penalized = false;
    int simulated_sats = 0;
    std::vector<ManeuverEvent> events;
};

// Annualized per-satellite station-keeping delta-V for the design; the
// non-convergence/impact penalty is reported through `penalized`.
StationKeepingResult annual_delta_v(const ConstellationDesign& design, Epoch epoch0,
                                    const ForceModelConfig& fm, const IntegratorConfig& integ,
                                    const StationKeepingConfig& sk);

}  // namespace lgnss
