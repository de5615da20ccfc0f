#include "lgnss/stationkeeping.hpp"

#include <array>
#include <cmath>

#include "lgnss/parallel.hpp"

namespace lgnss {

std::optional<ViolationKind> violation_check(const KeplerianElements& el_now,
                                             const KeplerianElements& el_target,
                                             const DeadbandConfig& db) {
    const double e0 = el_target.ecc;
    if (std::fabs(el_now.ecc - e0) > db.ecc_band(e0)) return ViolationKind::Eccentricity;
    if (e0 > db.argp_activation_ecc &&
        angular_distance_deg(el_now.argp_deg, el_target.argp_deg) > db.argp_tol_deg)
        return ViolationKind::ArgPeriapsis;
    return std::nullopt;
}

namespace {

struct LegResult {
    std::array<double, 3> residual{};  // (de, dargp_deg or 0, dr_apo_km)
    CartesianState state_after;
    Epoch t_apoapsis;
    Vec3 dv1, dv2;
};

// Coast to the next apoapsis passage (r.v decreasing through zero),
// estimated from the osculating elements and refined by Newton on r.v.
// Each refinement re-propagates forward from s0, so overshoots never
// require backward integration.
std::pair<CartesianState, Epoch> coast_to_apoapsis(const CartesianState& s0, Epoch t0,
                                                   const ForceModelConfig& fm,
                                                   const IntegratorConfig& integ) {
    const KeplerianElements el = cartesian_to_kepler(s0, fm.constants.mu_moon);
    const double n = mean_motion(fm.constants.mu_moon, el.sma_km);
    const double m_now = true_to_mean_anomaly(deg2rad(el.true_anomaly_deg), el.ecc);
    const double period = kTwoPi / n;
    double dt = wrap_rad(kPi - m_now) / n;
    if (dt < 1.0) dt += period;

    CartesianState s = propagate_to(s0, t0, t0 + dt, fm, integ);
    for (int it = 0; it < 8; ++it) {
        const double g = s.position_km.dot(s.velocity_kmps);
        const double r = s.position_km.norm();
        const double gdot = s.velocity_kmps.norm2() - fm.constants.mu_moon / r;
        if (gdot == 0.0) break;
        const double step = std::clamp(-g / gdot, -0.2 * period, 0.2 * period);
        if (std::fabs(step) < 1e-3) break;
        dt = std::max(1.0, dt + step);
        s = propagate_to(s0, t0, t0 + dt, fm, integ);
    }
    return {s, t0 + dt};
}

}  // namespace

ManeuverOutcome corrective_maneuver(const CartesianState& state, Epoch epoch,
                                    const ManeuverTargets& targets, const ForceModelConfig& fm,
                                    const IntegratorConfig& integ, const TargeterConfig& tg) {
    const double mu = fm.constants.mu_moon;

    // Burn frame at the current state: tangential and in-plane normal.
    const Vec3 t_hat = state.velocity_kmps.normalized();
    const Vec3 h_hat = state.position_km.cross(state.velocity_kmps).normalized();
    const Vec3 m_hat = h_hat.cross(t_hat);

    auto run_leg = [&](const std::array<double, 3>& u) {
        LegResult leg;
        leg.dv1 = t_hat * u[0] + m_hat * u[1];
        CartesianState s1{state.position_km, state.velocity_kmps + leg.dv1};
        auto [s_apo, t_apo] = coast_to_apoapsis(s1, epoch, fm, integ);
        leg.dv2 = s_apo.velocity_kmps.normalized() * u[2];
        leg.state_after = {s_apo.position_km, s_apo.velocity_kmps + leg.dv2};
        leg.t_apoapsis = t_apo;

        const KeplerianElements el = cartesian_to_kepler(leg.state_after, mu);
        leg.residual[0] = el.ecc - targets.ecc;
        leg.residual[1] = 0.0;
        if (targets.argp_active) {
            double d = el.argp_deg - targets.argp_deg;
            while (d > 180.0) d -= 360.0;
            while (d < -180.0) d += 360.0;
            leg.residual[1] = d;
        }
        leg.residual[2] = el.sma_km * (1.0 + el.ecc) - targets.r_apo_km;
        return leg;
    };

    const std::array<double, 3> tol{tg.tol_ecc, tg.tol_argp_deg, tg.tol_r_apo_km};
    auto weighted_norm = [&](const std::array<double, 3>& res) {
        double w = 0.0;
        for (int i = 0; i < 3; ++i) w = std::max(w, std::fabs(res[i]) / tol[i]);
        return w;
    };

    ManeuverOutcome out;
    out.event.epoch = epoch;

    std::array<double, 3> u{0.0, 0.0, 0.0};
    LegResult best = run_leg(u);
    double best_norm = weighted_norm(best.residual);
    int iterations = 0;
    double lambda = 1e-4;

    while (best_norm > 1.0 && iterations < tg.max_iterations) {
        ++iterations;
        // Finite-difference Jacobian d(residual)/d(control).
        double jac[3][3];
        for (int c = 0; c < 3; ++c) {
            auto up = u;
            up[c] += tg.fd_step_kmps;
            const LegResult pert = run_leg(up);
            for (int r = 0; r < 3; ++r)
                jac[r][c] = (pert.residual[r] - best.residual[r]) / tg.fd_step_kmps;
        }

        // Damped weighted normal equations: (J'WJ + lambda*I) d = -J'W r.
        double a[3][3] = {}, b[3] = {};
        for (int r = 0; r < 3; ++r) {
            const double w = 1.0 / (tol[r] * tol[r]);
            for (int i = 0; i < 3; ++i) {
                b[i] -= w * jac[r][i] * best.residual[r];
                for (int j = 0; j < 3; ++j) a[i][j] += w * jac[r][i] * jac[r][j];
            }
        }
        double trace = a[0][0] + a[1][1] + a[2][2];
        for (int i = 0; i < 3; ++i) a[i][i] += lambda * std::max(trace, 1e-12) / 3.0;

        // Solve the 3x3 system by Gaussian elimination with pivoting.
        std::array<double, 3> delta{};
        {
            double m[3][4];
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
                m[i][3] = b[i];
            }
            for (int col = 0; col < 3; ++col) {
                int p = col;
                for (int r2 = col + 1; r2 < 3; ++r2)
                    if (std::fabs(m[r2][col]) > std::fabs(m[p][col])) p = r2;
                for (int c2 = 0; c2 < 4; ++c2) std::swap(m[p][c2], m[col][c2]);
                if (m[col][col] == 0.0) break;
                for (int r2 = 0; r2 < 3; ++r2) {
                    if (r2 == col) continue;
                    const double f = m[r2][col] / m[col][col];
                    for (int c2 = col; c2 < 4; ++c2) m[r2][c2] -= f * m[col][c2];
                }
            }
            for (int i = 0; i < 3; ++i)
                delta[i] = m[i][i] != 0.0 ? m[i][3] / m[i][i] : 0.0;
        }

        // Backtracking line search on the weighted norm.
        bool improved = false;
        double scale = 1.0;
        for (int bt = 0; bt < 7; ++bt) {
            std::array<double, 3> trial{u[0] + scale * delta[0], u[1] + scale * delta[1],
                                        u[2] + scale * delta[2]};
            const LegResult cand = run_leg(trial);
            const double cand_norm = weighted_norm(cand.residual);
            if (cand_norm < best_norm) {
                u = trial;
                best = cand;
                best_norm = cand_norm;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        lambda = improved ? std::max(lambda * 0.3, 1e-8) : std::min(lambda * 10.0, 1e4);
    }

    out.event.iterations = iterations;
    out.event.converged = best_norm <= 1.0;
    out.event.dv1_kmps = best.dv1;
    out.event.dv2_kmps = best.dv2;
    out.event.total_dv_kmps = best.dv1.norm() + best.dv2.norm();
    out.event.epoch2 = best.t_apoapsis;
    out.event.post_ecc_err = best.residual[0];
    out.event.post_argp_err_deg = best.residual[1];
    out.event.post_r_apo_err_km = best.residual[2];
    out.state_after = best.state_after;
    return out;
}

StationKeepingResult annual_delta_v(const ConstellationDesign& design, Epoch epoch0,
                                    const ForceModelConfig& fm, const IntegratorConfig& integ,
                                    const StationKeepingConfig& sk) {
    if (sk.horizon_days < 28.0)
        throw std::invalid_argument("annual_delta_v: horizon must be at least 28 days");

    std::vector<size_t> sim_ids;
    for (size_t i = 0; i < design.satellites.size(); ++i)
        if (sk.all_satellites || design.satellites[i].index_in_plane == 0) sim_ids.push_back(i);

    KeplerianElements target;
    target.sma_km = design.sma_km;
    target.ecc = design.ecc;
    target.inc_deg = design.inc_deg;
    target.argp_deg = design.argp_deg;

    ManeuverTargets goals;
    goals.ecc = design.ecc;
    goals.argp_deg = design.argp_deg;
    goals.r_apo_km = design.sma_km * (1.0 + design.ecc);
    goals.argp_active = design.ecc > sk.deadbands.argp_activation_ecc;

    const double horizon_s = sk.horizon_days * kSecondsPerDay;
    struct PerSat {
        double dv = 0.0;
        bool penalized = false;
        std::vector<ManeuverEvent> events;
    };
    std::vector<PerSat> per_sat(sim_ids.size());

    parallel_for(sim_ids.size(), sk.threads, [&](size_t begin, size_t end) {
        for (size_t idx = begin; idx < end; ++idx) {
            const size_t sat = sim_ids[idx];
            PerSat& acc = per_sat[idx];
            try {
                CartesianState s =
                    kepler_to_cartesian(design.satellite_elements(sat), fm.constants.mu_moon);
                Epoch t = epoch0;
                const Epoch t_end = epoch0 + horizon_s;
                while (t < t_end) {
                    const double dt = std::min(sk.deadbands.check_interval_s, t_end - t);
                    s = propagate_to(s, t, t + dt, fm, integ);
                    t = t + dt;
                    const KeplerianElements el = cartesian_to_kepler(s, fm.constants.mu_moon);
                    if (!violation_check(el, target, sk.deadbands)) continue;

                    ManeuverOutcome mo =
                        corrective_maneuver(s, t, goals, fm, integ, sk.targeter);
                    mo.event.sat_id = static_cast<int>(sat);
                    acc.events.push_back(mo.event);
                    if (!mo.event.converged) {
                        acc.penalized = true;
                        break;
                    }
                    acc.dv += mo.event.total_dv_kmps;
                    s = mo.state_after;
                    t = mo.event.epoch2;
                }
            } catch (const std::exception&) {
                acc.penalized = true;  // impact or integration failure
            }
        }
    });

    StationKeepingResult result;
    result.simulated_sats = static_cast<int>(sim_ids.size());
    double dv_sum = 0.0;
    for (const PerSat& ps : per_sat) {
        if (ps.penalized) result.penalized = true;
        dv_sum += ps.dv;
        result.events.insert(result.events.end(), ps.events.begin(), ps.events.end());
    }
    if (result.penalized) {
        result.dv_kmps_per_sat_yr = sk.penalty_kmps_yr;
    } else if (!sim_ids.empty()) {
        const double annualize = kDaysPerYear * kSecondsPerDay / horizon_s;
        result.dv_kmps_per_sat_yr = dv_sum / static_cast<double>(sim_ids.size()) * annualize;
    }
    return result;
}

}  // namespace lgnss
