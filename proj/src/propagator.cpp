#include "lgnss/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

namespace lgnss {

void IntegratorConfig::validate() const {
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
        throw std::invalid_argument("integrator: tolerances must be positive");
    if (min_step_s <= 0.0 || min_step_s >= max_step_s)
        throw std::invalid_argument("integrator: need 0 < min_step < max_step");
}

namespace {

using OdeState = std::array<double, 6>;

OdeState pack(const CartesianState& s) {
    return {s.position_km.x, s.position_km.y, s.position_km.z,
            s.velocity_kmps.x, s.velocity_kmps.y, s.velocity_kmps.z};
}

CartesianState unpack(const OdeState& x) {
    return {{x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
}

}  // namespace

Trajectory propagate(const CartesianState& state0, Epoch t0, Epoch t1,
                     const ForceModelConfig& fm, const IntegratorConfig& integ,
                     const std::vector<Epoch>& output_times) {
    integ.validate();
    fm.validate();
    if (t1 < t0) throw std::invalid_argument("propagate: t1 must not precede t0");
    for (size_t i = 0; i < output_times.size(); ++i) {
        if (output_times[i] < t0 || output_times[i] > t1)
            throw std::invalid_argument("propagate: output time outside [t0, t1]");
        if (i > 0 && output_times[i] < output_times[i - 1])
            throw std::invalid_argument("propagate: output times must be ascending");
    }

    Trajectory traj;
    auto system = [&](const OdeState& x, OdeState& dxdt, double t) {
        const CartesianState s = unpack(x);
        const Vec3 a = acceleration(s, Epoch(t), fm);
        dxdt = {x[3], x[4], x[5], a.x, a.y, a.z};
        ++traj.rhs_evaluations;
    };

    namespace odeint = boost::numeric::odeint;
    using Stepper = odeint::runge_kutta_fehlberg78<OdeState>;
    auto controlled = odeint::controlled_runge_kutta<Stepper>(
        odeint::default_error_checker<double, odeint::array_algebra, odeint::default_operations>(
            integ.abs_tol, integ.rel_tol));

    OdeState x = pack(state0);
    double t = t0.sec;
    double dt = std::clamp(integ.initial_step_s, integ.min_step_s, integ.max_step_s);
    size_t next_out = 0;

    auto emit_due = [&](double now) {
        while (next_out < output_times.size() && output_times[next_out].sec <= now) {
            traj.samples.push_back({output_times[next_out], unpack(x)});
            ++next_out;
        }
    };

    emit_due(t);  // output epochs coinciding with t0
    while (t < t1.sec) {
        double target = t1.sec;
        if (next_out < output_times.size())
            target = std::min(target, output_times[next_out].sec);

        double h = std::min({dt, integ.max_step_s, target - t});
        if (h <= 0.0) {  // already at the target; flush and continue
            emit_due(t);
            continue;
        }
        const bool clipped = h < dt;
        auto res = controlled.try_step(system, x, t, h);
        if (res == odeint::controlled_step_result::success) {
            ++traj.accepted_steps;
            if (!clipped) dt = h;  // adopt the controller's new proposal
            emit_due(t);
            // Impact check on the accepted state.
            if (unpack(x).position_km.norm() <= fm.constants.r_moon_mean_km)
                throw ImpactError("impact at t=" + std::to_string(t) + " s");
        } else {
            ++traj.rejected_steps;
            dt = h;
            if (dt < integ.min_step_s)
                throw PropagationError("step size underflow at t=" + std::to_string(t) + " s");
        }
    }
    emit_due(t);
    return traj;
}

CartesianState propagate_to(const CartesianState& state0, Epoch t0, Epoch t1,
                            const ForceModelConfig& fm, const IntegratorConfig& integ) {
    const Trajectory traj = propagate(state0, t0, t1, fm, integ, {t1});
    return traj.samples.back().state;
}

}  // namespace lgnss
