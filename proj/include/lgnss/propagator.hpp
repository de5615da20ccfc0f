#pragma once

// Adaptive numerical propagation under the full force model. The stepper is
// an embedded Runge-Kutta 7(8) pair; the driver clips steps to land exactly
// on requested output epochs and watches for impact and step underflow.

#include <vector>

#include "lgnss/forces.hpp"

namespace lgnss {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double min_step_s = 1e-6;
    double max_step_s = 3600.0;
    double initial_step_s = 60.0;

    void validate() const;  // throws std::invalid_argument
};

struct TrajectorySample {
    Epoch epoch;
    CartesianState state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    long accepted_steps = 0;
    long rejected_steps = 0;
    long rhs_evaluations = 0;
};

struct PropagationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Propagates state0 from t0 to t1 (t1 >= t0), producing samples at the
// requested output epochs (each must lie in [t0, t1], ascending). Throws
// PropagationError on step underflow and ImpactError on subsurface states.
Trajectory propagate(const CartesianState& state0, Epoch t0, Epoch t1,
                     const ForceModelConfig& fm, const IntegratorConfig& integ,
                     const std::vector<Epoch>& output_times);

// Single-endpoint convenience: propagate to t1 and return the final state.
CartesianState propagate_to(const CartesianState& state0, Epoch t0, Epoch t1,
                            const ForceModelConfig& fm, const IntegratorConfig& integ);

}  // namespace lgnss
