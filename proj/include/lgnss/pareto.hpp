#pragma once

// Post-run analysis: iterative non-dominated ranking and the hypervolume
// indicator (exact dimension-sweep, with a Monte-Carlo mode for stress
// sizes). All objectives are in minimization sense.

#include <cstdint>
#include <string>
#include <vector>

namespace lgnss {

using ObjectivePoint = std::vector<double>;

// True when a dominates b (all coordinates <=, at least one <).
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

// Rank 1 = non-dominated set; peel and increment. Empty input -> empty.
std::vector<int> pareto_rank(const std::vector<ObjectivePoint>& points);

// Maximal (rank-1) subset indices.
std::vector<size_t> non_dominated_indices(const std::vector<ObjectivePoint>& points);

struct NormalizationBounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

// Exact dominated hypervolume of already-normalized points against a
// reference point that every kept point must dominate.
double hypervolume_exact(std::vector<ObjectivePoint> points, const ObjectivePoint& reference);

// Normalizes by bounds, discards points that fail to dominate the
// reference (collecting a warning per discard), reduces to the
// non-dominated subset and sweeps exactly. Reference defaults to 1.01 in
// every normalized coordinate.
double hypervolume(const std::vector<ObjectivePoint>& points, const NormalizationBounds& bounds,
                   double reference_value = 1.01, std::vector<std::string>* warnings = nullptr);

struct MonteCarloHv {
    double volume = 0.0;
    double sigma = 0.0;
};

MonteCarloHv hypervolume_monte_carlo(const std::vector<ObjectivePoint>& points,
                                     const ObjectivePoint& reference, long samples,
                                     std::uint64_t seed);

}  // namespace lgnss
