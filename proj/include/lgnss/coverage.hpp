#pragma once

// Navigation-performance evaluation: GDOP sampled over a near-uniform
// surface grid and the two objectives derived from it (pooled 98th
// percentile of sub-limit GDOP, availability percentage).

#include <optional>
#include <span>
#include <vector>

#include "lgnss/decoder.hpp"
#include "lgnss/los_kernels.hpp"
#include "lgnss/propagator.hpp"

namespace lgnss {

struct SurfaceGrid {
    std::vector<double> x, y, z;  // structure-of-arrays, |p| = radius
    double radius_km = 0.0;

    size_t size() const { return x.size(); }
    Vec3 point(size_t i) const { return {x[i], y[i], z[i]}; }
    double latitude_deg(size_t i) const;
    double longitude_deg(size_t i) const;
};

// Deterministic Fibonacci-lattice sampling of the sphere, n >= 1.
SurfaceGrid surface_grid(int n, double radius_km);

// Elevation of the satellite above the user's local tangent plane, degrees.
double elevation_deg(const Vec3& sat_pos_km, const Vec3& user_pos_km);

// GDOP from the visible-satellite list; nullopt with fewer than 4
// satellites or when the normal matrix is numerically singular.
std::optional<double> gdop(std::span<const Vec3> sat_positions, const Vec3& user_pos,
                           double cond_limit = 1e12);

// Linear-interpolation empirical quantile at rank h = (n-1)*p/100 + 1;
// nullopt for an empty list.
std::optional<double> percentile(std::vector<double> values, double p);

enum class FidelityTier { Fast, FullNumeric };

struct SamplingConfig {
    double step_s = 300.0;
    double window_s = 24.0 * 3600.0;
    double start_offset_s = 27.321661 * kSecondsPerDay;  // one sidereal month

    std::vector<Epoch> epochs(Epoch epoch0) const;  // both endpoints included
};

struct CoverageOptions {
    double elevation_mask_deg = 0.0;
    double gdop_limit = 6.0;
    double cond_limit = 1e12;
    // false: percentile of the sub-limit population (literal reading);
    // true: cap samples at the limit instead of filtering them out.
    bool cap_instead_of_filter = false;
    double penalty_sentinel = 1000.0;
};

struct CoverageContext {
    PhysicalConstants constants;
    FidelityTier tier = FidelityTier::Fast;
    SamplingConfig sampling;
    CoverageOptions options;
    ForceModelConfig force_model;        // used by the full-numeric tier
    IntegratorConfig integrator;
    int threads = 1;
};

struct CoverageResult {
    double gdop_p98 = 0.0;
    double availability_pct = 0.0;
    std::vector<double> per_location_p98;
    long samples_evaluated = 0;
};

// Satellite positions at the sample epochs: positions[sat][epoch].
std::vector<std::vector<Vec3>> satellite_positions(const ConstellationDesign& design,
                                                   Epoch epoch0,
                                                   const std::vector<Epoch>& epochs,
                                                   const CoverageContext& ctx);

CoverageResult evaluate_coverage(const ConstellationDesign& design, Epoch epoch0,
                                 const SurfaceGrid& grid, const CoverageContext& ctx);

struct GdopMapEntry {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double gdop_p98 = 0.0;
};

// Per-location 98th percentile over a longer window (one month by default).
std::vector<GdopMapEntry> gdop_map(const ConstellationDesign& design, Epoch epoch0,
                                   const SurfaceGrid& grid, CoverageContext ctx,
                                   double window_s = 27.321661 * kSecondsPerDay);

}  // namespace lgnss
