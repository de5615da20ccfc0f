#pragma once

// Decoding of the 6-variable decision vector into a Walker-delta
// constellation on a frozen orbit. All formulation constraints (plane
// divisibility, shared elements, frozen inclination) hold by construction.

#include <vector>

#include "lgnss/frozen.hpp"

namespace lgnss {

struct DecisionBounds {
    double sma_min_km = 3474.0;
    double sma_max_km = 17370.0;
    double n_sats_min = 8.0;
    double n_sats_max = 30.0;
    double ecc_min = 0.0;
    double ecc_max = 0.3;

    double lo(int var) const;
    double hi(int var) const;
};

// Order: sma, n_sats, planes_alg, phasing_alg, ecc, argp_alg.
struct DecisionVector {
    double sma_km = 8000.0;
    double n_sats = 20.0;
    double planes_alg = 0.0;
    double phasing_alg = 0.0;
    double ecc = 0.0;
    double argp_alg = 0.0;

    double& operator[](int i);
    double operator[](int i) const;
    static constexpr int kDim = 6;

    bool within(const DecisionBounds& b) const;
};

struct SatelliteSlot {
    int plane = 0;
    int index_in_plane = 0;
    double raan_deg = 0.0;
    double mean_anomaly_deg = 0.0;  // Walker phase, measured as mean anomaly
};

struct ConstellationDesign {
    int n_sats = 0;      // T
    int n_planes = 0;    // P
    int phasing = 0;     // F in {0..P-1}
    double sma_km = 0.0;
    double ecc = 0.0;
    double inc_deg = 0.0;
    double argp_deg = 0.0;  // 90 or 270
    std::vector<SatelliteSlot> satellites;

    KeplerianElements satellite_elements(size_t idx) const;
};

// Ascending, complete divisor list of n >= 1.
std::vector<int> factors(int n);

// Nearest index in {1..count} for alg in [0,1]; ties at .5 round up.
int pick_index(double alg, int count);

// Throws std::invalid_argument when x violates the bounds; propagates
// FrozenRootError from the inclination solve.
ConstellationDesign decode(const DecisionVector& x, const DecisionBounds& bounds,
                           const PhysicalConstants& consts, const FrozenOptions& frozen = {});

}  // namespace lgnss
