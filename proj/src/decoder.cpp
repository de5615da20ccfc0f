#include "lgnss/decoder.hpp"

#include <algorithm>
#include <cmath>

namespace lgnss {

double DecisionBounds::lo(int var) const {
    switch (var) {
        case 0: return sma_min_km;
        case 1: return n_sats_min;
        case 4: return ecc_min;
        default: return 0.0;
    }
}

double DecisionBounds::hi(int var) const {
    switch (var) {
        case 0: return sma_max_km;
        case 1: return n_sats_max;
        case 4: return ecc_max;
        default: return 1.0;
    }
}

double& DecisionVector::operator[](int i) {
    switch (i) {
        case 0: return sma_km;
        case 1: return n_sats;
        case 2: return planes_alg;
        case 3: return phasing_alg;
        case 4: return ecc;
        default: return argp_alg;
    }
}

double DecisionVector::operator[](int i) const {
    return const_cast<DecisionVector&>(*this)[i];
}

bool DecisionVector::within(const DecisionBounds& b) const {
    for (int i = 0; i < kDim; ++i)
        if ((*this)[i] < b.lo(i) || (*this)[i] > b.hi(i)) return false;
    return true;
}

KeplerianElements ConstellationDesign::satellite_elements(size_t idx) const {
    const SatelliteSlot& slot = satellites.at(idx);
    const double nu = mean_to_true_anomaly(deg2rad(slot.mean_anomaly_deg), ecc);
    return {sma_km, ecc, inc_deg, slot.raan_deg, argp_deg, wrap_deg(rad2deg(nu))};
}

std::vector<int> factors(int n) {
    std::vector<int> out;
    for (int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int pick_index(double alg, int count) {
    const int idx = static_cast<int>(std::floor(alg * count + 0.5));
    return std::clamp(idx, 1, count);
}

ConstellationDesign decode(const DecisionVector& x, const DecisionBounds& bounds,
                           const PhysicalConstants& consts, const FrozenOptions& frozen) {
    if (!x.within(bounds)) throw std::invalid_argument("decode: decision vector out of bounds");

    ConstellationDesign d;
    d.n_sats = static_cast<int>(std::floor(x.n_sats + 0.5));
    const std::vector<int> divisors = factors(d.n_sats);
    d.n_planes = divisors[pick_index(x.planes_alg, static_cast<int>(divisors.size())) - 1];
    d.phasing = pick_index(x.phasing_alg, d.n_planes) - 1;
    d.sma_km = x.sma_km;
    d.ecc = x.ecc;
    d.argp_deg = x.argp_alg < 0.5 ? 90.0 : 270.0;
    d.inc_deg = frozen_inclination(d.sma_km, d.ecc, d.argp_deg, consts, frozen);

    const int per_plane = d.n_sats / d.n_planes;
    const double pattern_unit = 360.0 / d.n_sats;
    d.satellites.reserve(static_cast<size_t>(d.n_sats));
    for (int k = 0; k < d.n_planes; ++k) {
        const double raan = wrap_deg(k * 360.0 / d.n_planes);
        const double plane_offset = k * d.phasing * pattern_unit;
        for (int j = 0; j < per_plane; ++j) {
            SatelliteSlot slot;
            slot.plane = k;
            slot.index_in_plane = j;
            slot.raan_deg = raan;
            slot.mean_anomaly_deg = wrap_deg(j * 360.0 / per_plane + plane_offset);
            d.satellites.push_back(slot);
        }
    }
    return d;
}

}  // namespace lgnss
