#include "lgnss/los_kernels.hpp"

#include <cmath>

namespace lgnss::kernels {

void LosAccumulator::resize(size_t n) {
    for (auto* v : {&sxx, &sxy, &sxz, &syy, &syz, &szz, &sx, &sy, &sz, &cnt})
        v->assign(n, 0.0);
}

void LosAccumulator::reset() {
    for (auto* v : {&sxx, &sxy, &sxz, &syy, &syz, &szz, &sx, &sy, &sz, &cnt})
        std::fill(v->begin(), v->end(), 0.0);
}

void accumulate_los_scalar(const double* px, const double* py, const double* pz, size_t n,
                           double sat_x, double sat_y, double sat_z, double r_m,
                           double sin_mask, LosAccumulator& acc) {
    const double rms = r_m * sin_mask;
    for (size_t i = 0; i < n; ++i) {
        const double dx = sat_x - px[i];
        const double dy = sat_y - py[i];
        const double dz = sat_z - pz[i];
        const double dist2 = dx * dx + dy * dy + dz * dz;
        const double dist = std::sqrt(dist2);
        const double dotdp = dx * px[i] + dy * py[i] + dz * pz[i];
        if (dotdp < dist * rms) continue;

        const double inv = 1.0 / dist;
        const double ux = dx * inv, uy = dy * inv, uz = dz * inv;
        acc.sxx[i] += ux * ux;
        acc.sxy[i] += ux * uy;
        acc.sxz[i] += ux * uz;
        acc.syy[i] += uy * uy;
        acc.syz[i] += uy * uz;
        acc.szz[i] += uz * uz;
        acc.sx[i] += ux;
        acc.sy[i] += uy;
        acc.sz[i] += uz;
        acc.cnt[i] += 1.0;
    }
}

}  // namespace lgnss::kernels
