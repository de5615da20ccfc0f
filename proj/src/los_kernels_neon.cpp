// NEON variant of the line-of-sight kernel (aarch64).

#include "lgnss/los_kernels.hpp"

#include <arm_neon.h>
#include <cmath>

namespace lgnss::kernels {

void accumulate_los_neon(const double* px, const double* py, const double* pz, size_t n,
                         double sat_x, double sat_y, double sat_z, double r_m, double sin_mask,
                         LosAccumulator& acc) {
    const float64x2_t vsx = vdupq_n_f64(sat_x);
    const float64x2_t vsy = vdupq_n_f64(sat_y);
    const float64x2_t vsz = vdupq_n_f64(sat_z);
    const float64x2_t vrms = vdupq_n_f64(r_m * sin_mask);
    const float64x2_t ones = vdupq_n_f64(1.0);
    const float64x2_t zeros = vdupq_n_f64(0.0);

    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(px + i);
        const float64x2_t y = vld1q_f64(py + i);
        const float64x2_t z = vld1q_f64(pz + i);
        const float64x2_t dx = vsubq_f64(vsx, x);
        const float64x2_t dy = vsubq_f64(vsy, y);
        const float64x2_t dz = vsubq_f64(vsz, z);

        float64x2_t dist2 = vmulq_f64(dx, dx);
        dist2 = vfmaq_f64(dist2, dy, dy);
        dist2 = vfmaq_f64(dist2, dz, dz);
        const float64x2_t dist = vsqrtq_f64(dist2);

        float64x2_t dotdp = vmulq_f64(dx, x);
        dotdp = vfmaq_f64(dotdp, dy, y);
        dotdp = vfmaq_f64(dotdp, dz, z);

        const uint64x2_t visible = vcgeq_f64(dotdp, vmulq_f64(dist, vrms));
        if (vgetq_lane_u64(visible, 0) == 0 && vgetq_lane_u64(visible, 1) == 0) continue;

        const float64x2_t inv = vdivq_f64(ones, dist);
        const float64x2_t ux = vmulq_f64(dx, inv);
        const float64x2_t uy = vmulq_f64(dy, inv);
        const float64x2_t uz = vmulq_f64(dz, inv);

        auto add_masked = [&](double* dst, float64x2_t value) {
            const float64x2_t cur = vld1q_f64(dst);
            const float64x2_t sel = vbslq_f64(visible, value, zeros);
            vst1q_f64(dst, vaddq_f64(cur, sel));
        };
        add_masked(acc.sxx.data() + i, vmulq_f64(ux, ux));
        add_masked(acc.sxy.data() + i, vmulq_f64(ux, uy));
        add_masked(acc.sxz.data() + i, vmulq_f64(ux, uz));
        add_masked(acc.syy.data() + i, vmulq_f64(uy, uy));
        add_masked(acc.syz.data() + i, vmulq_f64(uy, uz));
        add_masked(acc.szz.data() + i, vmulq_f64(uz, uz));
        add_masked(acc.sx.data() + i, ux);
        add_masked(acc.sy.data() + i, uy);
        add_masked(acc.sz.data() + i, uz);
        add_masked(acc.cnt.data() + i, ones);
    }

    // Scalar remainder.
    const double rms = r_m * sin_mask;
    for (; i < n; ++i) {
        const double dx = sat_x - px[i];
        const double dy = sat_y - py[i];
        const double dz = sat_z - pz[i];
        const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
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
