// AVX2/FMA variant of the line-of-sight kernel; this translation unit is
// compiled with -mavx2 -mfma and only entered after the runtime check.

#include "lgnss/los_kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace lgnss::kernels {

void accumulate_los_avx2(const double* px, const double* py, const double* pz, size_t n,
                         double sat_x, double sat_y, double sat_z, double r_m, double sin_mask,
                         LosAccumulator& acc) {
    const __m256d vsx = _mm256_set1_pd(sat_x);
    const __m256d vsy = _mm256_set1_pd(sat_y);
    const __m256d vsz = _mm256_set1_pd(sat_z);
    const __m256d vrms = _mm256_set1_pd(r_m * sin_mask);
    const __m256d ones = _mm256_set1_pd(1.0);

    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(px + i);
        const __m256d y = _mm256_loadu_pd(py + i);
        const __m256d z = _mm256_loadu_pd(pz + i);
        const __m256d dx = _mm256_sub_pd(vsx, x);
        const __m256d dy = _mm256_sub_pd(vsy, y);
        const __m256d dz = _mm256_sub_pd(vsz, z);

        __m256d dist2 = _mm256_mul_pd(dx, dx);
        dist2 = _mm256_fmadd_pd(dy, dy, dist2);
        dist2 = _mm256_fmadd_pd(dz, dz, dist2);
        const __m256d dist = _mm256_sqrt_pd(dist2);

        __m256d dotdp = _mm256_mul_pd(dx, x);
        dotdp = _mm256_fmadd_pd(dy, y, dotdp);
        dotdp = _mm256_fmadd_pd(dz, z, dotdp);

        const __m256d visible = _mm256_cmp_pd(dotdp, _mm256_mul_pd(dist, vrms), _CMP_GE_OQ);
        if (_mm256_movemask_pd(visible) == 0) continue;

        const __m256d inv = _mm256_div_pd(ones, dist);
        const __m256d ux = _mm256_mul_pd(dx, inv);
        const __m256d uy = _mm256_mul_pd(dy, inv);
        const __m256d uz = _mm256_mul_pd(dz, inv);

        auto add_masked = [&](double* dst, __m256d value) {
            const __m256d cur = _mm256_loadu_pd(dst);
            _mm256_storeu_pd(dst, _mm256_add_pd(cur, _mm256_and_pd(visible, value)));
        };
        add_masked(acc.sxx.data() + i, _mm256_mul_pd(ux, ux));
        add_masked(acc.sxy.data() + i, _mm256_mul_pd(ux, uy));
        add_masked(acc.sxz.data() + i, _mm256_mul_pd(ux, uz));
        add_masked(acc.syy.data() + i, _mm256_mul_pd(uy, uy));
        add_masked(acc.syz.data() + i, _mm256_mul_pd(uy, uz));
        add_masked(acc.szz.data() + i, _mm256_mul_pd(uz, uz));
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
