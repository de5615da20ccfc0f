#pragma once

// Line-of-sight geometry kernels: the inner loop of coverage evaluation.
// For one satellite against a structure-of-arrays surface grid they test
// visibility and accumulate the per-location normal-matrix sums that GDOP
// is later computed from. A scalar reference implementation is always
// available; AVX2/NEON variants are selected at runtime and are verified
// against the scalar kernel by the test suite.

#include <cstddef>
#include <string>
#include <vector>

namespace lgnss::kernels {

// Per-location sums over visible satellites. With H rows of the form
// [-ux, -uy, -uz, 1], the normal matrix H^T H at location i is
//   [ sxx  sxy  sxz  -sx ]
//   [ sxy  syy  syz  -sy ]
//   [ sxz  syz  szz  -sz ]
//   [ -sx  -sy  -sz  cnt ]
struct LosAccumulator {
    std::vector<double> sxx, sxy, sxz, syy, syz, szz, sx, sy, sz, cnt;

    explicit LosAccumulator(size_t n = 0) { resize(n); }
    void resize(size_t n);
    void reset();
    size_t size() const { return sxx.size(); }
};

// Accumulates one satellite at (sx, sy, sz) into acc over n grid points
// (px, py, pz), each of radius r_m. A point sees the satellite when the
// elevation is at or above the mask, i.e. dot(d, p) >= |d| * r_m * sin_mask
// with d = sat - p.
using AccumulateFn = void (*)(const double* px, const double* py, const double* pz, size_t n,
                              double sat_x, double sat_y, double sat_z, double r_m,
                              double sin_mask, LosAccumulator& acc);

void accumulate_los_scalar(const double* px, const double* py, const double* pz, size_t n,
                           double sat_x, double sat_y, double sat_z, double r_m,
                           double sin_mask, LosAccumulator& acc);

#if defined(LGNSS_HAVE_AVX2_TU)
void accumulate_los_avx2(const double* px, const double* py, const double* pz, size_t n,
                         double sat_x, double sat_y, double sat_z, double r_m, double sin_mask,
                         LosAccumulator& acc);
#endif
#if defined(LGNSS_HAVE_NEON_TU)
void accumulate_los_neon(const double* px, const double* py, const double* pz, size_t n,
                         double sat_x, double sat_y, double sat_z, double r_m, double sin_mask,
                         LosAccumulator& acc);
#endif

// Best kernel for this machine, honoring the LGNSS_KERNEL environment
// variable ("scalar", "avx2", "neon", "auto") on first use.
AccumulateFn select_kernel();
// Name of the kernel select_kernel() resolves to ("scalar", "avx2", "neon").
std::string selected_kernel_name();
// Force a specific kernel ("auto" restores detection). Throws
// std::invalid_argument for unknown or unavailable names.
void force_kernel(const std::string& name);

}  // namespace lgnss::kernels
