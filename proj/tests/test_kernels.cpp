#include <doctest.h>

#include <cmath>
#include <random>

#include "lgnss/coverage.hpp"
#include "lgnss/los_kernels.hpp"

using namespace lgnss;
using namespace lgnss::kernels;

namespace {

struct Scenario {
    SurfaceGrid grid;
    std::vector<Vec3> sats;
    double sin_mask;
};

Scenario random_scenario(std::mt19937_64& rng, int n_points, int n_sats) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Scenario sc;
    sc.grid = surface_grid(n_points, 1738.1);
    for (int s = 0; s < n_sats; ++s) {
        const double r = 3500.0 + 14000.0 * u01(rng);
        const double th = kTwoPi * u01(rng);
        const double z = 2.0 * u01(rng) - 1.0;
        const double ring = std::sqrt(1.0 - z * z);
        sc.sats.push_back({r * ring * std::cos(th), r * ring * std::sin(th), r * z});
    }
    sc.sin_mask = std::sin(deg2rad(10.0 * u01(rng) - 2.0));
    return sc;
}

void run_kernel(AccumulateFn fn, const Scenario& sc, LosAccumulator& acc) {
    acc.resize(sc.grid.size());
    for (const Vec3& sat : sc.sats)
        fn(sc.grid.x.data(), sc.grid.y.data(), sc.grid.z.data(), sc.grid.size(), sat.x, sat.y,
           sat.z, sc.grid.radius_km, sc.sin_mask, acc);
}

void check_equivalent(const LosAccumulator& a, const LosAccumulator& b) {
    REQUIRE(a.size() == b.size());
    auto close = [](double x, double y) {
        return std::fabs(x - y) <= 1e-12 * std::max({1.0, std::fabs(x), std::fabs(y)});
    };
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a.cnt[i] == b.cnt[i]);  // visibility decisions must agree exactly
        CHECK(close(a.sxx[i], b.sxx[i]));
        CHECK(close(a.sxy[i], b.sxy[i]));
        CHECK(close(a.sxz[i], b.sxz[i]));
        CHECK(close(a.syy[i], b.syy[i]));
        CHECK(close(a.syz[i], b.syz[i]));
        CHECK(close(a.szz[i], b.szz[i]));
        CHECK(close(a.sx[i], b.sx[i]));
        CHECK(close(a.sy[i], b.sy[i]));
        CHECK(close(a.sz[i], b.sz[i]));
    }
}

}  // namespace

TEST_CASE("selected kernel matches the scalar reference") {
    const AccumulateFn best = select_kernel();
    INFO("selected kernel: ", selected_kernel_name());
    std::mt19937_64 rng(777);
    for (int rep = 0; rep < 20; ++rep) {
        // Sizes straddle the vector width so remainder lanes are exercised.
        const Scenario sc = random_scenario(rng, 1 + rep * 13, 1 + rep % 7);
        LosAccumulator ref, fast;
        run_kernel(accumulate_los_scalar, sc, ref);
        run_kernel(best, sc, fast);
        check_equivalent(ref, fast);
    }
}

#if defined(LGNSS_HAVE_AVX2_TU) || defined(__x86_64__)
TEST_CASE("forced kernel selection round-trips") {
    const std::string before = selected_kernel_name();
    force_kernel("scalar");
    CHECK(selected_kernel_name() == "scalar");
    CHECK_THROWS_AS(force_kernel("nonsense"), std::invalid_argument);
    force_kernel("auto");
    CHECK(selected_kernel_name() == before);
}
#endif

TEST_CASE("scalar kernel counts match direct elevation tests") {
    std::mt19937_64 rng(31);
    const Scenario sc = random_scenario(rng, 97, 5);
    LosAccumulator acc;
    run_kernel(accumulate_los_scalar, sc, acc);
    const double mask_deg = rad2deg(std::asin(sc.sin_mask));
    for (size_t i = 0; i < sc.grid.size(); ++i) {
        int visible = 0;
        for (const Vec3& sat : sc.sats)
            if (elevation_deg(sat, sc.grid.point(i)) >= mask_deg - 1e-12) ++visible;
        CHECK(acc.cnt[i] == doctest::Approx(visible));
    }
}

TEST_CASE("kernel visibility counts agree with the per-call route") {
    std::mt19937_64 rng(53);
    const Scenario sc = random_scenario(rng, 64, 8);
    LosAccumulator acc;
    run_kernel(select_kernel(), sc, acc);
    const double mask_deg = rad2deg(std::asin(sc.sin_mask));

    for (size_t i = 0; i < sc.grid.size(); ++i) {
        std::vector<Vec3> visible;
        for (const Vec3& sat : sc.sats)
            if (elevation_deg(sat, sc.grid.point(i)) >= mask_deg) visible.push_back(sat);
        CHECK(static_cast<double>(visible.size()) == acc.cnt[i]);
        if (acc.cnt[i] >= 4.0) CHECK(gdop(visible, sc.grid.point(i)).has_value());
    }
}
