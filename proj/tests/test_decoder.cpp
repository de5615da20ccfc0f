#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lgnss/decoder.hpp"

using namespace lgnss;

namespace {

// Trial-division oracle.
std::vector<int> divisors_oracle(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

DecisionVector make_x(double sma, double n_sats, double planes, double phasing, double ecc,
                      double argp) {
    DecisionVector x;
    x.sma_km = sma;
    x.n_sats = n_sats;
    x.planes_alg = planes;
    x.phasing_alg = phasing;
    x.ecc = ecc;
    x.argp_alg = argp;
    return x;
}

}  // namespace

TEST_CASE("factor lists") {
    CHECK(factors(21) == std::vector<int>{1, 3, 7, 21});
    CHECK(factors(1) == std::vector<int>{1});
    CHECK(factors(24) == divisors_oracle(24));
    for (int n : {8, 12, 17, 20, 28, 30}) CHECK(factors(n) == divisors_oracle(n));
}

TEST_CASE("pick_index scaling and clamping") {
    CHECK(pick_index(0.6, 4) == 2);   // scaled value 2.4 -> second option
    CHECK(pick_index(0.0, 7) == 1);
    CHECK(pick_index(1.0, 7) == 7);
    CHECK(pick_index(0.5, 5) == 3);   // 2.5 rounds up
    CHECK(pick_index(0.375, 4) == 2);  // 1.5 rounds up
}

TEST_CASE("worked decoding example: 21 satellites, planes_alg 0.6 -> 3 planes") {
    const PhysicalConstants c;
    const DecisionBounds b;
    const auto d = decode(make_x(8000.0, 21.0, 0.6, 0.0, 0.0, 0.0), b, c);
    CHECK(d.n_sats == 21);
    CHECK(d.n_planes == 3);
}

TEST_CASE("walker delta pattern for T=4, P=2, F=1") {
    const PhysicalConstants c;
    const DecisionBounds b;
    // planes_alg 0.5 over factors {1,2,4} -> index round(1.5)=2 -> P=2;
    // phasing_alg 1.0 -> index 2 -> F=1.
    DecisionBounds wide = b;
    wide.n_sats_min = 4.0;
    const auto d = decode(make_x(8000.0, 4.0, 0.5, 1.0, 0.0, 0.0), wide, c);
    REQUIRE(d.n_sats == 4);
    REQUIRE(d.n_planes == 2);
    REQUIRE(d.phasing == 1);

    // Plane 0: anomalies {0, 180}; plane 1 (RAAN 180): {90, 270}. PU = 90 deg.
    CHECK(d.satellites[0].raan_deg == doctest::Approx(0.0));
    CHECK(d.satellites[0].mean_anomaly_deg == doctest::Approx(0.0));
    CHECK(d.satellites[1].mean_anomaly_deg == doctest::Approx(180.0));
    CHECK(d.satellites[2].raan_deg == doctest::Approx(180.0));
    CHECK(d.satellites[2].mean_anomaly_deg == doctest::Approx(90.0));
    CHECK(d.satellites[3].mean_anomaly_deg == doctest::Approx(270.0));
}

TEST_CASE("single plane spreads satellites evenly") {
    const PhysicalConstants c;
    DecisionBounds b;
    b.n_sats_min = 5.0;
    const auto d = decode(make_x(9000.0, 5.0, 0.0, 0.0, 0.0, 0.0), b, c);
    REQUIRE(d.n_planes == 1);
    REQUIRE(d.phasing == 0);
    std::vector<double> anomalies;
    for (const auto& s : d.satellites) anomalies.push_back(s.mean_anomaly_deg);
    std::sort(anomalies.begin(), anomalies.end());
    const std::vector<double> expected{0.0, 72.0, 144.0, 216.0, 288.0};
    for (size_t i = 0; i < 5; ++i) CHECK(anomalies[i] == doctest::Approx(expected[i]));
}

TEST_CASE("argp rule: below 0.5 gives 90, at or above gives 270") {
    const PhysicalConstants c;
    const DecisionBounds b;
    CHECK(decode(make_x(8000, 20, 0, 0, 0, 0.49), b, c).argp_deg == 90.0);
    CHECK(decode(make_x(8000, 20, 0, 0, 0, 0.5), b, c).argp_deg == 270.0);
    CHECK(decode(make_x(8000, 20, 0, 0, 0, 0.51), b, c).argp_deg == 270.0);
}

TEST_CASE("decoded inclination satisfies the frozen condition") {
    const PhysicalConstants c;
    const DecisionBounds b;
    const auto d = decode(make_x(8025.9, 20.0, 0.9, 0.0, 0.004, 0.9), b, c);
    CHECK(d.inc_deg ==
          doctest::Approx(frozen_inclination(8025.9, 0.004, 270.0, c)).epsilon(1e-12));
    CHECK(d.inc_deg == doctest::Approx(39.53).epsilon(0.001));
}

TEST_CASE("decode invariants hold across random decision vectors") {
    const PhysicalConstants c;
    const DecisionBounds b;
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        const auto x = make_x(b.sma_min_km + u01(rng) * (b.sma_max_km - b.sma_min_km),
                              b.n_sats_min + u01(rng) * (b.n_sats_max - b.n_sats_min), u01(rng),
                              u01(rng), 0.3 * u01(rng), u01(rng));
        const auto d = decode(x, b, c);
        CHECK(d.n_sats % d.n_planes == 0);
        CHECK(d.phasing >= 0);
        CHECK(d.phasing < d.n_planes);
        CHECK((d.argp_deg == 90.0 || d.argp_deg == 270.0));
        CHECK(d.satellites.size() == static_cast<size_t>(d.n_sats));

        // Delta-pattern symmetry: advancing the plane index by one and adding
        // F*360/T to every anomaly maps the anomaly multiset onto itself.
        const int per_plane = d.n_sats / d.n_planes;
        const double pu = 360.0 / d.n_sats;
        for (int plane = 0; plane + 1 < d.n_planes; ++plane) {
            std::multiset<long> this_plane, next_plane;
            for (const auto& s : d.satellites) {
                if (s.plane == plane)
                    this_plane.insert(
                        std::lround(wrap_deg(s.mean_anomaly_deg + d.phasing * pu) * 1e6));
                if (s.plane == plane + 1)
                    next_plane.insert(std::lround(wrap_deg(s.mean_anomaly_deg) * 1e6));
            }
            CHECK(this_plane == next_plane);
        }
        (void)per_plane;
    }
}

TEST_CASE("decoding is deterministic") {
    const PhysicalConstants c;
    const DecisionBounds b;
    const auto x = make_x(9876.5, 23.4, 0.37, 0.81, 0.123, 0.77);
    const auto d1 = decode(x, b, c);
    const auto d2 = decode(x, b, c);
    CHECK(d1.inc_deg == d2.inc_deg);
    CHECK(d1.n_planes == d2.n_planes);
    REQUIRE(d1.satellites.size() == d2.satellites.size());
    for (size_t i = 0; i < d1.satellites.size(); ++i) {
        CHECK(d1.satellites[i].raan_deg == d2.satellites[i].raan_deg);
        CHECK(d1.satellites[i].mean_anomaly_deg == d2.satellites[i].mean_anomaly_deg);
    }
}

TEST_CASE("out-of-bounds vectors are rejected") {
    const PhysicalConstants c;
    const DecisionBounds b;
    CHECK_THROWS_AS(decode(make_x(1000.0, 20, 0, 0, 0, 0), b, c), std::invalid_argument);
    CHECK_THROWS_AS(decode(make_x(8000.0, 200, 0, 0, 0, 0), b, c), std::invalid_argument);
    CHECK_THROWS_AS(decode(make_x(8000.0, 20, 0, 0, 0.9, 0), b, c), std::invalid_argument);
}

TEST_CASE("satellite_elements converts the walker phase to a true anomaly") {
    const PhysicalConstants c;
    const DecisionBounds b;
    const auto d = decode(make_x(8000.0, 20.0, 0.0, 0.0, 0.2, 0.0), b, c);
    const KeplerianElements el = d.satellite_elements(3);
    const double back = true_to_mean_anomaly(deg2rad(el.true_anomaly_deg), d.ecc);
    CHECK(wrap_deg(rad2deg(back)) ==
          doctest::Approx(d.satellites[3].mean_anomaly_deg).epsilon(1e-9));
}
