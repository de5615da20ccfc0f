// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "lgnss/archive_io.hpp"

using namespace lgnss;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    bool ok = true;
    std::vector<std::string> notes;

    explicit Criterion(std::string n) : name(std::move(n)) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }

    void finish(double seconds) {
        std::printf("[%s] criterion %s (%.1f s)\n", ok ? "PASS" : "FAIL", name.c_str(), seconds);
        for (const auto& n : notes) std::printf("       - %s\n", n.c_str());
        if (!ok) ++g_failures;
        std::fflush(stdout);
    }
};

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool within_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

ConstellationDesign decode_table_row(double sma, int t, int p, int f, double ecc,
                                     double argp_alg, const RunConfig& cfg) {
    DecisionVector x;
    x.sma_km = sma;
    x.n_sats = t;
    x.ecc = ecc;
    x.argp_alg = argp_alg;
    const auto divisors = factors(t);
    for (size_t i = 0; i < divisors.size(); ++i)
        if (divisors[i] == p)
            x.planes_alg = (static_cast<double>(i) + 1.0) / static_cast<double>(divisors.size());
    x.phasing_alg = p > 1 ? (static_cast<double>(f) + 1.0) / static_cast<double>(p) : 0.0;
    return decode(x, cfg.bounds, cfg.constants, cfg.frozen);
}

Vec3 random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double z = 2.0 * u01(rng) - 1.0;
    const double th = kTwoPi * u01(rng);
    const double ring = std::sqrt(1.0 - z * z);
    return {ring * std::cos(th), ring * std::sin(th), z};
}

// --- criterion 1: cost chain against the published table -------------------

void criterion_cost_chain() {
    Timer timer;
    Criterion c("1 cost chain");
    RunConfig cfg = default_config();
    cfg.link_budget.range_basis = RangeBasis::SemiMajorAxis;
    cfg.cost.table_compat = true;

    struct Row {
        double sma, ecc;
        int n;
        double p_t, p_pl, m_dry, t1, total;
    };
    const Row rows[] = {{8025.9, 0.004, 20, 13.78, 341.63, 273.17, 16.07, 189.47},
                        {7298.6, 0.001, 21, 12.91, 333.86, 269.98, 15.94, 193.69},
                        {8669.2, 0.024, 24, 14.48, 350.99, 276.98, 16.23, 215.47},
                        {5701.2, 0.002, 24, 10.59, 319.90, 264.16, 15.69, 207.88}};

    for (const Row& r : rows) {
        const double p_t = transmit_power(r.sma, r.ecc, cfg.link_budget, cfg.constants);
        c.expect(std::fabs(p_t - r.p_t) <= 0.1,
                 "transmit power " + fmt(p_t) + " vs " + fmt(r.p_t) + " dBW (tol 0.1)");

        const double p_pl = payload_power(p_t, cfg.power_table);
        c.expect(std::fabs(p_pl - r.p_pl) / r.p_pl <= 0.03,
                 "payload power " + fmt(p_pl) + " vs " + fmt(r.p_pl) + " W (tol 3%)");

        const MassBudget mb = mass_budget(r.p_pl, 0.0, cfg.cost);  // table P_PL as input
        c.expect(std::fabs(mb.m_dry_kg - r.m_dry) / r.m_dry <= 0.005,
                 "dry mass " + fmt(mb.m_dry_kg) + " vs " + fmt(r.m_dry) + " kg (tol 0.5%)");

        const CostFigures cf = costs(mb.m_dry_kg, r.n, cfg.cost);
        c.expect(std::fabs(cf.t1_musd - r.t1) / r.t1 <= 0.01,
                 "unit cost " + fmt(cf.t1_musd) + " vs " + fmt(r.t1) + " M$ (tol 1%)");
        c.expect(std::fabs(cf.cost_total_musd - r.total) / r.total <= 0.01,
                 "total cost " + fmt(cf.cost_total_musd) + " vs " + fmt(r.total) +
                     " M$ (tol 1%)");
    }
    c.finish(timer.seconds());
}

// --- criterion 2: frozen inclination ---------------------------------------

void criterion_frozen() {
    Timer timer;
    Criterion c("2 frozen inclination");
    const RunConfig cfg = default_config();

    const struct {
        double a, e, w, inc;
    } rows[] = {{8025.9, 0.004, 270.0, 39.53},
                {5701.2, 0.002, 90.0, 40.78},
                {8669.2, 0.024, 270.0, 39.46}};
    for (const auto& r : rows) {
        const double inc = frozen_inclination(r.a, r.e, r.w, cfg.constants, cfg.frozen);
        c.expect(std::fabs(inc - r.inc) <= 0.3,
                 "inclination " + fmt(inc) + " vs " + fmt(r.inc) + " deg (tol 0.3)");
    }

    FrozenOptions no_j2 = cfg.frozen;
    no_j2.include_j2 = false;
    const double lk = frozen_inclination(17000.0, 0.0, 90.0, cfg.constants, no_j2);
    const double analytic = rad2deg(std::asin(std::sqrt(0.4)));
    c.expect(std::fabs(lk - analytic) <= 1e-6,
             "third-body-only limit " + fmt(lk) + " vs " + fmt(analytic) + " (tol 1e-6)");
    c.finish(timer.seconds());
}

// --- criterion 3: coverage bands (fast tier) --------------------------------

void criterion_coverage() {
    Timer timer;
    Criterion c("3 coverage bands");
    const RunConfig cfg = default_config();
    const SurfaceGrid grid = surface_grid(cfg.grid_points, cfg.constants.r_moon_mean_km);
    CoverageContext ctx = cfg.coverage_context();
    ctx.threads = cfg.effective_threads();

    const ConstellationDesign arch1 = decode_table_row(8025.9, 20, 5, 0, 0.004, 0.9, cfg);
    const CoverageResult r1 = evaluate_coverage(arch1, Epoch(0.0), grid, ctx);
    c.expect(within_band(r1.gdop_p98, 4.5, 5.5),
             "architecture 1 gdop_p98 " + fmt(r1.gdop_p98) + " outside [4.5, 5.5]");
    c.expect(within_band(r1.availability_pct, 94.0, 99.0),
             "architecture 1 availability " + fmt(r1.availability_pct) + " outside [94, 99]");

    const ConstellationDesign arch4 = decode_table_row(8669.2, 24, 4, 0, 0.024, 0.9, cfg);
    const CoverageResult r4 = evaluate_coverage(arch4, Epoch(0.0), grid, ctx);
    c.expect(within_band(r4.gdop_p98, 4.0, 5.0),
             "architecture 4 gdop_p98 " + fmt(r4.gdop_p98) + " outside [4.0, 5.0]");

    c.expect(timer.seconds() <= 120.0, "runtime exceeded two designs x 60 s");
    c.finish(timer.seconds());
}

// --- criterion 4: GDOP properties -------------------------------------------

void criterion_gdop_properties() {
    Timer timer;
    Criterion c("4 GDOP properties");
    std::mt19937_64 rng(60451);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double r_m = 1738.1;

    auto visible_set = [&](const Vec3& user, int count) {
        std::vector<Vec3> sats;
        while (static_cast<int>(sats.size()) < count) {
            const Vec3 sat = random_unit(rng) * (5000.0 + 12000.0 * u01(rng));
            if (elevation_deg(sat, user) > 2.0) sats.push_back(sat);
        }
        return sats;
    };

    // Monotone non-increase under satellite addition.
    for (int rep = 0; rep < 100; ++rep) {
        const Vec3 user = random_unit(rng) * r_m;
        auto sats = visible_set(user, 4 + rep % 6);
        const auto before = gdop(sats, user);
        sats.push_back(visible_set(user, 1)[0]);
        const auto after = gdop(sats, user);
        if (before && after)
            c.expect(*after <= *before * (1.0 + 1e-12),
                     "GDOP grew when adding a satellite: " + fmt(*before) + " -> " +
                         fmt(*after));
    }

    // Match against the explicit matrix-inverse oracle (Cholesky-free route
    // lives in the unit tests; here the public gdop() is compared against a
    // cofactor inverse).
    auto oracle = [](const std::vector<Vec3>& sats, const Vec3& user) {
        const size_t n = sats.size();
        double m[4][4] = {};
        for (size_t i = 0; i < n; ++i) {
            const Vec3 u = (sats[i] - user).normalized();
            const double h[4] = {-u.x, -u.y, -u.z, 1.0};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) m[a][b] += h[a] * h[b];
        }
        auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
            return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
                   m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
                   m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
        };
        const int idx[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
        double cof[4][4];
        for (int r = 0; r < 4; ++r)
            for (int k = 0; k < 4; ++k) {
                cof[r][k] = ((r + k) % 2 == 0 ? 1.0 : -1.0) *
                            det3(idx[r][0], idx[r][1], idx[r][2], idx[k][0], idx[k][1],
                                 idx[k][2]);
            }
        const double det = m[0][0] * cof[0][0] + m[0][1] * cof[0][1] + m[0][2] * cof[0][2] +
                           m[0][3] * cof[0][3];
        double tr = 0.0;
        for (int k = 0; k < 4; ++k) tr += cof[k][k];
        return std::sqrt(tr / det);
    };
    for (int rep = 0; rep < 100; ++rep) {
        const Vec3 user = random_unit(rng) * r_m;
        const auto sats = visible_set(user, 5 + rep % 6);
        const auto g = gdop(sats, user);
        if (!g) {
            c.expect(false, "unexpected undefined GDOP in oracle comparison");
            continue;
        }
        const double ref = oracle(sats, user);
        c.expect(std::fabs(*g - ref) <= 1e-10 * std::max(1.0, ref),
                 "oracle mismatch: " + fmt(*g) + " vs " + fmt(ref));
    }

    // Rotation invariance.
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        double q[4] = {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        const double qn = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
        for (double& v : q) v /= qn;
        const double w = q[0], x = q[1], y = q[2], z = q[3];
        const Vec3 rot[3] = {
            {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
            {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
            {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
        auto apply = [&](const Vec3& v) {
            return Vec3{rot[0].dot(v), rot[1].dot(v), rot[2].dot(v)};
        };
        const Vec3 user = random_unit(rng) * r_m;
        const auto sats = visible_set(user, 6);
        std::vector<Vec3> rotated;
        for (const Vec3& s : sats) rotated.push_back(apply(s));
        const auto g0 = gdop(sats, user);
        const auto g1 = gdop(rotated, apply(user));
        if (g0 && g1)
            c.expect(std::fabs(*g0 - *g1) <= 1e-9 * std::max(1.0, *g0),
                     "rotation changed GDOP: " + fmt(*g0) + " vs " + fmt(*g1));
        else
            c.expect(false, "undefined GDOP in rotation check");
    }
    c.finish(timer.seconds());
}

// --- criterion 5: station-keeping -------------------------------------------

void criterion_stationkeeping() {
    Timer timer;
    Criterion c("5 station-keeping");
    const RunConfig cfg = default_config();
    const ForceModelConfig fm = cfg.force_model();
    StationKeepingConfig sk = cfg.stationkeeping_config();
    sk.horizon_days = 56.0;
    sk.threads = cfg.effective_threads();

    const ConstellationDesign arch3 = decode_table_row(7298.6, 21, 3, 1, 0.001, 0.9, cfg);
    const StationKeepingResult r3 = annual_delta_v(arch3, Epoch(0.0), fm, cfg.integrator, sk);
    c.expect(!r3.penalized, "architecture 3 run penalized");
    c.expect(r3.dv_kmps_per_sat_yr <= 0.05,
             "architecture 3 dv " + fmt(r3.dv_kmps_per_sat_yr) + " > 0.05 km/s/yr");

    const ConstellationDesign arch1 = decode_table_row(8025.9, 20, 5, 0, 0.004, 0.9, cfg);
    const StationKeepingResult r1 = annual_delta_v(arch1, Epoch(0.0), fm, cfg.integrator, sk);
    c.expect(!r1.penalized, "architecture 1 run penalized");
    c.expect(r1.dv_kmps_per_sat_yr <= 0.15,
             "architecture 1 dv " + fmt(r1.dv_kmps_per_sat_yr) + " > 0.15 km/s/yr");

    for (const auto* result : {&r3, &r1}) {
        for (const ManeuverEvent& e : result->events) {
            if (!e.converged) continue;
            c.expect(std::fabs(e.post_ecc_err) <= 1e-4,
                     "post-fit |de| " + fmt(std::fabs(e.post_ecc_err)) + " > 1e-4");
            c.expect(std::fabs(e.post_r_apo_err_km) <= 1.0,
                     "post-fit |dr_apo| " + fmt(std::fabs(e.post_r_apo_err_km)) + " > 1 km");
        }
    }
    c.expect(timer.seconds() <= 1200.0, "runtime exceeded 2 x 10 min");
    c.finish(timer.seconds());
}

// --- criterion 6: propagator ------------------------------------------------

void criterion_propagator() {
    Timer timer;
    Criterion c("6 propagator");
    const PhysicalConstants consts;
    const ForceModelConfig two_body = two_body_force_model(consts);
    const IntegratorConfig integ;  // defaults

    const double sma = 7000.0;
    const CartesianState s0 =
        kepler_to_cartesian({sma, 0.2, 45.0, 40.0, 70.0, 10.0}, consts.mu_moon);
    const double period = orbital_period(consts.mu_moon, sma);
    auto energy = [&](const CartesianState& s) {
        return 0.5 * s.velocity_kmps.norm2() - consts.mu_moon / s.position_km.norm();
    };
    const CartesianState s1 =
        propagate_to(s0, Epoch(0.0), Epoch(10.0 * period), two_body, integ);
    const double drift = std::fabs(energy(s1) - energy(s0)) / std::fabs(energy(s0));
    c.expect(drift < 1e-9, "two-body energy drift " + fmt(drift) + " >= 1e-9");

    ForceModelConfig j2_only = two_body;
    j2_only.coefficient_table = {{2, 0, -consts.j2_moon, 0.0}};
    const double a_j2 = 8000.0, e_j2 = 0.05, i_j2 = 50.0;
    const CartesianState j0 =
        kepler_to_cartesian({a_j2, e_j2, i_j2, 40.0, 70.0, 10.0}, consts.mu_moon);
    const double t_j2 = 10.0 * orbital_period(consts.mu_moon, a_j2);
    const CartesianState j1 = propagate_to(j0, Epoch(0.0), Epoch(t_j2), j2_only, integ);
    double measured = cartesian_to_kepler(j1, consts.mu_moon).raan_deg -
                      cartesian_to_kepler(j0, consts.mu_moon).raan_deg;
    while (measured > 180.0) measured -= 360.0;
    while (measured < -180.0) measured += 360.0;
    const double analytic = rad2deg(j2_nodal_rate(a_j2, e_j2, i_j2, consts)) * t_j2;
    c.expect(std::fabs(measured - analytic) <= 0.01 * std::fabs(analytic),
             "J2 RAAN drift " + fmt(measured) + " vs analytic " + fmt(analytic) +
                 " deg (tol 1%)");
    c.finish(timer.seconds());
}

// --- criterion 7: MOEA -------------------------------------------------------

Problem dtlz2_problem() {
    Problem p;
    p.n_vars = 11;
    p.n_objs = 3;
    p.lower.assign(11, 0.0);
    p.upper.assign(11, 1.0);
    p.evaluate = [](const std::vector<double>& x) {
        double g = 0.0;
        for (size_t i = 2; i < x.size(); ++i) g += (x[i] - 0.5) * (x[i] - 0.5);
        const double a = x[0] * kPi / 2.0, b = x[1] * kPi / 2.0;
        return ObjectivePoint{(1.0 + g) * std::cos(a) * std::cos(b),
                              (1.0 + g) * std::cos(a) * std::sin(b), (1.0 + g) * std::sin(a)};
    };
    return p;
}

void criterion_moea() {
    Timer timer;
    Criterion c("7 MOEA");

    // DTLZ2, 10k evaluations, >= 90% of the analytic optimal hypervolume.
    {
        Problem p = dtlz2_problem();
        MoeaConfig mc;
        mc.epsilons = {0.02, 0.02, 0.02};
        mc.max_evaluations = 10000;
        mc.initial_population = 100;
        mc.seed = 31;
        mc.history_stride = 1000;
        mc.hv_bounds = {{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
        const RunResult r = run(p, mc);
        std::vector<ObjectivePoint> pts;
        for (const auto& e : r.archive.entries()) pts.push_back(e.f);
        const double hv = hypervolume(pts, mc.hv_bounds);
        const double optimal = std::pow(1.01, 3.0) - kPi / 6.0;
        c.expect(hv >= 0.90 * optimal,
                 "DTLZ2 hypervolume " + fmt(hv) + " < 90% of " + fmt(optimal));
        for (size_t i = 1; i < r.history.size(); ++i)
            c.expect(r.history[i].hypervolume >= r.history[i - 1].hypervolume - 1e-12,
                     "DTLZ2 hypervolume history regressed");
        c.expect(r.archive.invariants_hold(), "DTLZ2 archive invariants violated");
    }

    // Same-seed bitwise determinism.
    {
        Problem p = dtlz2_problem();
        MoeaConfig mc;
        mc.epsilons = {0.05, 0.05, 0.05};
        mc.max_evaluations = 1500;
        mc.initial_population = 100;
        mc.seed = 7;
        mc.hv_bounds = {{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
        const RunResult a = run(p, mc);
        const RunResult b = run(p, mc);
        bool identical = a.archive.size() == b.archive.size();
        if (identical)
            for (size_t i = 0; i < a.archive.size(); ++i)
                identical = identical && a.archive.entries()[i].x == b.archive.entries()[i].x &&
                            a.archive.entries()[i].f == b.archive.entries()[i].f;
        c.expect(identical, "same-seed archives differ");
    }

    // Lunar problem, 500 fast-tier evaluations: the archive should contain a
    // >= 90% availability design with at least 18 satellites. Soft check:
    // on failure the run retries with the next seed (documented policy,
    // three attempts).
    {
        RunConfig cfg = default_config();
        cfg.budget = 500;
        cfg.initial_population = 64;
        cfg.grid_points = 500;
        cfg.threads = 0;
        cfg.sk_horizon_days = 28.0;
        cfg.deadbands.check_interval_s = 3600.0;
        const SurfaceGrid grid = surface_grid(cfg.grid_points, cfg.constants.r_moon_mean_km);

        bool found = false;
        double best_avail = 0.0;
        int best_n = 0;
        for (std::uint64_t seed = 42; seed < 45 && !found; ++seed) {
            cfg.seed = seed;
            const Problem problem = lunar_problem(cfg, grid);
            const RunResult r = run(problem, cfg.moea_config());
            for (size_t i = 1; i < r.history.size(); ++i)
                c.expect(r.history[i].hypervolume >= r.history[i - 1].hypervolume - 1e-12,
                         "lunar hypervolume history regressed");
            c.expect(r.archive.invariants_hold(), "lunar archive invariants violated");
            for (const auto& e : r.archive.entries()) {
                const double avail = -e.f[1];
                const int n_sats = static_cast<int>(std::lround(e.x[1]));
                best_avail = std::max(best_avail, avail);
                best_n = std::max(best_n, n_sats);
                if (avail >= 90.0 && n_sats >= 18) found = true;
            }
            if (!found)
                std::printf("       note: seed %llu found no qualifying design yet\n",
                            static_cast<unsigned long long>(seed));
        }
        c.expect(found, "no archive design with availability >= 90% and n_sats >= 18 "
                        "(best availability " +
                            fmt(best_avail) + ")");
    }

    c.expect(timer.seconds() <= 7200.0, "runtime exceeded 2 h");
    c.finish(timer.seconds());
}

// --- criterion 8: analysis oracles -------------------------------------------

void criterion_analysis() {
    Timer timer;
    Criterion c("8 analysis oracles");
    std::mt19937_64 rng(1212);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // Ranking vs brute force on 100 random 4-D points.
    std::vector<ObjectivePoint> pts(100, ObjectivePoint(4));
    for (auto& p : pts)
        for (auto& v : p) v = u01(rng);
    const auto ranks = pareto_rank(pts);
    // A dominating point always sits in a strictly better front.
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j)
            if (i != j && dominates(pts[j], pts[i]))
                c.expect(ranks[j] < ranks[i], "rank ordering violates dominance");
    // Full equality against an independent peeling pass.
    {
        std::vector<int> oracle(pts.size(), 0);
        int level = 0;
        size_t remaining = pts.size();
        while (remaining > 0) {
            ++level;
            std::vector<size_t> front;
            for (size_t i = 0; i < pts.size(); ++i) {
                if (oracle[i] != 0) continue;
                bool dominated = false;
                for (size_t j = 0; j < pts.size() && !dominated; ++j)
                    if (j != i && oracle[j] == 0 && dominates(pts[j], pts[i])) dominated = true;
                if (!dominated) front.push_back(i);
            }
            for (size_t i : front) oracle[i] = level;
            remaining -= front.size();
        }
        c.expect(ranks == oracle, "pareto_rank differs from the brute-force oracle");
    }

    // Hand hypervolume values.
    c.expect(std::fabs(hypervolume_exact({{0.5, 0.5}}, {1.0, 1.0}) - 0.25) < 1e-12,
             "2-D single-point hypervolume");
    c.expect(std::fabs(hypervolume_exact({{0.2, 0.6}, {0.6, 0.2}}, {1.0, 1.0}) - 0.48) < 1e-12,
             "2-D two-point hypervolume");

    // 4-D exact vs Monte-Carlo.
    std::vector<ObjectivePoint> cloud(50, ObjectivePoint(4));
    for (auto& p : cloud)
        for (auto& v : p) v = u01(rng);
    const ObjectivePoint ref(4, 1.0);
    const double exact = hypervolume_exact(cloud, ref);
    const MonteCarloHv mc = hypervolume_monte_carlo(cloud, ref, 1000000, 777);
    c.expect(std::fabs(exact - mc.volume) <= 3.0 * mc.sigma + 1e-9,
             "exact " + fmt(exact) + " vs MC " + fmt(mc.volume) + " (3 sigma " +
                 fmt(3.0 * mc.sigma) + ")");
    c.finish(timer.seconds());
}

// --- criterion 9: end-to-end reproducibility ---------------------------------

void criterion_reproducibility() {
    Timer timer;
    Criterion c("9 reproducibility");
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "lgnss_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    RunConfig cfg = default_config();
    cfg.budget = 96;
    cfg.initial_population = 24;
    cfg.grid_points = 200;
    cfg.sampling.window_s = 12.0 * 3600.0;
    cfg.sampling.step_s = 600.0;
    cfg.sk_horizon_days = 28.0;
    cfg.deadbands.check_interval_s = 3600.0;
    cfg.seed = 2025;
    cfg.threads = 0;

    const SurfaceGrid grid = surface_grid(cfg.grid_points, cfg.constants.r_moon_mean_km);

    auto run_once = [&](const fs::path& dir) {
        fs::create_directories(dir);
        const Problem problem = lunar_problem(cfg, grid);
        const RunResult result = run(problem, cfg.moea_config());
        std::vector<ArchiveRow> rows;
        long id = 0;
        for (const ArchiveEntry& e : result.archive.entries()) {
            DecisionVector dv;
            for (int i = 0; i < DecisionVector::kDim; ++i) dv[i] = e.x[static_cast<size_t>(i)];
            DesignEvaluation eval;
            eval.design = decode(dv, cfg.bounds, cfg.constants, cfg.frozen);
            eval.objectives = e.f;
            eval.cost = cost_objective(eval.design, e.f[3], cfg.link_budget, cfg.power_table,
                                       cfg.cost, cfg.constants);
            rows.push_back(make_archive_row(id++, eval));
            rows.back().gdop_p98 = e.f[0];
            rows.back().avail_pct = -e.f[1];
            rows.back().cost_musd = e.f[2];
            rows.back().dv_kmps_yr = e.f[3];
        }
        write_archive_csv((dir / "archive.csv").string(), rows);
        write_history_csv((dir / "history.csv").string(), result.history);
        return rows;
    };

    const auto rows_a = run_once(base / "a");
    run_once(base / "b");

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    c.expect(slurp(base / "a/archive.csv") == slurp(base / "b/archive.csv"),
             "same-seed archive.csv differs");
    c.expect(slurp(base / "a/history.csv") == slurp(base / "b/history.csv"),
             "same-seed history.csv differs");

    // Every archive row re-evaluates (fast tier) to its stored objectives.
    const auto rows = read_archive_csv((base / "a/archive.csv").string());
    c.expect(rows.size() == rows_a.size(), "archive csv round-trip changed row count");
    int checked = 0;
    for (const ArchiveRow& row : rows) {
        ConstellationDesign d;
        d.sma_km = row.sma_km;
        d.n_sats = row.n_sats;
        d.n_planes = row.n_planes;
        d.phasing = row.phasing;
        d.ecc = row.ecc;
        d.argp_deg = row.argp_deg;
        d.inc_deg = frozen_inclination(d.sma_km, d.ecc, d.argp_deg, cfg.constants, cfg.frozen);
        const int per_plane = d.n_sats / d.n_planes;
        for (int k = 0; k < d.n_planes; ++k)
            for (int s = 0; s < per_plane; ++s) {
                SatelliteSlot slot;
                slot.plane = k;
                slot.index_in_plane = s;
                slot.raan_deg = wrap_deg(k * 360.0 / d.n_planes);
                slot.mean_anomaly_deg =
                    wrap_deg(s * 360.0 / per_plane + k * d.phasing * 360.0 / d.n_sats);
                d.satellites.push_back(slot);
            }
        const DesignEvaluation eval = evaluate_design(d, cfg, grid);
        auto close = [](double x, double y) {
            return std::fabs(x - y) <= 1e-9 * std::max({1.0, std::fabs(x), std::fabs(y)});
        };
        c.expect(close(eval.objectives[0], row.gdop_p98),
                 "row gdop " + fmt(row.gdop_p98) + " re-evaluates to " +
                     fmt(eval.objectives[0]));
        c.expect(close(-eval.objectives[1], row.avail_pct),
                 "row availability " + fmt(row.avail_pct) + " re-evaluates to " +
                     fmt(-eval.objectives[1]));
        c.expect(close(eval.objectives[2], row.cost_musd),
                 "row cost " + fmt(row.cost_musd) + " re-evaluates to " +
                     fmt(eval.objectives[2]));
        c.expect(close(eval.objectives[3], row.dv_kmps_yr),
                 "row dv " + fmt(row.dv_kmps_yr) + " re-evaluates to " +
                     fmt(eval.objectives[3]));
        ++checked;
    }
    c.expect(checked > 0, "no archive rows to re-evaluate");
    c.finish(timer.seconds());
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_cost_chain();
    criterion_frozen();
    criterion_coverage();
    criterion_gdop_properties();
    criterion_stationkeeping();
    criterion_propagator();
    criterion_moea();
    criterion_analysis();
    criterion_reproducibility();
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
