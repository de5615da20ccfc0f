#pragma once

// Run configuration: one JSON document covering every tunable constant in
// the toolkit, loaded over built-in defaults with unknown keys rejected.

#include <string>

#include "lgnss/cost.hpp"
#include "lgnss/coverage.hpp"
#include "lgnss/moea.hpp"
#include "lgnss/stationkeeping.hpp"

namespace lgnss {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StationKeepingMode { Numeric, Off };

struct RunConfig {
    std::string reference_epoch_label = "t=0 at 2000-01-01T12:00:00 TT";

    PhysicalConstants constants;
    PerturberOrbitModel earth;
    PerturberOrbitModel sun;

    // Force model
    int harmonics_degree = 10;
    int harmonics_order = 10;
    std::string coefficient_table_path;  // empty: built-in J2/C22 table
    bool earth_third_body = true;
    bool sun_third_body = true;
    bool srp_enabled = true;
    double cr = 1.8;
    double srp_area_m2 = 3.0;
    double sat_mass_kg = 332.5;
    bool body_rotation = true;
    double body_rotation_theta0_deg = 0.0;

    IntegratorConfig integrator;
    DecisionBounds bounds;
    FrozenOptions frozen;

    int grid_points = 500;
    SamplingConfig sampling;
    CoverageOptions coverage;
    FidelityTier fidelity = FidelityTier::Fast;

    DeadbandConfig deadbands;
    TargeterConfig targeter;
    StationKeepingMode sk_mode = StationKeepingMode::Numeric;
    double sk_horizon_days = 56.0;
    bool sk_all_satellites = false;
    double sk_penalty_kmps_yr = 5.0;

    LinkBudgetConfig link_budget;
    PayloadPowerTable power_table;
    MassCostConfig cost;

    std::vector<double> epsilons{0.01, 0.1, 10.0, 0.01};  // GDOP, avail, cost, dV
    NormalizationBounds hv_bounds{{1.0, -100.0, 0.0, 0.0}, {20.0, 0.0, 1000.0, 5.0}};
    ObjectivePoint penalty_objectives{1000.0, 0.0, 10000.0, 5.0};  // avail negated

    int initial_population = 100;
    double gamma = 4.0;
    double zeta = 1.0;
    int stagnation_window = 100;
    double tournament_fraction = 0.02;
    int history_stride = 50;
    long checkpoint_stride = 100;
    OperatorParams operators;

    std::uint64_t seed = 42;
    long budget = 500;
    int threads = 0;  // 0: hardware concurrency
    std::string output_dir = "out";

    int effective_threads() const;

    ForceModelConfig force_model() const;
    CoverageContext coverage_context() const;
    StationKeepingConfig stationkeeping_config() const;
    MoeaConfig moea_config() const;
};

RunConfig default_config();

// Parses the file, overlays it on the defaults and validates. Unknown keys
// and type mismatches raise ConfigError with the offending field path.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Fully explicit JSON document (every default spelled out).
std::string config_to_json(const RunConfig& config);

}  // namespace lgnss
