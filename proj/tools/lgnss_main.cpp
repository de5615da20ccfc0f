// Command-line front end: optimize / evaluate / frozen / gdop-map /
// rank / hv / merge. Exit codes: 0 success, 2 validation error, 3 runtime
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgnss/archive_io.hpp"
#include "lgnss/los_kernels.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lgnss;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

RunConfig load_config_or_default(const std::string& path) {
    return path.empty() ? default_config() : load_config(path);
}

ConstellationDesign design_from_json(const json& j, const RunConfig& config) {
    ConstellationDesign d;
    d.sma_km = j.at("sma_km").get<double>();
    d.n_sats = j.at("n_sats").get<int>();
    d.n_planes = j.at("n_planes").get<int>();
    d.phasing = j.value("phasing", 0);
    d.ecc = j.value("ecc", 0.0);
    d.argp_deg = j.at("argp_deg").get<double>();
    if (d.n_sats < 1 || d.n_planes < 1 || d.n_sats % d.n_planes != 0)
        throw ConfigError("design: n_planes must divide n_sats");
    if (d.phasing < 0 || d.phasing >= d.n_planes)
        throw ConfigError("design: phasing must lie in {0..n_planes-1}");

    const double frozen_inc =
        frozen_inclination(d.sma_km, d.ecc, d.argp_deg, config.constants, config.frozen);
    if (j.contains("inc_deg")) {
        d.inc_deg = j.at("inc_deg").get<double>();
        if (std::fabs(d.inc_deg - frozen_inc) > 0.5)
            std::cerr << "warning: design inclination " << d.inc_deg << " deg deviates "
                      << std::fabs(d.inc_deg - frozen_inc)
                      << " deg from the frozen solution " << frozen_inc << " deg\n";
    } else {
        d.inc_deg = frozen_inc;
    }

    const int per_plane = d.n_sats / d.n_planes;
    for (int k = 0; k < d.n_planes; ++k) {
        for (int s = 0; s < per_plane; ++s) {
            SatelliteSlot slot;
            slot.plane = k;
            slot.index_in_plane = s;
            slot.raan_deg = wrap_deg(k * 360.0 / d.n_planes);
            slot.mean_anomaly_deg =
                wrap_deg(s * 360.0 / per_plane + k * d.phasing * 360.0 / d.n_sats);
            d.satellites.push_back(slot);
        }
    }
    return d;
}

json design_to_json(const ConstellationDesign& d) {
    json sats = json::array();
    for (size_t i = 0; i < d.satellites.size(); ++i) {
        const SatelliteSlot& s = d.satellites[i];
        sats.push_back(json{{"plane", s.plane},
                            {"raan_deg", s.raan_deg},
                            {"mean_anomaly_deg", s.mean_anomaly_deg}});
    }
    return json{{"sma_km", d.sma_km},   {"n_sats", d.n_sats},     {"n_planes", d.n_planes},
                {"phasing", d.phasing}, {"ecc", d.ecc},           {"inc_deg", d.inc_deg},
                {"argp_deg", d.argp_deg}, {"satellites", sats}};
}

std::vector<double> parse_decision_csv(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        values.push_back(std::stod(item));
    if (values.size() != DecisionVector::kDim)
        throw ConfigError("decision: expected 6 comma-separated values");
    return values;
}

int cmd_optimize(const std::string& config_path, bool resume) {
    RunConfig config = load_config_or_default(config_path);
    fs::create_directories(config.output_dir);

    const SurfaceGrid grid = surface_grid(config.grid_points, config.constants.r_moon_mean_km);
    const Problem problem = lunar_problem(config, grid);
    MoeaConfig mc = config.moea_config();

    const fs::path checkpoint_path = fs::path(config.output_dir) / "checkpoint.json";
    std::optional<MoeaState> state;
    if (resume) {
        if (!fs::exists(checkpoint_path))
            throw ConfigError("resume requested but no checkpoint at " +
                              checkpoint_path.string());
        std::ifstream in(checkpoint_path);
        std::stringstream buf;
        buf << in.rdbuf();
        state = moea_state_from_json(buf.str());
        std::cerr << "resuming from evaluation " << state->evaluations << "\n";
    }

    auto checkpoint_hook = [&](const MoeaState& s) {
        std::ofstream out(checkpoint_path);
        out << moea_state_to_json(s);
    };

    const RunResult result = run(problem, mc, state, config.checkpoint_stride, checkpoint_hook);

    // Re-derive the full breakdown for each archived decision vector.
    std::vector<ArchiveRow> rows;
    rows.reserve(result.archive.size());
    long id = 0;
    for (const ArchiveEntry& e : result.archive.entries()) {
        DecisionVector dv;
        for (int i = 0; i < DecisionVector::kDim; ++i) dv[i] = e.x[static_cast<size_t>(i)];
        const ConstellationDesign design =
            decode(dv, config.bounds, config.constants, config.frozen);
        DesignEvaluation eval;
        eval.design = design;
        eval.objectives = e.f;
        eval.cost = cost_objective(design, e.f[3], config.link_budget, config.power_table,
                                   config.cost, config.constants);
        eval.penalized = e.f == config.penalty_objectives ||
                         e.f[0] >= config.coverage.penalty_sentinel;
        rows.push_back(make_archive_row(id++, eval));
        rows.back().gdop_p98 = e.f[0];
        rows.back().avail_pct = -e.f[1];
        rows.back().cost_musd = e.f[2];
        rows.back().dv_kmps_yr = e.f[3];
    }
    write_archive_csv((fs::path(config.output_dir) / "archive.csv").string(), rows);
    write_history_csv((fs::path(config.output_dir) / "history.csv").string(), result.history);
    checkpoint_hook(result.final_state);

    std::cout << "evaluations: " << result.evaluations << "\n"
              << "archive size: " << result.archive.size() << "\n"
              << "restarts: " << result.restarts << "\n"
              << "kernel: " << kernels::selected_kernel_name() << "\n"
              << "outputs: " << config.output_dir << "\n";
    return 0;
}

int cmd_evaluate(const std::string& config_path, const std::string& decision_csv,
                 const std::string& design_path, const std::string& out_path,
                 const std::string& maneuver_log) {
    RunConfig config = load_config_or_default(config_path);
    const SurfaceGrid grid = surface_grid(config.grid_points, config.constants.r_moon_mean_km);

    ConstellationDesign design;
    if (!decision_csv.empty()) {
        const auto values = parse_decision_csv(decision_csv);
        DecisionVector dv;
        for (int i = 0; i < DecisionVector::kDim; ++i) dv[i] = values[static_cast<size_t>(i)];
        design = decode(dv, config.bounds, config.constants, config.frozen);
    } else if (!design_path.empty()) {
        std::ifstream in(design_path);
        if (!in) throw ConfigError("cannot open design file " + design_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("design: invalid JSON: ") + e.what());
        }
        design = design_from_json(j, config);
    } else {
        throw ConfigError("evaluate: provide --decision or --design");
    }

    const DesignEvaluation eval = evaluate_design(design, config, grid);

    json out;
    out["design"] = design_to_json(eval.design);
    out["objectives"] = {{"gdop_p98", eval.objectives[0]},
                         {"availability_pct", -eval.objectives[1]},
                         {"cost_musd", eval.objectives[2]},
                         {"dv_kmps_yr", eval.objectives[3]}};
    out["penalized"] = eval.penalized;
    out["coverage"] = {{"gdop_p98", eval.coverage.gdop_p98},
                       {"availability_pct", eval.coverage.availability_pct},
                       {"samples_evaluated", eval.coverage.samples_evaluated}};
    out["cost_breakdown"] = {{"r_max_km", eval.cost.r_max_km},
                             {"p_t_dbw", eval.cost.p_t_dbw},
                             {"p_pl_w", eval.cost.p_pl_w},
                             {"m_dry_init_kg", eval.cost.m_dry_init_kg},
                             {"m_prop_kg", eval.cost.m_prop_kg},
                             {"m_dry_kg", eval.cost.m_dry_kg},
                             {"t1_musd", eval.cost.t1_musd},
                             {"cost_dev_musd", eval.cost.cost_dev_musd},
                             {"cost_prod_musd", eval.cost.cost_prod_musd},
                             {"cost_total_musd", eval.cost.cost_total_musd},
                             {"warnings", eval.cost.warnings}};
    out["stationkeeping"] = {{"dv_kmps_per_sat_yr", eval.stationkeeping.dv_kmps_per_sat_yr},
                             {"penalized", eval.stationkeeping.penalized},
                             {"simulated_sats", eval.stationkeeping.simulated_sats},
                             {"maneuver_count", eval.stationkeeping.events.size()}};

    if (!maneuver_log.empty()) write_maneuver_log_csv(maneuver_log, eval.stationkeeping.events);

    const std::string text = out.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        f << text;
    }
    return 0;
}

int cmd_frozen(const std::string& config_path, double a, double e, double omega, bool no_j2) {
    RunConfig config = load_config_or_default(config_path);
    FrozenOptions opt = config.frozen;
    if (no_j2) opt.include_j2 = false;
    const double inc = frozen_inclination(a, e, omega, config.constants, opt);
    std::cout << format_double(inc) << "\n";
    return 0;
}

int cmd_gdop_map(const std::string& config_path, const std::string& design_path,
                 const std::string& decision_csv, const std::string& out_path,
                 double window_days) {
    RunConfig config = load_config_or_default(config_path);
    const SurfaceGrid grid = surface_grid(config.grid_points, config.constants.r_moon_mean_km);

    ConstellationDesign design;
    if (!decision_csv.empty()) {
        const auto values = parse_decision_csv(decision_csv);
        DecisionVector dv;
        for (int i = 0; i < DecisionVector::kDim; ++i) dv[i] = values[static_cast<size_t>(i)];
        design = decode(dv, config.bounds, config.constants, config.frozen);
    } else if (!design_path.empty()) {
        std::ifstream in(design_path);
        if (!in) throw ConfigError("cannot open design file " + design_path);
        design = design_from_json(json::parse(in), config);
    } else {
        throw ConfigError("gdop-map: provide --decision or --design");
    }

    const auto map = gdop_map(design, Epoch(0.0), grid, config.coverage_context(),
                              window_days * kSecondsPerDay);
    write_gdop_map_csv(out_path, map);
    std::cout << "wrote " << map.size() << " grid points to " << out_path << "\n";
    return 0;
}

std::vector<ObjectivePoint> rows_to_objectives(const std::vector<ArchiveRow>& rows) {
    std::vector<ObjectivePoint> pts;
    pts.reserve(rows.size());
    for (const ArchiveRow& r : rows) pts.push_back(r.objectives());
    return pts;
}

int cmd_rank(const std::string& input, const std::string& out_path) {
    const auto rows = read_archive_csv(input);
    const auto ranks = pareto_rank(rows_to_objectives(rows));
    long rank1 = 0;
    for (int r : ranks) rank1 += r == 1 ? 1 : 0;

    std::ofstream out;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        out.open(out_path);
        os = &out;
    }
    *os << kArchiveCsvHeader << ",rank\n";
    for (size_t i = 0; i < rows.size(); ++i)
        *os << archive_row_csv(rows[i]) << ',' << ranks[i] << '\n';
    std::cerr << "rank-1 solutions: " << rank1 << " of " << rows.size() << "\n";
    return 0;
}

int cmd_hv(const std::string& input, const std::string& config_path) {
    RunConfig config = load_config_or_default(config_path);
    const auto rows = read_archive_csv(input);
    const double hv = hypervolume(rows_to_objectives(rows), config.hv_bounds);
    std::cout << format_double(hv) << "\n";
    return 0;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out_path,
              const std::string& config_path) {
    if (inputs.empty()) throw ConfigError("merge: no input files");
    RunConfig config = load_config_or_default(config_path);

    std::vector<ArchiveRow> merged;
    std::map<std::string, bool> seen;
    for (const std::string& path : inputs) {
        for (const ArchiveRow& r : read_archive_csv(path)) {
            // Identity of the decoded design.
            std::string key = format_double(r.sma_km) + '|' + std::to_string(r.n_sats) + '|' +
                              std::to_string(r.n_planes) + '|' + std::to_string(r.phasing) +
                              '|' + format_double(r.ecc) + '|' + format_double(r.argp_deg);
            if (seen.contains(key)) continue;
            seen[key] = true;
            merged.push_back(r);
        }
    }
    for (size_t i = 0; i < merged.size(); ++i) merged[i].id = static_cast<long>(i);

    const auto ranks = pareto_rank(rows_to_objectives(merged));
    long rank1 = 0;
    for (int r : ranks) rank1 += r == 1 ? 1 : 0;
    const double hv = hypervolume(rows_to_objectives(merged), config.hv_bounds);

    std::ofstream out;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        out.open(out_path);
        os = &out;
    }
    *os << kArchiveCsvHeader << ",rank\n";
    for (size_t i = 0; i < merged.size(); ++i)
        *os << archive_row_csv(merged[i]) << ',' << ranks[i] << '\n';
    std::cerr << "merged rows: " << merged.size() << "\n"
              << "rank-1 solutions: " << rank1 << "\n"
              << "hypervolume: " << format_double(hv) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lunar GNSS constellation design toolkit"};
    app.require_subcommand(1);

    std::string config_path, decision_csv, design_path, out_path, maneuver_log, input_path;
    std::vector<std::string> merge_inputs;
    bool resume = false, no_j2 = false;
    double frozen_a = 0.0, frozen_e = 0.0, frozen_omega = 90.0;
    double window_days = 27.321661;

    auto* optimize = app.add_subcommand("optimize", "Run the evolutionary design search");
    optimize->add_option("--config", config_path, "Run configuration JSON");
    optimize->add_flag("--resume", resume, "Continue from the checkpoint in the output dir");

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate one design or decision vector");
    evaluate->add_option("--config", config_path, "Run configuration JSON");
    evaluate->add_option("--decision", decision_csv,
                         "Decision vector: sma,n_sats,planes,phasing,ecc,argp (6 values)");
    evaluate->add_option("--design", design_path, "Explicit design JSON file");
    evaluate->add_option("--out", out_path, "Write the evaluation JSON here");
    evaluate->add_option("--maneuver-log", maneuver_log, "Write the maneuver event CSV here");

    auto* frozen_cmd = app.add_subcommand("frozen", "Frozen-orbit inclination for (a, e, omega)");
    frozen_cmd->add_option("a", frozen_a, "Semi-major axis, km")->required();
    frozen_cmd->add_option("e", frozen_e, "Eccentricity")->required();
    frozen_cmd->add_option("omega", frozen_omega, "Argument of periapsis, 90 or 270 deg")
        ->required();
    frozen_cmd->add_flag("--no-j2", no_j2, "Disable the oblateness term");
    frozen_cmd->add_option("--config", config_path, "Run configuration JSON");

    auto* gmap = app.add_subcommand("gdop-map", "Per-location GDOP percentile CSV");
    gmap->add_option("--config", config_path, "Run configuration JSON");
    gmap->add_option("--decision", decision_csv, "Decision vector (6 values)");
    gmap->add_option("--design", design_path, "Explicit design JSON file");
    gmap->add_option("--out", out_path, "Output CSV path")->required();
    gmap->add_option("--window-days", window_days, "Sampling window length");

    auto* rank = app.add_subcommand("rank", "Pareto-rank an archive CSV");
    rank->add_option("input", input_path, "Archive CSV")->required();
    rank->add_option("--out", out_path, "Ranked CSV output (default stdout)");

    auto* hv = app.add_subcommand("hv", "Hypervolume of an archive CSV");
    hv->add_option("input", input_path, "Archive CSV")->required();
    hv->add_option("--config", config_path, "Run configuration JSON (normalization bounds)");

    auto* merge = app.add_subcommand("merge", "Merge archives, dedupe, rank and report");
    merge->add_option("inputs", merge_inputs, "Archive CSVs")->required();
    merge->add_option("--out", out_path, "Merged CSV output (default stdout)");
    merge->add_option("--config", config_path, "Run configuration JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (optimize->parsed()) return cmd_optimize(config_path, resume);
        if (evaluate->parsed())
            return cmd_evaluate(config_path, decision_csv, design_path, out_path, maneuver_log);
        if (frozen_cmd->parsed())
            return cmd_frozen(config_path, frozen_a, frozen_e, frozen_omega, no_j2);
        if (gmap->parsed())
            return cmd_gdop_map(config_path, design_path, decision_csv, out_path, window_days);
        if (rank->parsed()) return cmd_rank(input_path, out_path);
        if (hv->parsed()) return cmd_hv(input_path, config_path);
        if (merge->parsed()) return cmd_merge(merge_inputs, out_path, config_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
