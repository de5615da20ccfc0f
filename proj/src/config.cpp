#include "lgnss/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace lgnss {

using nlohmann::json;

namespace {

// Consumes keys from one JSON object and reports unknown leftovers with
// their full path.
class Section {
  public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    ~Section() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.contains(it.key()))
                throw ConfigError(path_ + "." + it.key() + ": unknown key");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    template <typename T>
    void get(const std::string& key, T& target) {
        if (!has(key)) return;
        try {
            target = j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(path_ + "." + key + ": wrong type");
        }
    }

    const json& child(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    const std::string& path() const { return path_; }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void apply_constants(const json& j, const std::string& path, PhysicalConstants& c) {
    Section s(j, path);
    s.get("mu_moon_km3s2", c.mu_moon);
    s.get("r_moon_mean_km", c.r_moon_mean_km);
    s.get("mu_earth_km3s2", c.mu_earth);
    s.get("mu_sun_km3s2", c.mu_sun);
    s.get("a_earth_moon_km", c.a_earth_moon_km);
    s.get("sidereal_month_days", c.sidereal_month_days);
    s.get("c_kmps", c.c_kmps);
    s.get("j2_moon", c.j2_moon);
    s.get("c22_moon", c.c22_moon);
}

void apply_perturber(const json& j, const std::string& path, PerturberOrbitModel& m) {
    Section s(j, path);
    s.get("mu_km3s2", m.mu);
    s.get("sma_km", m.sma_km);
    s.get("ecc", m.ecc);
    s.get("inc_to_frame_deg", m.inc_to_frame_deg);
    s.get("raan_deg", m.raan_deg);
    s.get("argp_deg", m.argp_deg);
    s.get("mean_anomaly_at_epoch_deg", m.mean_anomaly_at_epoch_deg);
    s.get("period_days", m.period_days);
    s.get("node_regression_deg_per_yr", m.node_regression_deg_per_yr);
    if (m.sma_km <= 0.0 || m.ecc < 0.0 || m.ecc >= 1.0 || m.period_days <= 0.0)
        throw ConfigError(path + ": needs sma_km > 0, 0 <= ecc < 1, period_days > 0");
}

json perturber_to_json(const PerturberOrbitModel& m) {
    return json{{"mu_km3s2", m.mu},
                {"sma_km", m.sma_km},
                {"ecc", m.ecc},
                {"inc_to_frame_deg", m.inc_to_frame_deg},
                {"raan_deg", m.raan_deg},
                {"argp_deg", m.argp_deg},
                {"mean_anomaly_at_epoch_deg", m.mean_anomaly_at_epoch_deg},
                {"period_days", m.period_days},
                {"node_regression_deg_per_yr", m.node_regression_deg_per_yr}};
}

void apply_config(const json& j, RunConfig& c) {
    Section root(j, "config");
    root.get("reference_epoch_label", c.reference_epoch_label);

    if (root.has("constants")) apply_constants(root.child("constants"), "constants", c.constants);
    if (root.has("perturbers")) {
        Section p(root.child("perturbers"), "perturbers");
        if (p.has("earth")) apply_perturber(p.child("earth"), "perturbers.earth", c.earth);
        if (p.has("sun")) apply_perturber(p.child("sun"), "perturbers.sun", c.sun);
    }
    if (root.has("force_model")) {
        Section s(root.child("force_model"), "force_model");
        s.get("harmonics_degree", c.harmonics_degree);
        s.get("harmonics_order", c.harmonics_order);
        s.get("coefficient_table_path", c.coefficient_table_path);
        s.get("earth_third_body", c.earth_third_body);
        s.get("sun_third_body", c.sun_third_body);
        s.get("srp_enabled", c.srp_enabled);
        s.get("cr", c.cr);
        s.get("srp_area_m2", c.srp_area_m2);
        s.get("sat_mass_kg", c.sat_mass_kg);
        s.get("body_rotation", c.body_rotation);
        s.get("body_rotation_theta0_deg", c.body_rotation_theta0_deg);
    }
    if (root.has("integrator")) {
        Section s(root.child("integrator"), "integrator");
        s.get("rel_tol", c.integrator.rel_tol);
        s.get("abs_tol", c.integrator.abs_tol);
        s.get("min_step_s", c.integrator.min_step_s);
        s.get("max_step_s", c.integrator.max_step_s);
        s.get("initial_step_s", c.integrator.initial_step_s);
        c.integrator.validate();
    }
    if (root.has("bounds")) {
        Section s(root.child("bounds"), "bounds");
        s.get("sma_min_km", c.bounds.sma_min_km);
        s.get("sma_max_km", c.bounds.sma_max_km);
        s.get("n_sats_min", c.bounds.n_sats_min);
        s.get("n_sats_max", c.bounds.n_sats_max);
        s.get("ecc_min", c.bounds.ecc_min);
        s.get("ecc_max", c.bounds.ecc_max);
        if (c.bounds.sma_min_km > c.bounds.sma_max_km || c.bounds.n_sats_min < 1.0 ||
            c.bounds.ecc_min < 0.0 || c.bounds.ecc_max >= 1.0)
            throw ConfigError("bounds: inconsistent decision bounds");
    }
    if (root.has("frozen")) {
        Section s(root.child("frozen"), "frozen");
        s.get("include_j2", c.frozen.include_j2);
        s.get("j2_effective_extra", c.frozen.j2_effective_extra);
    }
    if (root.has("grid")) {
        Section s(root.child("grid"), "grid");
        s.get("points", c.grid_points);
        if (c.grid_points < 1) throw ConfigError("grid.points: must be at least 1");
    }
    if (root.has("sampling")) {
        Section s(root.child("sampling"), "sampling");
        s.get("step_s", c.sampling.step_s);
        double window_hours = c.sampling.window_s / 3600.0;
        s.get("window_hours", window_hours);
        c.sampling.window_s = window_hours * 3600.0;
        double offset_days = c.sampling.start_offset_s / kSecondsPerDay;
        s.get("start_offset_days", offset_days);
        c.sampling.start_offset_s = offset_days * kSecondsPerDay;
        if (c.sampling.step_s <= 0.0 || c.sampling.window_s < 0.0)
            throw ConfigError("sampling: needs step_s > 0 and window_hours >= 0");
    }
    if (root.has("coverage")) {
        Section s(root.child("coverage"), "coverage");
        s.get("elevation_mask_deg", c.coverage.elevation_mask_deg);
        s.get("gdop_limit", c.coverage.gdop_limit);
        s.get("cond_limit", c.coverage.cond_limit);
        s.get("cap_instead_of_filter", c.coverage.cap_instead_of_filter);
        s.get("penalty_sentinel", c.coverage.penalty_sentinel);
    }
    if (root.has("deadbands")) {
        Section s(root.child("deadbands"), "deadbands");
        s.get("ecc_rel_tol", c.deadbands.ecc_rel_tol);
        s.get("argp_tol_deg", c.deadbands.argp_tol_deg);
        s.get("r_apo_target_tol_km", c.deadbands.r_apo_target_tol_km);
        s.get("ecc_abs_floor", c.deadbands.ecc_abs_floor);
        s.get("floor_activation_ecc", c.deadbands.floor_activation_ecc);
        s.get("argp_activation_ecc", c.deadbands.argp_activation_ecc);
        s.get("check_interval_s", c.deadbands.check_interval_s);
    }
    if (root.has("stationkeeping")) {
        Section s(root.child("stationkeeping"), "stationkeeping");
        std::string mode = c.sk_mode == StationKeepingMode::Numeric ? "numeric" : "off";
        s.get("mode", mode);
        if (mode == "numeric")
            c.sk_mode = StationKeepingMode::Numeric;
        else if (mode == "off")
            c.sk_mode = StationKeepingMode::Off;
        else
            throw ConfigError("stationkeeping.mode: expected \"numeric\" or \"off\"");
        s.get("horizon_days", c.sk_horizon_days);
        s.get("all_satellites", c.sk_all_satellites);
        s.get("penalty_kmps_yr", c.sk_penalty_kmps_yr);
        if (s.has("targeter")) {
            Section t(s.child("targeter"), "stationkeeping.targeter");
            t.get("max_iterations", c.targeter.max_iterations);
            t.get("fd_step_kmps", c.targeter.fd_step_kmps);
            t.get("tol_ecc", c.targeter.tol_ecc);
            t.get("tol_argp_deg", c.targeter.tol_argp_deg);
            t.get("tol_r_apo_km", c.targeter.tol_r_apo_km);
        }
        if (c.sk_horizon_days < 28.0)
            throw ConfigError("stationkeeping.horizon_days: must be at least 28");
    }
    if (root.has("link_budget")) {
        Section s(root.child("link_budget"), "link_budget");
        s.get("p_received_dbw", c.link_budget.p_received_dbw);
        s.get("freq_mhz", c.link_budget.freq_mhz);
        s.get("g_tx_dbi", c.link_budget.g_tx_dbi);
        s.get("g_rx_dbi", c.link_budget.g_rx_dbi);
        s.get("l_ant_db", c.link_budget.l_ant_db);
        s.get("l_ex_db", c.link_budget.l_ex_db);
        s.get("mask_deg", c.link_budget.mask_deg);
        std::string basis =
            c.link_budget.range_basis == RangeBasis::Apoapsis ? "apoapsis" : "sma";
        s.get("range_basis", basis);
        if (basis == "apoapsis")
            c.link_budget.range_basis = RangeBasis::Apoapsis;
        else if (basis == "sma")
            c.link_budget.range_basis = RangeBasis::SemiMajorAxis;
        else
            throw ConfigError("link_budget.range_basis: expected \"apoapsis\" or \"sma\"");
        if (c.link_budget.freq_mhz <= 0.0) throw ConfigError("link_budget.freq_mhz: must be > 0");
    }
    if (root.has("power_table")) {
        Section s(root.child("power_table"), "power_table");
        s.get("p_phm_w", c.power_table.p_phm_w);
        s.get("p_rafs_w", c.power_table.p_rafs_w);
        s.get("p_nsgu_w", c.power_table.p_nsgu_w);
        s.get("p_fguu_w", c.power_table.p_fguu_w);
        s.get("p_rtu_w", c.power_table.p_rtu_w);
        s.get("amp_efficiency", c.power_table.amp_efficiency);
        s.get("thermal_fraction", c.power_table.thermal_fraction);
        if (c.power_table.amp_efficiency <= 0.0 || c.power_table.amp_efficiency > 1.0)
            throw ConfigError("power_table.amp_efficiency: must be in (0, 1]");
    }
    if (root.has("cost")) {
        Section s(root.child("cost"), "cost");
        s.get("isp_s", c.cost.isp_s);
        s.get("g0_mps2", c.cost.g0_mps2);
        s.get("learning_curve", c.cost.learning_curve);
        s.get("table_compat", c.cost.table_compat);
        s.get("lifetime_years", c.cost.lifetime_years);
        if (c.cost.learning_curve <= 0.0 || c.cost.learning_curve > 1.0)
            throw ConfigError("cost.learning_curve: must be in (0, 1]");
    }
    if (root.has("objectives")) {
        Section s(root.child("objectives"), "objectives");
        s.get("epsilons", c.epsilons);
        if (c.epsilons.size() != 4)
            throw ConfigError("objectives.epsilons: expected 4 values");
        for (double e : c.epsilons)
            if (e <= 0.0) throw ConfigError("objectives.epsilons: must be positive");
        if (s.has("hv_lower")) s.get("hv_lower", c.hv_bounds.lower);
        if (s.has("hv_upper")) s.get("hv_upper", c.hv_bounds.upper);
        if (c.hv_bounds.lower.size() != 4 || c.hv_bounds.upper.size() != 4)
            throw ConfigError("objectives.hv_lower/hv_upper: expected 4 values");
        s.get("penalty", c.penalty_objectives);
        if (c.penalty_objectives.size() != 4)
            throw ConfigError("objectives.penalty: expected 4 values");
    }
    if (root.has("moea")) {
        Section s(root.child("moea"), "moea");
        s.get("initial_population", c.initial_population);
        s.get("gamma", c.gamma);
        s.get("zeta", c.zeta);
        s.get("stagnation_window", c.stagnation_window);
        s.get("tournament_fraction", c.tournament_fraction);
        s.get("history_stride", c.history_stride);
        s.get("checkpoint_stride", c.checkpoint_stride);
        if (s.has("operators")) {
            Section o(s.child("operators"), "moea.operators");
            o.get("sbx_eta", c.operators.sbx_eta);
            o.get("sbx_var_prob", c.operators.sbx_var_prob);
            o.get("pm_eta", c.operators.pm_eta);
            o.get("pm_rate", c.operators.pm_rate);
            o.get("de_step", c.operators.de_step);
            o.get("de_crossover", c.operators.de_crossover);
            o.get("pcx_sigma_eta", c.operators.pcx_sigma_eta);
            o.get("pcx_sigma_zeta", c.operators.pcx_sigma_zeta);
            o.get("undx_sigma_zeta", c.operators.undx_sigma_zeta);
            o.get("undx_sigma_eta", c.operators.undx_sigma_eta);
            o.get("spx_epsilon", c.operators.spx_epsilon);
        }
        if (c.initial_population < 1)
            throw ConfigError("moea.initial_population: must be at least 1");
    }
    if (root.has("run")) {
        Section s(root.child("run"), "run");
        s.get("seed", c.seed);
        s.get("budget", c.budget);
        s.get("threads", c.threads);
        s.get("output_dir", c.output_dir);
        std::string fidelity = c.fidelity == FidelityTier::Fast ? "fast" : "full";
        s.get("fidelity", fidelity);
        if (fidelity == "fast")
            c.fidelity = FidelityTier::Fast;
        else if (fidelity == "full")
            c.fidelity = FidelityTier::FullNumeric;
        else
            throw ConfigError("run.fidelity: expected \"fast\" or \"full\"");
        if (c.budget < 1) throw ConfigError("run.budget: must be at least 1");
        if (c.threads < 0) throw ConfigError("run.threads: must be >= 0");
    }
}

}  // namespace

int RunConfig::effective_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ForceModelConfig RunConfig::force_model() const {
    ForceModelConfig fm;
    fm.constants = constants;
    fm.harmonics_degree = harmonics_degree;
    fm.harmonics_order = harmonics_order;
    fm.coefficient_table = coefficient_table_path.empty()
                               ? default_coefficient_table(constants)
                               : load_coefficient_table(coefficient_table_path);
    fm.earth_third_body = earth_third_body;
    fm.sun_third_body = sun_third_body;
    fm.earth = earth;
    fm.sun = sun;
    fm.srp_enabled = srp_enabled;
    fm.cr = cr;
    fm.srp_area_m2 = srp_area_m2;
    fm.sat_mass_kg = sat_mass_kg;
    fm.body_rotation = body_rotation;
    fm.body_rotation_theta0_deg = body_rotation_theta0_deg;
    fm.validate();
    return fm;
}

CoverageContext RunConfig::coverage_context() const {
    CoverageContext ctx;
    ctx.constants = constants;
    ctx.tier = fidelity;
    ctx.sampling = sampling;
    ctx.options = coverage;
    ctx.force_model = force_model();
    ctx.integrator = integrator;
    ctx.threads = effective_threads();
    return ctx;
}

StationKeepingConfig RunConfig::stationkeeping_config() const {
    StationKeepingConfig sk;
    sk.horizon_days = sk_horizon_days;
    sk.all_satellites = sk_all_satellites;
    sk.penalty_kmps_yr = sk_penalty_kmps_yr;
    sk.deadbands = deadbands;
    sk.targeter = targeter;
    sk.threads = effective_threads();
    return sk;
}

MoeaConfig RunConfig::moea_config() const {
    MoeaConfig mc;
    mc.epsilons = epsilons;
    mc.max_evaluations = budget;
    mc.initial_population = initial_population;
    mc.gamma = gamma;
    mc.zeta = zeta;
    mc.stagnation_window = stagnation_window;
    mc.tournament_fraction = tournament_fraction;
    mc.history_stride = history_stride;
    mc.seed = seed;
    mc.ops = operators;
    mc.hv_bounds = hv_bounds;
    mc.penalty_objectives = penalty_objectives;
    return mc;
}

RunConfig default_config() {
    RunConfig c;
    c.earth = default_earth_model(c.constants);
    c.sun = default_sun_model(c.constants);
    c.sampling.start_offset_s = c.constants.sidereal_month_days * kSecondsPerDay;
    return c;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    RunConfig c = default_config();
    apply_config(j, c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["reference_epoch_label"] = c.reference_epoch_label;
    j["constants"] = {{"mu_moon_km3s2", c.constants.mu_moon},
                      {"r_moon_mean_km", c.constants.r_moon_mean_km},
                      {"mu_earth_km3s2", c.constants.mu_earth},
                      {"mu_sun_km3s2", c.constants.mu_sun},
                      {"a_earth_moon_km", c.constants.a_earth_moon_km},
                      {"sidereal_month_days", c.constants.sidereal_month_days},
                      {"c_kmps", c.constants.c_kmps},
                      {"j2_moon", c.constants.j2_moon},
                      {"c22_moon", c.constants.c22_moon}};
    j["perturbers"] = {{"earth", perturber_to_json(c.earth)}, {"sun", perturber_to_json(c.sun)}};
    j["force_model"] = {{"harmonics_degree", c.harmonics_degree},
                        {"harmonics_order", c.harmonics_order},
                        {"coefficient_table_path", c.coefficient_table_path},
                        {"earth_third_body", c.earth_third_body},
                        {"sun_third_body", c.sun_third_body},
                        {"srp_enabled", c.srp_enabled},
                        {"cr", c.cr},
                        {"srp_area_m2", c.srp_area_m2},
                        {"sat_mass_kg", c.sat_mass_kg},
                        {"body_rotation", c.body_rotation},
                        {"body_rotation_theta0_deg", c.body_rotation_theta0_deg}};
    j["integrator"] = {{"rel_tol", c.integrator.rel_tol},
                       {"abs_tol", c.integrator.abs_tol},
                       {"min_step_s", c.integrator.min_step_s},
                       {"max_step_s", c.integrator.max_step_s},
                       {"initial_step_s", c.integrator.initial_step_s}};
    j["bounds"] = {{"sma_min_km", c.bounds.sma_min_km}, {"sma_max_km", c.bounds.sma_max_km},
                   {"n_sats_min", c.bounds.n_sats_min}, {"n_sats_max", c.bounds.n_sats_max},
                   {"ecc_min", c.bounds.ecc_min},       {"ecc_max", c.bounds.ecc_max}};
    j["frozen"] = {{"include_j2", c.frozen.include_j2},
                   {"j2_effective_extra", c.frozen.j2_effective_extra}};
    j["grid"] = {{"points", c.grid_points}};
    j["sampling"] = {{"step_s", c.sampling.step_s},
                     {"window_hours", c.sampling.window_s / 3600.0},
                     {"start_offset_days", c.sampling.start_offset_s / kSecondsPerDay}};
    j["coverage"] = {{"elevation_mask_deg", c.coverage.elevation_mask_deg},
                     {"gdop_limit", c.coverage.gdop_limit},
                     {"cond_limit", c.coverage.cond_limit},
                     {"cap_instead_of_filter", c.coverage.cap_instead_of_filter},
                     {"penalty_sentinel", c.coverage.penalty_sentinel}};
    j["deadbands"] = {{"ecc_rel_tol", c.deadbands.ecc_rel_tol},
                      {"argp_tol_deg", c.deadbands.argp_tol_deg},
                      {"r_apo_target_tol_km", c.deadbands.r_apo_target_tol_km},
                      {"ecc_abs_floor", c.deadbands.ecc_abs_floor},
                      {"floor_activation_ecc", c.deadbands.floor_activation_ecc},
                      {"argp_activation_ecc", c.deadbands.argp_activation_ecc},
                      {"check_interval_s", c.deadbands.check_interval_s}};
    j["stationkeeping"] = {
        {"mode", c.sk_mode == StationKeepingMode::Numeric ? "numeric" : "off"},
        {"horizon_days", c.sk_horizon_days},
        {"all_satellites", c.sk_all_satellites},
        {"penalty_kmps_yr", c.sk_penalty_kmps_yr},
        {"targeter",
         {{"max_iterations", c.targeter.max_iterations},
          {"fd_step_kmps", c.targeter.fd_step_kmps},
          {"tol_ecc", c.targeter.tol_ecc},
          {"tol_argp_deg", c.targeter.tol_argp_deg},
          {"tol_r_apo_km", c.targeter.tol_r_apo_km}}}};
    j["link_budget"] = {
        {"p_received_dbw", c.link_budget.p_received_dbw},
        {"freq_mhz", c.link_budget.freq_mhz},
        {"g_tx_dbi", c.link_budget.g_tx_dbi},
        {"g_rx_dbi", c.link_budget.g_rx_dbi},
        {"l_ant_db", c.link_budget.l_ant_db},
        {"l_ex_db", c.link_budget.l_ex_db},
        {"mask_deg", c.link_budget.mask_deg},
        {"range_basis", c.link_budget.range_basis == RangeBasis::Apoapsis ? "apoapsis" : "sma"}};
    j["power_table"] = {{"p_phm_w", c.power_table.p_phm_w},
                        {"p_rafs_w", c.power_table.p_rafs_w},
                        {"p_nsgu_w", c.power_table.p_nsgu_w},
                        {"p_fguu_w", c.power_table.p_fguu_w},
                        {"p_rtu_w", c.power_table.p_rtu_w},
                        {"amp_efficiency", c.power_table.amp_efficiency},
                        {"thermal_fraction", c.power_table.thermal_fraction}};
    j["cost"] = {{"isp_s", c.cost.isp_s},
                 {"g0_mps2", c.cost.g0_mps2},
                 {"learning_curve", c.cost.learning_curve},
                 {"table_compat", c.cost.table_compat},
                 {"lifetime_years", c.cost.lifetime_years}};
    j["objectives"] = {{"epsilons", c.epsilons},
                       {"hv_lower", c.hv_bounds.lower},
                       {"hv_upper", c.hv_bounds.upper},
                       {"penalty", c.penalty_objectives}};
    j["moea"] = {{"initial_population", c.initial_population},
                 {"gamma", c.gamma},
                 {"zeta", c.zeta},
                 {"stagnation_window", c.stagnation_window},
                 {"tournament_fraction", c.tournament_fraction},
                 {"history_stride", c.history_stride},
                 {"checkpoint_stride", c.checkpoint_stride},
                 {"operators",
                  {{"sbx_eta", c.operators.sbx_eta},
                   {"sbx_var_prob", c.operators.sbx_var_prob},
                   {"pm_eta", c.operators.pm_eta},
                   {"pm_rate", c.operators.pm_rate},
                   {"de_step", c.operators.de_step},
                   {"de_crossover", c.operators.de_crossover},
                   {"pcx_sigma_eta", c.operators.pcx_sigma_eta},
                   {"pcx_sigma_zeta", c.operators.pcx_sigma_zeta},
                   {"undx_sigma_zeta", c.operators.undx_sigma_zeta},
                   {"undx_sigma_eta", c.operators.undx_sigma_eta},
                   {"spx_epsilon", c.operators.spx_epsilon}}}};
    j["run"] = {{"seed", c.seed},
                {"budget", c.budget},
                {"threads", c.threads},
                {"output_dir", c.output_dir},
                {"fidelity", c.fidelity == FidelityTier::Fast ? "fast" : "full"}};
    return j.dump(2) + "\n";
}

}  // namespace lgnss
