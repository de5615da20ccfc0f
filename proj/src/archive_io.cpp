#include "lgnss/archive_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lgnss {

using nlohmann::json;

DesignEvaluation evaluate_design(const ConstellationDesign& design, const RunConfig& config,
                                 const SurfaceGrid& grid) {
    DesignEvaluation out;
    out.design = design;
    out.coverage = evaluate_coverage(design, Epoch(0.0), grid, config.coverage_context());

    if (config.sk_mode == StationKeepingMode::Numeric) {
        out.stationkeeping = annual_delta_v(design, Epoch(0.0), config.force_model(),
                                            config.integrator, config.stationkeeping_config());
    } else {
        out.stationkeeping.simulated_sats = 0;
    }

    out.cost = cost_objective(design, out.stationkeeping.dv_kmps_per_sat_yr, config.link_budget,
                              config.power_table, config.cost, config.constants);

    out.penalized = out.stationkeeping.penalized ||
                    out.coverage.gdop_p98 >= config.coverage.penalty_sentinel;
    out.objectives = {out.coverage.gdop_p98, -out.coverage.availability_pct,
                      out.cost.cost_total_musd, out.stationkeeping.dv_kmps_per_sat_yr};
    return out;
}

Problem lunar_problem(const RunConfig& config, const SurfaceGrid& grid) {
    Problem p;
    p.n_vars = DecisionVector::kDim;
    p.n_objs = 4;
    p.lower.resize(DecisionVector::kDim);
    p.upper.resize(DecisionVector::kDim);
    for (int i = 0; i < DecisionVector::kDim; ++i) {
        p.lower[static_cast<size_t>(i)] = config.bounds.lo(i);
        p.upper[static_cast<size_t>(i)] = config.bounds.hi(i);
    }
    p.evaluate = [&config, &grid](const std::vector<double>& x) {
        DecisionVector dv;
        for (int i = 0; i < DecisionVector::kDim; ++i) dv[i] = x[static_cast<size_t>(i)];
        const ConstellationDesign design =
            decode(dv, config.bounds, config.constants, config.frozen);
        return evaluate_design(design, config, grid).objectives;
    };
    return p;
}

const char* const kArchiveCsvHeader =
    "id,sma_km,n_sats,n_planes,phasing,ecc,inc_deg,argp_deg,gdop_p98,avail_pct,cost_musd,"
    "dv_kmps_yr,m_dry_kg,p_t_dbw,p_pl_w,t1_musd,penalized";

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ArchiveRow make_archive_row(long id, const DesignEvaluation& eval) {
    ArchiveRow r;
    r.id = id;
    r.sma_km = eval.design.sma_km;
    r.n_sats = eval.design.n_sats;
    r.n_planes = eval.design.n_planes;
    r.phasing = eval.design.phasing;
    r.ecc = eval.design.ecc;
    r.inc_deg = eval.design.inc_deg;
    r.argp_deg = eval.design.argp_deg;
    r.gdop_p98 = eval.objectives[0];
    r.avail_pct = -eval.objectives[1];
    r.cost_musd = eval.objectives[2];
    r.dv_kmps_yr = eval.objectives[3];
    r.m_dry_kg = eval.cost.m_dry_kg;
    r.p_t_dbw = eval.cost.p_t_dbw;
    r.p_pl_w = eval.cost.p_pl_w;
    r.t1_musd = eval.cost.t1_musd;
    r.penalized = eval.penalized;
    return r;
}

std::string archive_row_csv(const ArchiveRow& r) {
    std::string out;
    out += std::to_string(r.id);
    out += ',';
    out += format_double(r.sma_km);
    out += ',';
    out += std::to_string(r.n_sats);
    out += ',';
    out += std::to_string(r.n_planes);
    out += ',';
    out += std::to_string(r.phasing);
    out += ',';
    out += format_double(r.ecc);
    out += ',';
    out += format_double(r.inc_deg);
    out += ',';
    out += format_double(r.argp_deg);
    out += ',';
    out += format_double(r.gdop_p98);
    out += ',';
    out += format_double(r.avail_pct);
    out += ',';
    out += format_double(r.cost_musd);
    out += ',';
    out += format_double(r.dv_kmps_yr);
    out += ',';
    out += format_double(r.m_dry_kg);
    out += ',';
    out += format_double(r.p_t_dbw);
    out += ',';
    out += format_double(r.p_pl_w);
    out += ',';
    out += format_double(r.t1_musd);
    out += ',';
    out += r.penalized ? '1' : '0';
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& s, const std::string& context) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error(context + ": bad number '" + s + "'");
    return v;
}

}  // namespace

std::vector<ArchiveRow> read_archive_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open archive csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (line != kArchiveCsvHeader)
        throw std::runtime_error(path + ": unexpected archive csv header");
    std::vector<ArchiveRow> rows;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 17)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 17 fields");
        const std::string ctx = path + ":" + std::to_string(line_no);
        ArchiveRow r;
        r.id = static_cast<long>(parse_num(f[0], ctx));
        r.sma_km = parse_num(f[1], ctx);
        r.n_sats = static_cast<int>(parse_num(f[2], ctx));
        r.n_planes = static_cast<int>(parse_num(f[3], ctx));
        r.phasing = static_cast<int>(parse_num(f[4], ctx));
        r.ecc = parse_num(f[5], ctx);
        r.inc_deg = parse_num(f[6], ctx);
        r.argp_deg = parse_num(f[7], ctx);
        r.gdop_p98 = parse_num(f[8], ctx);
        r.avail_pct = parse_num(f[9], ctx);
        r.cost_musd = parse_num(f[10], ctx);
        r.dv_kmps_yr = parse_num(f[11], ctx);
        r.m_dry_kg = parse_num(f[12], ctx);
        r.p_t_dbw = parse_num(f[13], ctx);
        r.p_pl_w = parse_num(f[14], ctx);
        r.t1_musd = parse_num(f[15], ctx);
        r.penalized = f[16] == "1";
        rows.push_back(r);
    }
    return rows;
}

void write_archive_csv(const std::string& path, const std::vector<ArchiveRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << kArchiveCsvHeader << '\n';
    for (const ArchiveRow& r : rows) out << archive_row_csv(r) << '\n';
}

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "evals,hypervolume,archive_size,restarts\n";
    for (const HistoryRow& r : rows)
        out << r.evaluations << ',' << format_double(r.hypervolume) << ',' << r.archive_size
            << ',' << r.restarts << '\n';
}

void write_gdop_map_csv(const std::string& path, const std::vector<GdopMapEntry>& map) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "lat_deg,lon_deg,gdop_p98\n";
    for (const GdopMapEntry& e : map)
        out << format_double(e.lat_deg) << ',' << format_double(e.lon_deg) << ','
            << format_double(e.gdop_p98) << '\n';
}

void write_maneuver_log_csv(const std::string& path, const std::vector<ManeuverEvent>& events) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "sat_id,epoch_s,dv1_kmps,dv2_kmps,total_kmps,converged\n";
    for (const ManeuverEvent& e : events)
        out << e.sat_id << ',' << format_double(e.epoch.sec) << ','
            << format_double(e.dv1_kmps.norm()) << ',' << format_double(e.dv2_kmps.norm()) << ','
            << format_double(e.total_dv_kmps) << ',' << (e.converged ? '1' : '0') << '\n';
}

std::string moea_state_to_json(const MoeaState& state) {
    json j;
    j["rng_state"] = state.rng_state;
    j["evaluations"] = state.evaluations;
    j["restarts"] = state.restarts;
    j["stagnation"] = state.stagnation;
    j["tournament_size"] = state.tournament_size;
    json pop = json::array();
    for (const Individual& ind : state.population)
        pop.push_back(json{{"x", ind.x}, {"f", ind.f}});
    j["population"] = pop;
    json arc = json::array();
    for (const ArchiveEntry& e : state.archive)
        arc.push_back(json{{"x", e.x}, {"f", e.f}, {"producer", e.producer}});
    j["archive"] = arc;
    json hist = json::array();
    for (const HistoryRow& r : state.history)
        hist.push_back(json{{"evals", r.evaluations},
                            {"hypervolume", r.hypervolume},
                            {"archive_size", r.archive_size},
                            {"restarts", r.restarts}});
    j["history"] = hist;
    return j.dump();
}

MoeaState moea_state_from_json(const std::string& text) {
    const json j = json::parse(text);
    MoeaState s;
    s.rng_state = j.at("rng_state").get<std::string>();
    s.evaluations = j.at("evaluations").get<long>();
    s.restarts = j.at("restarts").get<int>();
    s.stagnation = j.at("stagnation").get<int>();
    s.tournament_size = j.at("tournament_size").get<int>();
    for (const json& e : j.at("population"))
        s.population.push_back({e.at("x").get<std::vector<double>>(),
                                e.at("f").get<ObjectivePoint>()});
    for (const json& e : j.at("archive")) {
        ArchiveEntry a;
        a.x = e.at("x").get<std::vector<double>>();
        a.f = e.at("f").get<ObjectivePoint>();
        a.producer = e.at("producer").get<int>();
        s.archive.push_back(std::move(a));
    }
    for (const json& e : j.at("history")) {
        HistoryRow r;
        r.evaluations = e.at("evals").get<long>();
        r.hypervolume = e.at("hypervolume").get<double>();
        r.archive_size = e.at("archive_size").get<size_t>();
        r.restarts = e.at("restarts").get<int>();
        s.history.push_back(r);
    }
    return s;
}

}  // namespace lgnss
