#pragma once

// Design evaluation pipeline (the four objectives plus their breakdowns)
// and the file formats the CLI reads and writes: archive/history CSV,
// gdop-map CSV, maneuver logs and resumable run checkpoints.

#include <optional>
#include <string>

#include "lgnss/config.hpp"

namespace lgnss {

struct DesignEvaluation {
    ConstellationDesign design;
    CoverageResult coverage;
    StationKeepingResult stationkeeping;
    CostBreakdown cost;
    // Minimization sense: (gdop_p98, -availability_pct, cost_musd, dv_kmps_yr).
    ObjectivePoint objectives;
    bool penalized = false;
};

// Full objective pipeline for one decoded design.
DesignEvaluation evaluate_design(const ConstellationDesign& design, const RunConfig& config,
                                 const SurfaceGrid& grid);

// The lunar optimization problem over the 6-variable decision space.
Problem lunar_problem(const RunConfig& config, const SurfaceGrid& grid);

struct ArchiveRow {
    long id = 0;
    double sma_km = 0.0;
    int n_sats = 0;
    int n_planes = 0;
    int phasing = 0;
    double ecc = 0.0;
    double inc_deg = 0.0;
    double argp_deg = 0.0;
    double gdop_p98 = 0.0;
    double avail_pct = 0.0;
    double cost_musd = 0.0;
    double dv_kmps_yr = 0.0;
    double m_dry_kg = 0.0;
    double p_t_dbw = 0.0;
    double p_pl_w = 0.0;
    double t1_musd = 0.0;
    bool penalized = false;

    ObjectivePoint objectives() const {  // minimization sense
        return {gdop_p98, -avail_pct, cost_musd, dv_kmps_yr};
    }
};

extern const char* const kArchiveCsvHeader;

std::string format_double(double v);  // shortest round-trip representation

ArchiveRow make_archive_row(long id, const DesignEvaluation& eval);
std::string archive_row_csv(const ArchiveRow& row);
std::vector<ArchiveRow> read_archive_csv(const std::string& path);
void write_archive_csv(const std::string& path, const std::vector<ArchiveRow>& rows);

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& rows);
void write_gdop_map_csv(const std::string& path, const std::vector<GdopMapEntry>& map);
void write_maneuver_log_csv(const std::string& path, const std::vector<ManeuverEvent>& events);

std::string moea_state_to_json(const MoeaState& state);
MoeaState moea_state_from_json(const std::string& text);

}  // namespace lgnss
