#pragma once

// Space-segment cost chain: worst-case user range, link budget, payload
// power, mass budget and USCM8-style development/production costs
// (FY2010 M$).

#include <optional>
#include <string>
#include <vector>

#include "lgnss/decoder.hpp"

namespace lgnss {

// Range basis for the link budget: the worst-case transmit radius taken
// at apoapsis a*(1+e), or at the semi-major axis (which reproduces the
// published per-architecture transmit powers).
enum class RangeBasis { Apoapsis, SemiMajorAxis };

struct LinkBudgetConfig {
    double p_received_dbw = -150.0;
    double freq_mhz = 1575.42;
    double g_tx_dbi = 13.0;
    double g_rx_dbi = 0.0;
    double l_ant_db = 2.0;
    double l_ex_db = 0.5;
    double mask_deg = 0.0;
    RangeBasis range_basis = RangeBasis::Apoapsis;
};

struct PayloadPowerTable {
    double p_phm_w = 54.0;   // x2 units
    double p_rafs_w = 39.0;  // x2 units
    double p_nsgu_w = 35.0;
    double p_fguu_w = 22.0;
    double p_rtu_w = 12.0;
    double amp_efficiency = 0.68;
    double thermal_fraction = 0.15;

    double fixed_sum_w() const {
        return 2.0 * p_phm_w + 2.0 * p_rafs_w + p_nsgu_w + p_fguu_w + p_rtu_w;
    }
};

struct MassCostConfig {
    double isp_s = 227.0;
    double g0_mps2 = 9.8;
    double learning_curve = 0.85;
    // Evaluate the dry-mass CER with zero propellant mass, matching the
    // published per-architecture dry masses.
    bool table_compat = false;
    double lifetime_years = 10.0;
};

struct CostBreakdown {
    double r_max_km = 0.0;
    double p_t_dbw = 0.0;
    double p_pl_w = 0.0;
    double m_dry_init_kg = 0.0;
    double m_prop_kg = 0.0;
    double m_dry_kg = 0.0;
    double t1_musd = 0.0;
    double cost_dev_musd = 0.0;
    double cost_prod_musd = 0.0;
    double cost_total_musd = 0.0;
    std::vector<std::string> warnings;  // CER validity-domain notes
};

// Worst-case user range: -r_m*sin(eta) + sqrt(a_apo^2 - r_m^2*cos^2(eta)).
double max_user_range(double a_apo_km, double elevation_deg, double r_moon_km);

// Transmit power (dBW) needed to close the link at the worst-case range.
double transmit_power(double sma_km, double ecc, const LinkBudgetConfig& lb,
                      const PhysicalConstants& consts);

// Total payload power draw (W) for a given transmit power.
double payload_power(double p_t_dbw, const PayloadPowerTable& tbl);

struct MassBudget {
    double m_dry_init_kg = 0.0;
    double m_prop_kg = 0.0;
    double m_dry_kg = 0.0;
};

MassBudget mass_budget(double p_pl_w, double dv_10yr_kmps, const MassCostConfig& mc);

struct CostFigures {
    double t1_musd = 0.0;
    double cost_dev_musd = 0.0;
    double cost_prod_musd = 0.0;
    double cost_total_musd = 0.0;
    std::vector<std::string> warnings;
};

CostFigures costs(double m_dry_kg, int n_sats, const MassCostConfig& mc);

// Full chain for a decoded design and an annualized per-satellite delta-V.
CostBreakdown cost_objective(const ConstellationDesign& design, double dv_per_sat_yr_kmps,
                             const LinkBudgetConfig& lb, const PayloadPowerTable& tbl,
                             const MassCostConfig& mc, const PhysicalConstants& consts);

}  // namespace lgnss
