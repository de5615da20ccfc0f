#include "lgnss/cost.hpp"

#include <cmath>

namespace lgnss {

double max_user_range(double a_apo_km, double elevation_deg, double r_moon_km) {
    if (a_apo_km < r_moon_km)
        throw std::invalid_argument("max_user_range: apoapsis below the surface");
    const double eta = deg2rad(elevation_deg);
    const double c = r_moon_km * std::cos(eta);
    return -r_moon_km * std::sin(eta) + std::sqrt(a_apo_km * a_apo_km - c * c);
}

double transmit_power(double sma_km, double ecc, const LinkBudgetConfig& lb,
                      const PhysicalConstants& consts) {
    const double radius_km =
        lb.range_basis == RangeBasis::Apoapsis ? sma_km * (1.0 + ecc) : sma_km;
    const double r_m = max_user_range(radius_km, lb.mask_deg, consts.r_moon_mean_km) * 1e3;
    const double lambda_m = consts.c_kmps * 1e3 / (lb.freq_mhz * 1e6);
    const double fspl_db = -20.0 * std::log10(lambda_m / (4.0 * kPi * r_m));
    return lb.p_received_dbw - lb.g_tx_dbi - lb.g_rx_dbi + lb.l_ex_db + lb.l_ant_db + fspl_db;
}

double payload_power(double p_t_dbw, const PayloadPowerTable& tbl) {
    const double p_t_w = std::pow(10.0, p_t_dbw / 10.0);
    const double pre_thermal = p_t_w / tbl.amp_efficiency + tbl.fixed_sum_w();
    return pre_thermal * (1.0 + tbl.thermal_fraction);
}

MassBudget mass_budget(double p_pl_w, double dv_10yr_kmps, const MassCostConfig& mc) {
    if (p_pl_w <= 0.0) throw std::invalid_argument("mass_budget: payload power must be positive");
    if (dv_10yr_kmps < 0.0) throw std::invalid_argument("mass_budget: delta-V must be >= 0");

    MassBudget mb;
    mb.m_dry_init_kg = 7.5 * std::pow(p_pl_w, 0.65);
    const double dv_mps = dv_10yr_kmps * 1e3;
    mb.m_prop_kg = mb.m_dry_init_kg * (std::exp(dv_mps / (mc.g0_mps2 * mc.isp_s)) - 1.0);
    const double m_prop_for_cer = mc.table_compat ? 0.0 : mb.m_prop_kg;
    mb.m_dry_kg = 38.0 * std::pow(0.14 * p_pl_w + m_prop_for_cer, 0.51) - m_prop_for_cer;
    return mb;
}

CostFigures costs(double m_dry_kg, int n_sats, const MassCostConfig& mc) {
    if (m_dry_kg <= 0.0) throw std::invalid_argument("costs: dry mass must be positive");
    if (n_sats < 1) throw std::invalid_argument("costs: need at least one satellite");

    CostFigures cf;
    if (m_dry_kg < 288.0 || m_dry_kg > 7398.0)
        cf.warnings.push_back("dry mass outside the first-unit CER domain (288-7398 kg)");
    if (m_dry_kg < 114.0 || m_dry_kg > 5127.0)
        cf.warnings.push_back("dry mass outside the development CER domain (114-5127 kg)");

    cf.t1_musd = 289.5 * std::pow(m_dry_kg, 0.716) / 1000.0;
    cf.cost_dev_musd = 110.2 * m_dry_kg / 1000.0;
    const double exponent = 1.0 + std::log(mc.learning_curve) / std::log(2.0);
    cf.cost_prod_musd = cf.t1_musd * std::pow(static_cast<double>(n_sats), exponent);
    cf.cost_total_musd = cf.cost_dev_musd + cf.cost_prod_musd;
    return cf;
}

CostBreakdown cost_objective(const ConstellationDesign& design, double dv_per_sat_yr_kmps,
                             const LinkBudgetConfig& lb, const PayloadPowerTable& tbl,
                             const MassCostConfig& mc, const PhysicalConstants& consts) {
    CostBreakdown out;
    const double basis_km = lb.range_basis == RangeBasis::Apoapsis
                                ? design.sma_km * (1.0 + design.ecc)
                                : design.sma_km;
    out.r_max_km = max_user_range(basis_km, lb.mask_deg, consts.r_moon_mean_km);
    out.p_t_dbw = transmit_power(design.sma_km, design.ecc, lb, consts);
    out.p_pl_w = payload_power(out.p_t_dbw, tbl);

    const MassBudget mb = mass_budget(out.p_pl_w, mc.lifetime_years * dv_per_sat_yr_kmps, mc);
    out.m_dry_init_kg = mb.m_dry_init_kg;
    out.m_prop_kg = mb.m_prop_kg;
    out.m_dry_kg = mb.m_dry_kg;

    const CostFigures cf = costs(mb.m_dry_kg, design.n_sats, mc);
    out.t1_musd = cf.t1_musd;
    out.cost_dev_musd = cf.cost_dev_musd;
    out.cost_prod_musd = cf.cost_prod_musd;
    out.cost_total_musd = cf.cost_total_musd;
    out.warnings = cf.warnings;
    return out;
}

}  // namespace lgnss
