#include "lgnss/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lgnss/parallel.hpp"

namespace lgnss {

double SurfaceGrid::latitude_deg(size_t i) const {
    return rad2deg(std::asin(std::clamp(z[i] / radius_km, -1.0, 1.0)));
}

double SurfaceGrid::longitude_deg(size_t i) const {
    return rad2deg(std::atan2(y[i], x[i]));
}

SurfaceGrid surface_grid(int n, double radius_km) {
    if (n < 1) throw std::invalid_argument("surface_grid: n must be >= 1");
    SurfaceGrid g;
    g.radius_km = radius_km;
    g.x.resize(static_cast<size_t>(n));
    g.y.resize(static_cast<size_t>(n));
    g.z.resize(static_cast<size_t>(n));
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double zu = 1.0 - 2.0 * (i + 0.5) / n;
        const double r_ring = std::sqrt(std::max(0.0, 1.0 - zu * zu));
        const double theta = golden_angle * i;
        g.x[static_cast<size_t>(i)] = radius_km * r_ring * std::cos(theta);
        g.y[static_cast<size_t>(i)] = radius_km * r_ring * std::sin(theta);
        g.z[static_cast<size_t>(i)] = radius_km * zu;
    }
    return g;
}

double elevation_deg(const Vec3& sat_pos_km, const Vec3& user_pos_km) {
    const Vec3 d = sat_pos_km - user_pos_km;
    const double s = d.dot(user_pos_km) / (d.norm() * user_pos_km.norm());
    return rad2deg(std::asin(std::clamp(s, -1.0, 1.0)));
}

namespace {

// Gauss-Jordan inverse with partial pivoting; returns false when a pivot
// vanishes. cond_1 is ||M||_1 * ||M^-1||_1.
bool invert4(const double m_in[4][4], double inv[4][4], double& cond_1) {
    double a[4][8];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            a[r][c] = m_in[r][c];
            a[r][c + 4] = (r == c) ? 1.0 : 0.0;
        }
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) return false;
        if (pivot != col)
            for (int c = 0; c < 8; ++c) std::swap(a[pivot][c], a[col][c]);
        const double d = a[col][col];
        for (int c = 0; c < 8; ++c) a[col][c] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < 8; ++c) a[r][c] -= f * a[col][c];
        }
    }
    double norm_m = 0.0, norm_inv = 0.0;
    for (int c = 0; c < 4; ++c) {
        double sm = 0.0, si = 0.0;
        for (int r = 0; r < 4; ++r) {
            sm += std::fabs(m_in[r][c]);
            si += std::fabs(a[r][c + 4]);
            inv[r][c] = a[r][c + 4];
        }
        norm_m = std::max(norm_m, sm);
        norm_inv = std::max(norm_inv, si);
    }
    cond_1 = norm_m * norm_inv;
    return true;
}

std::optional<double> gdop_from_normal_matrix(const double m[4][4], double n_vis,
                                              double cond_limit) {
    if (n_vis < 4.0) return std::nullopt;
    double inv[4][4];
    double cond = 0.0;
    if (!invert4(m, inv, cond)) return std::nullopt;
    if (!std::isfinite(cond) || cond > cond_limit) return std::nullopt;
    const double tr = inv[0][0] + inv[1][1] + inv[2][2] + inv[3][3];
    if (!(tr > 0.0) || !std::isfinite(tr)) return std::nullopt;
    return std::sqrt(tr);
}

}  // namespace

std::optional<double> gdop(std::span<const Vec3> sat_positions, const Vec3& user_pos,
                           double cond_limit) {
    if (sat_positions.size() < 4) return std::nullopt;
    double m[4][4] = {};
    for (const Vec3& sat : sat_positions) {
        const Vec3 d = sat - user_pos;
        const Vec3 u = d / d.norm();
        // H row is [-ux, -uy, -uz, 1]; accumulate H^T H directly.
        m[0][0] += u.x * u.x;
        m[0][1] += u.x * u.y;
        m[0][2] += u.x * u.z;
        m[0][3] -= u.x;
        m[1][1] += u.y * u.y;
        m[1][2] += u.y * u.z;
        m[1][3] -= u.y;
        m[2][2] += u.z * u.z;
        m[2][3] -= u.z;
        m[3][3] += 1.0;
    }
    m[1][0] = m[0][1];
    m[2][0] = m[0][2];
    m[3][0] = m[0][3];
    m[2][1] = m[1][2];
    m[3][1] = m[1][3];
    m[3][2] = m[2][3];
    return gdop_from_normal_matrix(m, static_cast<double>(sat_positions.size()), cond_limit);
}

std::optional<double> percentile(std::vector<double> values, double p) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p / 100.0;  // 0-based rank
    const double lo = std::floor(h);
    const size_t i = static_cast<size_t>(std::clamp(lo, 0.0, double(values.size() - 1)));
    if (i + 1 >= values.size()) return values.back();
    return values[i] + (h - lo) * (values[i + 1] - values[i]);
}

std::vector<Epoch> SamplingConfig::epochs(Epoch epoch0) const {
    std::vector<Epoch> out;
    const long steps = std::lround(window_s / step_s);
    out.reserve(static_cast<size_t>(steps) + 1);
    for (long k = 0; k <= steps; ++k)
        out.push_back(epoch0 + (start_offset_s + static_cast<double>(k) * step_s));
    return out;
}

std::vector<std::vector<Vec3>> satellite_positions(const ConstellationDesign& design,
                                                   Epoch epoch0,
                                                   const std::vector<Epoch>& epochs,
                                                   const CoverageContext& ctx) {
    const size_t n_sats = design.satellites.size();
    std::vector<std::vector<Vec3>> positions(n_sats, std::vector<Vec3>(epochs.size()));

    if (ctx.tier == FidelityTier::Fast) {
        const double n = mean_motion(ctx.constants.mu_moon, design.sma_km);
        const double raan_rate =
            secular_nodal_rate(design.sma_km, design.ecc, design.inc_deg, ctx.constants);
        parallel_for(n_sats, ctx.threads, [&](size_t begin, size_t end) {
            for (size_t s = begin; s < end; ++s) {
                const SatelliteSlot& slot = design.satellites[s];
                const double m0 = deg2rad(slot.mean_anomaly_deg);
                for (size_t k = 0; k < epochs.size(); ++k) {
                    const double dt = epochs[k] - epoch0;
                    KeplerianElements el;
                    el.sma_km = design.sma_km;
                    el.ecc = design.ecc;
                    el.inc_deg = design.inc_deg;
                    el.argp_deg = design.argp_deg;
                    el.raan_deg = wrap_deg(slot.raan_deg + rad2deg(raan_rate * dt));
                    el.true_anomaly_deg =
                        wrap_deg(rad2deg(mean_to_true_anomaly(m0 + n * dt, design.ecc)));
                    positions[s][k] = kepler_to_cartesian(el, ctx.constants.mu_moon).position_km;
                }
            }
        });
    } else {
        parallel_for(n_sats, ctx.threads, [&](size_t begin, size_t end) {
            for (size_t s = begin; s < end; ++s) {
                const CartesianState s0 =
                    kepler_to_cartesian(design.satellite_elements(s), ctx.constants.mu_moon);
                const Trajectory traj =
                    propagate(s0, epoch0, epochs.back(), ctx.force_model, ctx.integrator, epochs);
                for (size_t k = 0; k < epochs.size(); ++k)
                    positions[s][k] = traj.samples[k].state.position_km;
            }
        });
    }
    return positions;
}

namespace {

// GDOP per (epoch, location); NaN marks undefined samples.
std::vector<std::vector<double>> gdop_matrix(const ConstellationDesign& design, Epoch epoch0,
                                             const SurfaceGrid& grid,
                                             const std::vector<Epoch>& epochs,
                                             const CoverageContext& ctx) {
    const auto positions = satellite_positions(design, epoch0, epochs, ctx);
    const double sin_mask = std::sin(deg2rad(ctx.options.elevation_mask_deg));
    const auto kernel = kernels::select_kernel();
    const size_t n_loc = grid.size();

    std::vector<std::vector<double>> gdops(epochs.size(), std::vector<double>(n_loc));
    parallel_for(epochs.size(), ctx.threads, [&](size_t begin, size_t end) {
        kernels::LosAccumulator acc(n_loc);
        for (size_t k = begin; k < end; ++k) {
            acc.reset();
            for (size_t s = 0; s < positions.size(); ++s) {
                const Vec3& sp = positions[s][k];
                kernel(grid.x.data(), grid.y.data(), grid.z.data(), n_loc, sp.x, sp.y, sp.z,
                       grid.radius_km, sin_mask, acc);
            }
            for (size_t i = 0; i < n_loc; ++i) {
                const double m[4][4] = {
                    {acc.sxx[i], acc.sxy[i], acc.sxz[i], -acc.sx[i]},
                    {acc.sxy[i], acc.syy[i], acc.syz[i], -acc.sy[i]},
                    {acc.sxz[i], acc.syz[i], acc.szz[i], -acc.sz[i]},
                    {-acc.sx[i], -acc.sy[i], -acc.sz[i], acc.cnt[i]},
                };
                const auto g = gdop_from_normal_matrix(m, acc.cnt[i], ctx.options.cond_limit);
                gdops[k][i] = g ? *g : std::numeric_limits<double>::quiet_NaN();
            }
        }
    });
    return gdops;
}

double filtered_p98(std::vector<double>& pool, const CoverageOptions& opt) {
    const auto p = percentile(std::move(pool), 98.0);
    return p ? *p : opt.penalty_sentinel;
}

}  // namespace

CoverageResult evaluate_coverage(const ConstellationDesign& design, Epoch epoch0,
                                 const SurfaceGrid& grid, const CoverageContext& ctx) {
    const std::vector<Epoch> epochs = ctx.sampling.epochs(epoch0);
    const auto gdops = gdop_matrix(design, epoch0, grid, epochs, ctx);
    const size_t n_loc = grid.size();
    const CoverageOptions& opt = ctx.options;

    CoverageResult result;
    result.samples_evaluated = static_cast<long>(epochs.size() * n_loc);

    std::vector<double> pooled;
    pooled.reserve(epochs.size() * n_loc);
    long available = 0;
    for (size_t k = 0; k < epochs.size(); ++k) {
        for (size_t i = 0; i < n_loc; ++i) {
            const double g = gdops[k][i];
            if (std::isnan(g)) continue;
            if (g < opt.gdop_limit) {
                ++available;
                pooled.push_back(g);
            } else if (opt.cap_instead_of_filter) {
                pooled.push_back(opt.gdop_limit);
            }
        }
    }
    result.availability_pct = 100.0 * static_cast<double>(available) /
                              static_cast<double>(result.samples_evaluated);
    result.gdop_p98 = filtered_p98(pooled, opt);

    result.per_location_p98.resize(n_loc);
    std::vector<double> loc_pool;
    for (size_t i = 0; i < n_loc; ++i) {
        loc_pool.clear();
        for (size_t k = 0; k < epochs.size(); ++k) {
            const double g = gdops[k][i];
            if (std::isnan(g)) continue;
            if (g < opt.gdop_limit)
                loc_pool.push_back(g);
            else if (opt.cap_instead_of_filter)
                loc_pool.push_back(opt.gdop_limit);
        }
        result.per_location_p98[i] = filtered_p98(loc_pool, opt);
    }
    return result;
}

std::vector<GdopMapEntry> gdop_map(const ConstellationDesign& design, Epoch epoch0,
                                   const SurfaceGrid& grid, CoverageContext ctx,
                                   double window_s) {
    ctx.sampling.window_s = window_s;
    const CoverageResult r = evaluate_coverage(design, epoch0, grid, ctx);
    std::vector<GdopMapEntry> map(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        map[i] = {grid.latitude_deg(i), grid.longitude_deg(i), r.per_location_p98[i]};
    return map;
}

}  // namespace lgnss
