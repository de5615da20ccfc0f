#include "lgnss/forces.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lgnss {

void ForceModelConfig::validate() const {
    if (harmonics_degree < 0 || harmonics_order < 0 || harmonics_order > harmonics_degree)
        throw std::invalid_argument("force model: need degree >= order >= 0");
    if (cr < 1.0 || cr > 2.0) throw std::invalid_argument("force model: cr must be in [1, 2]");
    if (srp_area_m2 <= 0.0) throw std::invalid_argument("force model: srp_area must be positive");
    if (sat_mass_kg <= 0.0) throw std::invalid_argument("force model: sat_mass must be positive");
    for (const auto& h : coefficient_table)
        if (h.degree < 2 || h.order < 0 || h.order > h.degree)
            throw std::invalid_argument("force model: bad coefficient table entry");
}

std::vector<HarmonicCoefficient> default_coefficient_table(const PhysicalConstants& c) {
    return {{2, 0, -c.j2_moon, 0.0}, {2, 2, c.c22_moon, 0.0}};
}

std::vector<HarmonicCoefficient> load_coefficient_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient table: " + path);
    std::vector<HarmonicCoefficient> table;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        HarmonicCoefficient h;
        if (row >> h.degree >> h.order >> h.c >> h.s) table.push_back(h);
    }
    return table;
}

ForceModelConfig default_force_model(const PhysicalConstants& c) {
    ForceModelConfig fm;
    fm.constants = c;
    fm.coefficient_table = default_coefficient_table(c);
    fm.earth = default_earth_model(c);
    fm.sun = default_sun_model(c);
    return fm;
}

ForceModelConfig two_body_force_model(const PhysicalConstants& c) {
    ForceModelConfig fm;
    fm.constants = c;
    fm.earth_third_body = false;
    fm.sun_third_body = false;
    fm.srp_enabled = false;
    fm.body_rotation = false;
    return fm;
}

namespace {

// Cunningham V/W recursion over the table's (n, m) span. Positions are in
// the harmonics frame; coefficients are unnormalized.
Vec3 harmonic_acceleration(const Vec3& r, const ForceModelConfig& fm) {
    int n_max = 0;
    for (const auto& h : fm.coefficient_table)
        if (h.degree <= fm.harmonics_degree && h.order <= fm.harmonics_order)
            n_max = std::max(n_max, h.degree);
    if (n_max < 2) return {};

    const double mu = fm.constants.mu_moon;
    const double re = fm.constants.r_moon_mean_km;
    const double r2 = r.norm2();
    const double rho = re * re / r2;
    const double xf = re * r.x / r2, yf = re * r.y / r2, zf = re * r.z / r2;

    // V, W up to degree n_max + 1 (the acceleration of degree n uses n + 1).
    const int nv = n_max + 2;  // rows 0..n_max+1
    std::vector<double> v(static_cast<size_t>(nv) * nv, 0.0), w(static_cast<size_t>(nv) * nv, 0.0);
    auto at = [nv](int n, int m) { return static_cast<size_t>(n) * nv + m; };

    v[at(0, 0)] = re / std::sqrt(r2);
    w[at(0, 0)] = 0.0;
    for (int m = 1; m <= n_max + 1; ++m) {
        v[at(m, m)] = (2 * m - 1) * (xf * v[at(m - 1, m - 1)] - yf * w[at(m - 1, m - 1)]);
        w[at(m, m)] = (2 * m - 1) * (xf * w[at(m - 1, m - 1)] + yf * v[at(m - 1, m - 1)]);
    }
    for (int m = 0; m <= n_max + 1; ++m) {
        for (int n = m + 1; n <= n_max + 1; ++n) {
            double vn = (2 * n - 1) * zf * v[at(n - 1, m)];
            double wn = (2 * n - 1) * zf * w[at(n - 1, m)];
            if (n - 2 >= m) {
                vn -= (n + m - 1) * rho * v[at(n - 2, m)];
                wn -= (n + m - 1) * rho * w[at(n - 2, m)];
            }
            v[at(n, m)] = vn / (n - m);
            w[at(n, m)] = wn / (n - m);
        }
    }

    const double scale = mu / (re * re);
    Vec3 acc;
    for (const auto& h : fm.coefficient_table) {
        const int n = h.degree, m = h.order;
        if (n > fm.harmonics_degree || m > fm.harmonics_order) continue;
        if (m == 0) {
            acc.x += scale * (-h.c * v[at(n + 1, 1)]);
            acc.y += scale * (-h.c * w[at(n + 1, 1)]);
        } else {
            const double fac = 0.5 * static_cast<double>(n - m + 1) * (n - m + 2);
            acc.x += scale * 0.5 * (-h.c * v[at(n + 1, m + 1)] - h.s * w[at(n + 1, m + 1)]) +
                     scale * fac * (h.c * v[at(n + 1, m - 1)] + h.s * w[at(n + 1, m - 1)]);
            acc.y += scale * 0.5 * (-h.c * w[at(n + 1, m + 1)] + h.s * v[at(n + 1, m + 1)]) +
                     scale * fac * (-h.c * w[at(n + 1, m - 1)] + h.s * v[at(n + 1, m - 1)]);
        }
        acc.z += scale * static_cast<double>(n - m + 1) *
                 (-h.c * v[at(n + 1, m)] - h.s * w[at(n + 1, m)]);
    }
    return acc;
}

}  // namespace

Vec3 third_body_acceleration(const Vec3& sat_pos_km, const Vec3& perturber_pos_km, double mu) {
    const Vec3 d = perturber_pos_km - sat_pos_km;
    const double dn = d.norm(), pn = perturber_pos_km.norm();
    return d * (mu / (dn * dn * dn)) - perturber_pos_km * (mu / (pn * pn * pn));
}

Vec3 gravity_acceleration(const Vec3& position_km, Epoch epoch, const ForceModelConfig& fm) {
    const double rn = position_km.norm();
    const Vec3 central = position_km * (-fm.constants.mu_moon / (rn * rn * rn));

    if (fm.coefficient_table.empty() || fm.harmonics_degree < 2) return central;

    double theta = deg2rad(fm.body_rotation_theta0_deg);
    if (fm.body_rotation) theta += kTwoPi * epoch.sec / fm.constants.sidereal_month_s();
    const Vec3 r_body = rotate_z(position_km, -theta);
    return central + rotate_z(harmonic_acceleration(r_body, fm), theta);
}

Vec3 acceleration(const CartesianState& state, Epoch epoch, const ForceModelConfig& fm) {
    const Vec3& r = state.position_km;
    if (r.norm() <= fm.constants.r_moon_mean_km)
        throw ImpactError("subsurface state at t=" + std::to_string(epoch.sec) + " s");

    Vec3 acc = gravity_acceleration(r, epoch, fm);

    if (fm.earth_third_body)
        acc += third_body_acceleration(r, perturber_state(fm.earth, epoch).position_km,
                                       fm.earth.mu);
    Vec3 sun_pos;
    bool have_sun = false;
    if (fm.sun_third_body || fm.srp_enabled) {
        sun_pos = perturber_state(fm.sun, epoch).position_km;
        have_sun = true;
    }
    if (fm.sun_third_body) acc += third_body_acceleration(r, sun_pos, fm.sun.mu);

    if (fm.srp_enabled && have_sun) {
        // Cannon-ball, no eclipse model. 4.56e-6 N/m^2 at 1 AU.
        const Vec3 d = r - sun_pos;
        const double dn = d.norm();
        const double p0 = 4.56e-6;  // N/m^2
        const double au_km = kAstronomicalUnitKm;
        const double a_mps2 =
            fm.cr * p0 * (au_km / dn) * (au_km / dn) * fm.srp_area_m2 / fm.sat_mass_kg;
        acc += d * (a_mps2 * 1e-3 / dn);
    }
    return acc;
}

}  // namespace lgnss
