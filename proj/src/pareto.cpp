#include "lgnss/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace lgnss {

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
    bool strictly = false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly = true;
    }
    return strictly;
}

std::vector<int> pareto_rank(const std::vector<ObjectivePoint>& points) {
    const size_t n = points.size();
    std::vector<int> rank(n, 0);
    size_t ranked = 0;
    int level = 0;
    while (ranked < n) {
        ++level;
        std::vector<size_t> front;
        for (size_t i = 0; i < n; ++i) {
            if (rank[i] != 0) continue;
            bool dominated = false;
            for (size_t j = 0; j < n && !dominated; ++j)
                if (j != i && rank[j] == 0 && dominates(points[j], points[i])) dominated = true;
            if (!dominated) front.push_back(i);
        }
        for (size_t i : front) rank[i] = level;
        ranked += front.size();
    }
    return rank;
}

std::vector<size_t> non_dominated_indices(const std::vector<ObjectivePoint>& points) {
    std::vector<size_t> out;
    for (size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < points.size() && !dominated; ++j)
            if (j != i && dominates(points[j], points[i])) dominated = true;
        if (!dominated) out.push_back(i);
    }
    return out;
}

namespace {

// Staircase area dominated in 2-D (minimization) against (rx, ry).
double staircase_area(std::vector<std::pair<double, double>> pts, double rx, double ry) {
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double y_best = ry;
    // Sweep x ascending; the height over [x_k, x_{k+1}) comes from the best
    // y among points at or left of x_k.
    for (size_t k = 0; k < pts.size(); ++k) {
        const double x_right = (k + 1 < pts.size()) ? pts[k + 1].first : rx;
        y_best = std::min(y_best, pts[k].second);
        if (x_right > pts[k].first) area += (x_right - pts[k].first) * (ry - y_best);
    }
    return area;
}

// 3-D sweep along z with an explicitly maintained 2-D staircase.
double hv3(std::vector<ObjectivePoint> pts, const ObjectivePoint& ref) {
    std::sort(pts.begin(), pts.end(),
              [](const ObjectivePoint& a, const ObjectivePoint& b) { return a[2] < b[2]; });
    std::map<double, double> stairs;  // x -> y, y strictly decreasing in x
    double volume = 0.0;
    double area = 0.0;

    auto insert_point = [&](double x, double y) {
        auto it = stairs.upper_bound(x);
        if (it != stairs.begin()) {
            auto prev = std::prev(it);
            if (prev->second <= y) return;  // dominated in 2-D
        }
        while (it != stairs.end() && it->second >= y) it = stairs.erase(it);
        stairs[x] = y;
        // Recompute the dominated area from the staircase.
        area = 0.0;
        for (auto cur = stairs.begin(); cur != stairs.end(); ++cur) {
            auto nxt = std::next(cur);
            const double x_right = (nxt == stairs.end()) ? ref[0] : nxt->first;
            area += (x_right - cur->first) * (ref[1] - cur->second);
        }
    };

    for (size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) volume += area * (pts[i][2] - pts[i - 1][2]);
        insert_point(pts[i][0], pts[i][1]);
    }
    if (!pts.empty()) volume += area * (ref[2] - pts.back()[2]);
    return volume;
}

double hv_recursive(std::vector<ObjectivePoint> pts, const ObjectivePoint& ref) {
    const size_t d = ref.size();
    if (pts.empty()) return 0.0;
    if (d == 1) {
        double best = ref[0];
        for (const auto& p : pts) best = std::min(best, p[0]);
        return ref[0] - best;
    }
    if (d == 2) {
        std::vector<std::pair<double, double>> flat;
        flat.reserve(pts.size());
        for (const auto& p : pts) flat.emplace_back(p[0], p[1]);
        return staircase_area(std::move(flat), ref[0], ref[1]);
    }
    if (d == 3) return hv3(std::move(pts), ref);

    // Slice on the last coordinate; each slab integrates the (d-1)-volume
    // of the points already passed.
    std::sort(pts.begin(), pts.end(), [d](const ObjectivePoint& a, const ObjectivePoint& b) {
        return a[d - 1] < b[d - 1];
    });
    const ObjectivePoint sub_ref(ref.begin(), ref.end() - 1);
    std::vector<ObjectivePoint> proj;
    proj.reserve(pts.size());
    double volume = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            const double dz = pts[i][d - 1] - pts[i - 1][d - 1];
            if (dz > 0.0) {
                std::vector<ObjectivePoint> nd;
                for (size_t k : non_dominated_indices(proj)) nd.push_back(proj[k]);
                volume += dz * hv_recursive(std::move(nd), sub_ref);
            }
        }
        proj.emplace_back(pts[i].begin(), pts[i].end() - 1);
    }
    {
        const double dz = ref[d - 1] - pts.back()[d - 1];
        std::vector<ObjectivePoint> nd;
        for (size_t k : non_dominated_indices(proj)) nd.push_back(proj[k]);
        volume += dz * hv_recursive(std::move(nd), sub_ref);
    }
    return volume;
}

}  // namespace

double hypervolume_exact(std::vector<ObjectivePoint> points, const ObjectivePoint& reference) {
    std::vector<ObjectivePoint> kept;
    kept.reserve(points.size());
    for (auto& p : points) {
        if (p.size() != reference.size())
            throw std::invalid_argument("hypervolume: dimension mismatch");
        bool inside = true;
        for (size_t i = 0; i < p.size(); ++i)
            if (!(p[i] < reference[i])) inside = false;
        if (inside) kept.push_back(std::move(p));
    }
    std::vector<ObjectivePoint> front;
    for (size_t k : non_dominated_indices(kept)) front.push_back(kept[k]);
    return hv_recursive(std::move(front), reference);
}

double hypervolume(const std::vector<ObjectivePoint>& points, const NormalizationBounds& bounds,
                   double reference_value, std::vector<std::string>* warnings) {
    const size_t d = bounds.lower.size();
    if (bounds.upper.size() != d)
        throw std::invalid_argument("hypervolume: bounds dimension mismatch");
    std::vector<ObjectivePoint> normalized;
    normalized.reserve(points.size());
    for (size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        if (p.size() != d) throw std::invalid_argument("hypervolume: point dimension mismatch");
        ObjectivePoint q(d);
        bool inside = true;
        for (size_t i = 0; i < d; ++i) {
            q[i] = (p[i] - bounds.lower[i]) / (bounds.upper[i] - bounds.lower[i]);
            if (!(q[i] < reference_value)) inside = false;
        }
        if (!inside) {
            if (warnings)
                warnings->push_back("point " + std::to_string(k) +
                                    " does not dominate the reference; discarded");
            continue;
        }
        normalized.push_back(std::move(q));
    }
    return hypervolume_exact(std::move(normalized),
                             ObjectivePoint(d, reference_value));
}

MonteCarloHv hypervolume_monte_carlo(const std::vector<ObjectivePoint>& points,
                                     const ObjectivePoint& reference, long samples,
                                     std::uint64_t seed) {
    const size_t d = reference.size();
    ObjectivePoint lo(reference);
    for (const auto& p : points)
        for (size_t i = 0; i < d; ++i) lo[i] = std::min(lo[i], p[i]);
    double box = 1.0;
    for (size_t i = 0; i < d; ++i) box *= reference[i] - lo[i];
    if (points.empty() || box <= 0.0) return {0.0, 0.0};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    long hits = 0;
    std::vector<double> x(d);
    for (long s = 0; s < samples; ++s) {
        for (size_t i = 0; i < d; ++i) x[i] = lo[i] + u01(rng) * (reference[i] - lo[i]);
        for (const auto& p : points) {
            bool dom = true;
            for (size_t i = 0; i < d; ++i)
                if (p[i] > x[i]) {
                    dom = false;
                    break;
                }
            if (dom) {
                ++hits;
                break;
            }
        }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    MonteCarloHv out;
    out.volume = frac * box;
    out.sigma = box * std::sqrt(std::max(frac * (1.0 - frac), 0.0) /
                                static_cast<double>(samples));
    return out;
}

}  // namespace lgnss
