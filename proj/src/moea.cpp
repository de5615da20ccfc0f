#include "lgnss/moea.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lgnss {

const char* operator_name(VariationOperator op) {
    switch (op) {
        case VariationOperator::SBX: return "sbx";
        case VariationOperator::DE: return "de";
        case VariationOperator::PCX: return "pcx";
        case VariationOperator::UNDX: return "undx";
        case VariationOperator::SPX: return "spx";
        case VariationOperator::UM: return "um";
    }
    return "?";
}

int operator_arity(VariationOperator op) {
    switch (op) {
        case VariationOperator::SBX: return 2;
        case VariationOperator::DE: return 4;
        case VariationOperator::PCX: return 3;
        case VariationOperator::UNDX: return 3;
        case VariationOperator::SPX: return 3;
        case VariationOperator::UM: return 1;
    }
    return 1;
}

namespace {

double clip(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

// Orthonormal basis vectors perpendicular to dir (and to each other),
// built from rng gaussians by Gram-Schmidt.
std::vector<std::vector<double>> perpendicular_basis(const std::vector<double>& dir, int count,
                                                     std::mt19937_64& rng) {
    const size_t n = dir.size();
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> basis;
    double dn = 0.0;
    for (double v : dir) dn += v * v;
    dn = std::sqrt(dn);
    std::vector<std::vector<double>> frame;
    if (dn > 1e-12) {
        std::vector<double> d(n);
        for (size_t i = 0; i < n; ++i) d[i] = dir[i] / dn;
        frame.push_back(std::move(d));
    }
    for (int k = 0; k < count; ++k) {
        std::vector<double> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = gauss(rng);
        for (const auto& b : frame) {
            double dot = 0.0;
            for (size_t i = 0; i < n; ++i) dot += v[i] * b[i];
            for (size_t i = 0; i < n; ++i) v[i] -= dot * b[i];
        }
        double vn = 0.0;
        for (double c : v) vn += c * c;
        vn = std::sqrt(vn);
        if (vn > 1e-12)
            for (double& c : v) c /= vn;
        else
            std::fill(v.begin(), v.end(), 0.0);
        basis.push_back(v);
        frame.push_back(basis.back());
    }
    return basis;
}

std::vector<double> centroid(const std::vector<std::vector<double>>& parents) {
    std::vector<double> g(parents[0].size(), 0.0);
    for (const auto& p : parents)
        for (size_t i = 0; i < g.size(); ++i) g[i] += p[i];
    for (double& v : g) v /= static_cast<double>(parents.size());
    return g;
}

}  // namespace

std::vector<double> variate(VariationOperator op, const std::vector<std::vector<double>>& parents,
                            const std::vector<double>& lower, const std::vector<double>& upper,
                            const OperatorParams& params, std::mt19937_64& rng) {
    if (static_cast<int>(parents.size()) < operator_arity(op))
        throw std::invalid_argument("variate: not enough parents");
    const size_t n = lower.size();
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> child = parents[0];

    switch (op) {
        case VariationOperator::SBX: {
            const auto& a = parents[0];
            const auto& b = parents[1];
            for (size_t i = 0; i < n; ++i) {
                if (u01(rng) > params.sbx_var_prob || std::fabs(a[i] - b[i]) < 1e-14) {
                    child[i] = a[i];
                    continue;
                }
                const double u = u01(rng);
                const double e = 1.0 / (params.sbx_eta + 1.0);
                const double beta =
                    u <= 0.5 ? std::pow(2.0 * u, e) : std::pow(1.0 / (2.0 * (1.0 - u)), e);
                const double c1 = 0.5 * ((1.0 + beta) * a[i] + (1.0 - beta) * b[i]);
                const double c2 = 0.5 * ((1.0 - beta) * a[i] + (1.0 + beta) * b[i]);
                child[i] = u01(rng) < 0.5 ? c1 : c2;
            }
            break;
        }
        case VariationOperator::DE: {
            // Current-to-rand step anchored on the base parent: with zero
            // step weight the offspring equals the base exactly.
            const auto& base = parents[0];
            const auto& r1 = parents[1];
            const auto& r2 = parents[2];
            const auto& r3 = parents[3];
            for (size_t i = 0; i < n; ++i) {
                if (u01(rng) < params.de_crossover) {
                    child[i] = base[i] + params.de_step * (r1[i] - base[i]) +
                               params.de_step * (r2[i] - r3[i]);
                } else {
                    child[i] = base[i];
                }
            }
            break;
        }
        case VariationOperator::PCX: {
            const auto g = centroid(parents);
            std::vector<double> d(n);
            double dn = 0.0;
            for (size_t i = 0; i < n; ++i) {
                d[i] = parents[0][i] - g[i];
                dn += d[i] * d[i];
            }
            dn = std::sqrt(dn);
            // Mean perpendicular distance of the other parents to the d line.
            double dist_sum = 0.0;
            for (size_t p = 1; p < parents.size(); ++p) {
                double dot = 0.0, norm2 = 0.0;
                for (size_t i = 0; i < n; ++i) {
                    const double v = parents[p][i] - parents[0][i];
                    norm2 += v * v;
                    if (dn > 1e-12) dot += v * d[i] / dn;
                }
                dist_sum += std::sqrt(std::max(0.0, norm2 - dot * dot));
            }
            const double d_bar = dist_sum / static_cast<double>(parents.size() - 1);
            const double w_zeta = gauss(rng) * params.pcx_sigma_zeta;
            const auto basis = perpendicular_basis(d, static_cast<int>(n) - 1, rng);
            for (size_t i = 0; i < n; ++i) child[i] = parents[0][i] + w_zeta * d[i];
            for (const auto& e : basis) {
                const double w = gauss(rng) * params.pcx_sigma_eta * d_bar;
                for (size_t i = 0; i < n; ++i) child[i] += w * e[i];
            }
            break;
        }
        case VariationOperator::UNDX: {
            // Primary parents 0..1 define the search line; parent 2 sets the
            // perpendicular scale.
            std::vector<std::vector<double>> primary{parents[0], parents[1]};
            const auto g = centroid(primary);
            std::vector<double> d(n);
            double dn = 0.0;
            for (size_t i = 0; i < n; ++i) {
                d[i] = parents[1][i] - parents[0][i];
                dn += d[i] * d[i];
            }
            dn = std::sqrt(dn);
            double dot = 0.0, norm2 = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const double v = parents[2][i] - g[i];
                norm2 += v * v;
                if (dn > 1e-12) dot += v * d[i] / dn;
            }
            const double d_perp = std::sqrt(std::max(0.0, norm2 - dot * dot));
            const double w_zeta = gauss(rng) * params.undx_sigma_zeta;
            const auto basis = perpendicular_basis(d, static_cast<int>(n) - 1, rng);
            for (size_t i = 0; i < n; ++i) child[i] = g[i] + w_zeta * d[i];
            const double sigma_eta = params.undx_sigma_eta / std::sqrt(static_cast<double>(n));
            for (const auto& e : basis) {
                const double w = gauss(rng) * sigma_eta * d_perp;
                for (size_t i = 0; i < n; ++i) child[i] += w * e[i];
            }
            break;
        }
        case VariationOperator::SPX: {
            const size_t m = parents.size();
            const auto g = centroid(parents);
            const double eps = params.spx_epsilon > 0.0
                                   ? params.spx_epsilon
                                   : std::sqrt(static_cast<double>(m) + 1.0);
            std::vector<std::vector<double>> y(m, std::vector<double>(n));
            for (size_t p = 0; p < m; ++p)
                for (size_t i = 0; i < n; ++i) y[p][i] = g[i] + eps * (parents[p][i] - g[i]);
            std::vector<double> c(n, 0.0);
            for (size_t p = 1; p < m; ++p) {
                const double r = std::pow(u01(rng), 1.0 / static_cast<double>(p));
                for (size_t i = 0; i < n; ++i)
                    c[i] = r * (y[p - 1][i] - y[p][i] + c[i]);
            }
            for (size_t i = 0; i < n; ++i) child[i] = y[m - 1][i] + c[i];
            break;
        }
        case VariationOperator::UM: {
            for (size_t i = 0; i < n; ++i)
                child[i] = lower[i] + u01(rng) * (upper[i] - lower[i]);
            break;
        }
    }

    for (size_t i = 0; i < n; ++i) child[i] = clip(child[i], lower[i], upper[i]);
    return child;
}

void polynomial_mutation(std::vector<double>& x, const std::vector<double>& lower,
                         const std::vector<double>& upper, const OperatorParams& params,
                         std::mt19937_64& rng) {
    if (params.pm_rate <= 0.0) return;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (u01(rng) >= params.pm_rate) continue;
        const double range = upper[i] - lower[i];
        if (range <= 0.0) continue;
        const double d1 = (x[i] - lower[i]) / range;
        const double d2 = (upper[i] - x[i]) / range;
        const double u = u01(rng);
        const double mpow = params.pm_eta + 1.0;
        double dq;
        if (u < 0.5) {
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, mpow);
            dq = std::pow(val, 1.0 / mpow) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, mpow);
            dq = 1.0 - std::pow(val, 1.0 / mpow);
        }
        x[i] = clip(x[i] + dq * range, lower[i], upper[i]);
    }
}

std::vector<long long> epsilon_box(const ObjectivePoint& objectives,
                                   const std::vector<double>& epsilons) {
    std::vector<long long> box(objectives.size());
    for (size_t i = 0; i < objectives.size(); ++i)
        box[i] = static_cast<long long>(std::floor(objectives[i] / epsilons[i]));
    return box;
}

namespace {

bool box_dominates(const std::vector<long long>& a, const std::vector<long long>& b) {
    bool strict = false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

double corner_distance_sq(const ObjectivePoint& f, const std::vector<long long>& box,
                          const std::vector<double>& eps) {
    double d = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
        const double off = f[i] / eps[i] - static_cast<double>(box[i]);
        d += off * off;
    }
    return d;
}

}  // namespace

InsertResult EpsilonArchive::insert(std::vector<double> x, ObjectivePoint f, int producer) {
    const auto box = epsilon_box(f, epsilons_);

    // Same-box conflict: at most one member per box by invariant.
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].box != box) continue;
        const ArchiveEntry& m = entries_[i];
        if (dominates(m.f, f) || m.f == f) return {InsertOutcome::Rejected, false};
        if (!dominates(f, m.f)) {
            // Mutually non-dominated within the box: keep the entry closer
            // to the box's ideal corner.
            if (corner_distance_sq(f, box, epsilons_) >= corner_distance_sq(m.f, box, epsilons_))
                return {InsertOutcome::Rejected, false};
        }
        entries_[i] = {std::move(x), std::move(f), box, producer};
        return {InsertOutcome::Replaced, false};
    }

    for (const ArchiveEntry& m : entries_)
        if (box_dominates(m.box, box)) return {InsertOutcome::Rejected, false};

    std::erase_if(entries_, [&](const ArchiveEntry& m) { return box_dominates(box, m.box); });
    entries_.push_back({std::move(x), std::move(f), box, producer});
    return {InsertOutcome::Accepted, true};
}

std::vector<long> EpsilonArchive::operator_credits() const {
    std::vector<long> credits(kOperatorCount, 0);
    for (const ArchiveEntry& e : entries_)
        if (e.producer >= 0 && e.producer < kOperatorCount) ++credits[e.producer];
    return credits;
}

bool EpsilonArchive::invariants_hold() const {
    for (size_t i = 0; i < entries_.size(); ++i) {
        for (size_t j = i + 1; j < entries_.size(); ++j) {
            if (entries_[i].box == entries_[j].box) return false;
            if (box_dominates(entries_[i].box, entries_[j].box)) return false;
            if (box_dominates(entries_[j].box, entries_[i].box)) return false;
        }
    }
    return true;
}

std::vector<double> OperatorStats::probabilities() const {
    std::vector<double> p(kOperatorCount);
    double total = 0.0;
    for (int i = 0; i < kOperatorCount; ++i) total += static_cast<double>(credits[i]) + zeta;
    for (int i = 0; i < kOperatorCount; ++i)
        p[i] = (static_cast<double>(credits[i]) + zeta) / total;
    return p;
}

VariationOperator select_operator(const OperatorStats& stats, std::mt19937_64& rng) {
    const auto p = stats.probabilities();
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double u = u01(rng);
    for (int i = 0; i < kOperatorCount; ++i) {
        u -= p[i];
        if (u <= 0.0) return static_cast<VariationOperator>(i);
    }
    return VariationOperator::UM;
}

std::vector<std::vector<double>> restart_fill(const EpsilonArchive& archive, size_t target,
                                              const std::vector<double>& lower,
                                              const std::vector<double>& upper,
                                              const OperatorParams& params,
                                              std::mt19937_64& rng) {
    std::vector<std::vector<double>> out;
    out.reserve(target);
    for (const ArchiveEntry& e : archive.entries())
        if (out.size() < target) out.push_back(e.x);

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (archive.size() == 0) {
        while (out.size() < target) {
            std::vector<double> x(lower.size());
            for (size_t i = 0; i < x.size(); ++i)
                x[i] = lower[i] + u01(rng) * (upper[i] - lower[i]);
            out.push_back(std::move(x));
        }
        return out;
    }
    std::uniform_int_distribution<size_t> pick(0, archive.size() - 1);
    while (out.size() < target) {
        const ArchiveEntry& seed_entry = archive.entries()[pick(rng)];
        out.push_back(
            variate(VariationOperator::UM, {seed_entry.x}, lower, upper, params, rng));
    }
    return out;
}

int rescaled_tournament_size(double fraction, size_t population_size) {
    return std::max(2, static_cast<int>(std::lround(fraction *
                                                    static_cast<double>(population_size))));
}

namespace {

struct Engine {
    const Problem& problem;
    const MoeaConfig& cfg;
    std::mt19937_64 rng;
    std::vector<Individual> population;
    EpsilonArchive archive;
    long evaluations = 0;
    int restarts = 0;
    int stagnation = 0;
    int tournament_size = 2;
    std::vector<HistoryRow> history;

    Engine(const Problem& p, const MoeaConfig& c)
        : problem(p), cfg(c), rng(c.seed), archive(c.epsilons) {}

    ObjectivePoint evaluate(const std::vector<double>& x) {
        ++evaluations;
        try {
            ObjectivePoint f = problem.evaluate(x);
            for (double v : f)
                if (!std::isfinite(v)) throw std::runtime_error("non-finite objective");
            return f;
        } catch (...) {
            if (cfg.penalty_objectives.empty()) throw;
            return cfg.penalty_objectives;
        }
    }

    void after_evaluation(bool progress) {
        stagnation = progress ? 0 : stagnation + 1;
        if (cfg.history_stride > 0 && evaluations % cfg.history_stride == 0) record_history();
    }

    void record_history() {
        std::vector<ObjectivePoint> pts;
        pts.reserve(archive.size());
        for (const auto& e : archive.entries()) pts.push_back(e.f);
        HistoryRow row;
        row.evaluations = evaluations;
        row.hypervolume = cfg.hv_bounds.lower.empty()
                              ? 0.0
                              : hypervolume(pts, cfg.hv_bounds, cfg.hv_reference);
        row.archive_size = archive.size();
        row.restarts = restarts;
        history.push_back(row);
    }

    std::vector<double> random_vector() {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        std::vector<double> x(static_cast<size_t>(problem.n_vars));
        for (int i = 0; i < problem.n_vars; ++i)
            x[static_cast<size_t>(i)] =
                problem.lower[static_cast<size_t>(i)] +
                u01(rng) * (problem.upper[static_cast<size_t>(i)] -
                            problem.lower[static_cast<size_t>(i)]);
        return x;
    }

    const Individual& tournament() {
        std::uniform_int_distribution<size_t> pick(0, population.size() - 1);
        size_t winner = pick(rng);
        for (int k = 1; k < tournament_size; ++k) {
            const size_t challenger = pick(rng);
            if (dominates(population[challenger].f, population[winner].f)) winner = challenger;
        }
        return population[winner];
    }

    void initialize() {
        tournament_size = rescaled_tournament_size(
            cfg.tournament_fraction, static_cast<size_t>(cfg.initial_population));
        population.clear();
        population.reserve(static_cast<size_t>(cfg.initial_population));
        for (int i = 0; i < cfg.initial_population && evaluations < cfg.max_evaluations; ++i) {
            Individual ind;
            ind.x = random_vector();
            ind.f = evaluate(ind.x);
            const auto res = archive.insert(ind.x, ind.f, -1);
            population.push_back(std::move(ind));
            after_evaluation(res.epsilon_progress);
        }
    }

    void restart() {
        ++restarts;
        const size_t target = std::max<size_t>(
            static_cast<size_t>(cfg.initial_population),
            static_cast<size_t>(std::lround(cfg.gamma * static_cast<double>(archive.size()))));
        const size_t n_archive = archive.size();
        const auto fill =
            restart_fill(archive, target, problem.lower, problem.upper, cfg.ops, rng);
        population.clear();
        population.reserve(target);
        for (size_t i = 0; i < fill.size(); ++i) {
            if (i < n_archive) {  // archive members carry their objectives
                population.push_back({fill[i], archive.entries()[i].f});
                continue;
            }
            if (evaluations >= cfg.max_evaluations) break;
            Individual ind;
            ind.f = evaluate(fill[i]);
            ind.x = fill[i];
            const auto res =
                archive.insert(ind.x, ind.f, static_cast<int>(VariationOperator::UM));
            population.push_back(std::move(ind));
            after_evaluation(res.epsilon_progress);
        }
        stagnation = 0;
        tournament_size = rescaled_tournament_size(cfg.tournament_fraction, target);
    }

    void iterate() {
        OperatorStats stats;
        stats.credits = archive.operator_credits();
        stats.zeta = cfg.zeta;
        const VariationOperator op = select_operator(stats, rng);
        const int arity = operator_arity(op);

        std::vector<std::vector<double>> parents;
        parents.reserve(static_cast<size_t>(arity));
        if (op == VariationOperator::UM) {
            // Mutation-only: act on an archive member.
            std::uniform_int_distribution<size_t> pick(0, archive.size() - 1);
            parents.push_back(archive.entries()[pick(rng)].x);
        } else {
            parents.push_back(tournament().x);
            for (int k = 1; k + 1 < arity; ++k) parents.push_back(tournament().x);
            std::uniform_int_distribution<size_t> pick(0, archive.size() - 1);
            parents.push_back(archive.entries()[pick(rng)].x);
        }

        std::vector<double> child = variate(op, parents, problem.lower, problem.upper, cfg.ops,
                                            rng);
        if (op != VariationOperator::UM)
            polynomial_mutation(child, problem.lower, problem.upper, cfg.ops, rng);

        const ObjectivePoint f = evaluate(child);
        const auto res = archive.insert(child, f, static_cast<int>(op));

        std::uniform_int_distribution<size_t> pick(0, population.size() - 1);
        const size_t victim = pick(rng);
        if (!dominates(population[victim].f, f)) population[victim] = {std::move(child), f};

        after_evaluation(res.epsilon_progress);
        if (stagnation >= cfg.stagnation_window && evaluations < cfg.max_evaluations) restart();
    }

    MoeaState state() const {
        MoeaState s;
        std::ostringstream os;
        os << rng;
        s.rng_state = os.str();
        s.population = population;
        s.archive = archive.entries();
        s.evaluations = evaluations;
        s.restarts = restarts;
        s.stagnation = stagnation;
        s.tournament_size = tournament_size;
        s.history = history;
        return s;
    }

    void load(const MoeaState& s) {
        std::istringstream is(s.rng_state);
        is >> rng;
        population = s.population;
        archive.entries() = s.archive;
        for (ArchiveEntry& e : archive.entries()) e.box = epsilon_box(e.f, cfg.epsilons);
        evaluations = s.evaluations;
        restarts = s.restarts;
        stagnation = s.stagnation;
        tournament_size = s.tournament_size;
        history = s.history;
    }
};

}  // namespace

RunResult run(const Problem& problem, const MoeaConfig& config,
              const std::optional<MoeaState>& resume, long checkpoint_every,
              const CheckpointHook& on_checkpoint) {
    if (config.epsilons.size() != static_cast<size_t>(problem.n_objs))
        throw std::invalid_argument("moea: epsilon count must match objective count");
    if (config.initial_population < 1)
        throw std::invalid_argument("moea: initial population must be at least 1");
    if (config.max_evaluations < config.initial_population)
        throw std::invalid_argument("moea: evaluation budget below the initial population size");

    Engine engine(problem, config);

    long last_checkpoint = resume ? resume->evaluations : 0;
    // Checkpoints are taken at steady-state boundaries only, so a resumed
    // run replays exactly what an uninterrupted one would do.
    auto maybe_checkpoint = [&] {
        if (checkpoint_every > 0 && on_checkpoint &&
            engine.evaluations - last_checkpoint >= checkpoint_every) {
            on_checkpoint(engine.state());
            last_checkpoint = engine.evaluations;
        }
    };

    if (resume)
        engine.load(*resume);
    else
        engine.initialize();
    maybe_checkpoint();

    while (engine.evaluations < config.max_evaluations) {
        engine.iterate();
        maybe_checkpoint();
    }

    if (config.history_stride > 0 &&
        (engine.history.empty() || engine.history.back().evaluations != engine.evaluations))
        engine.record_history();

    RunResult result{EpsilonArchive(config.epsilons), engine.population, engine.history,
                     engine.archive.operator_credits(), engine.evaluations, engine.restarts,
                     engine.state()};
    result.archive.entries() = engine.archive.entries();
    return result;
}

}  // namespace lgnss
