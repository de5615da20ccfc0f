#pragma once

// Auto-adaptive epsilon-dominance evolutionary search: epsilon archive
// with epsilon-progress tracking, six variation operators with
// archive-credit selection, and archive-proportional restarts. The engine
// is problem-agnostic (objectives in minimization sense).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lgnss/pareto.hpp"

namespace lgnss {

struct Problem {
    int n_vars = 0;
    int n_objs = 0;
    std::vector<double> lower;  // per-variable bounds
    std::vector<double> upper;
    std::function<std::vector<double>(const std::vector<double>&)> evaluate;
};

enum class VariationOperator : int { SBX = 0, DE = 1, PCX = 2, UNDX = 3, SPX = 4, UM = 5 };
constexpr int kOperatorCount = 6;
const char* operator_name(VariationOperator op);
int operator_arity(VariationOperator op);

struct OperatorParams {
    double sbx_eta = 15.0;
    double sbx_var_prob = 0.5;
    double pm_eta = 20.0;
    double pm_rate = 1.0 / 6.0;  // per gene, applied after crossover
    double de_step = 0.5;
    double de_crossover = 0.1;
    double pcx_sigma_eta = 0.1;
    double pcx_sigma_zeta = 0.1;
    double undx_sigma_zeta = 0.5;
    double undx_sigma_eta = 0.35;  // divided by sqrt(n_vars)
    double spx_epsilon = 0.0;      // 0: sqrt(parents + 1)
};

// Offspring of one operator application, clipped to bounds. Polynomial
// mutation is applied by the engine afterwards, not here.
std::vector<double> variate(VariationOperator op, const std::vector<std::vector<double>>& parents,
                            const std::vector<double>& lower, const std::vector<double>& upper,
                            const OperatorParams& params, std::mt19937_64& rng);

void polynomial_mutation(std::vector<double>& x, const std::vector<double>& lower,
                         const std::vector<double>& upper, const OperatorParams& params,
                         std::mt19937_64& rng);

std::vector<long long> epsilon_box(const ObjectivePoint& objectives,
                                   const std::vector<double>& epsilons);

struct ArchiveEntry {
    std::vector<double> x;
    ObjectivePoint f;
    std::vector<long long> box;
    int producer = -1;  // VariationOperator index; -1 for injected/initial
};

enum class InsertOutcome { Accepted, Rejected, Replaced };

struct InsertResult {
    InsertOutcome outcome = InsertOutcome::Rejected;
    bool epsilon_progress = false;
};

class EpsilonArchive {
  public:
    explicit EpsilonArchive(std::vector<double> epsilons) : epsilons_(std::move(epsilons)) {}

    InsertResult insert(std::vector<double> x, ObjectivePoint f, int producer);
    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    std::vector<ArchiveEntry>& entries() { return entries_; }
    const std::vector<double>& epsilons() const { return epsilons_; }
    size_t size() const { return entries_.size(); }

    // Per-operator archive membership counts (producers >= 0 only).
    std::vector<long> operator_credits() const;
    // Archive invariants: unique boxes, mutual epsilon-non-dominance.
    bool invariants_hold() const;

  private:
    std::vector<double> epsilons_;
    std::vector<ArchiveEntry> entries_;
};

struct OperatorStats {
    std::vector<long> credits = std::vector<long>(kOperatorCount, 0);
    double zeta = 1.0;

    std::vector<double> probabilities() const;
};

VariationOperator select_operator(const OperatorStats& stats, std::mt19937_64& rng);

// Decision vectors of a restart-refilled population: every archive member,
// then uniform-mutation seeds drawn from random archive members up to
// `target`. Evaluating them is the engine's job.
std::vector<std::vector<double>> restart_fill(const EpsilonArchive& archive, size_t target,
                                              const std::vector<double>& lower,
                                              const std::vector<double>& upper,
                                              const OperatorParams& params,
                                              std::mt19937_64& rng);

// Tournament size proportional to the population size, floored at 2.
int rescaled_tournament_size(double fraction, size_t population_size);

struct MoeaConfig {
    std::vector<double> epsilons;
    long max_evaluations = 0;
    int initial_population = 100;
    double gamma = 4.0;            // restart population multiplier
    double zeta = 1.0;             // operator-selection smoothing
    int stagnation_window = 100;   // evaluations without epsilon-progress
    double tournament_fraction = 0.02;
    int history_stride = 50;
    std::uint64_t seed = 0;
    OperatorParams ops;
    NormalizationBounds hv_bounds;  // for the history hypervolume
    double hv_reference = 1.01;
    // Substituted when the evaluator throws; empty -> rethrow.
    ObjectivePoint penalty_objectives;
};

struct Individual {
    std::vector<double> x;
    ObjectivePoint f;
};

struct HistoryRow {
    long evaluations = 0;
    double hypervolume = 0.0;
    size_t archive_size = 0;
    int restarts = 0;
};

struct MoeaState {
    std::string rng_state;
    std::vector<Individual> population;
    std::vector<ArchiveEntry> archive;
    long evaluations = 0;
    int restarts = 0;
    int stagnation = 0;
    int tournament_size = 2;
    std::vector<HistoryRow> history;
};

struct RunResult {
    EpsilonArchive archive;
    std::vector<Individual> population;
    std::vector<HistoryRow> history;
    std::vector<long> operator_credits;
    long evaluations = 0;
    int restarts = 0;
    MoeaState final_state;
};

using CheckpointHook = std::function<void(const MoeaState&)>;

// Deterministic for a fixed (config, seed). `resume` continues a run from
// a checkpointed state; `checkpoint_every` of 0 disables the hook.
RunResult run(const Problem& problem, const MoeaConfig& config,
              const std::optional<MoeaState>& resume = std::nullopt,
              long checkpoint_every = 0, const CheckpointHook& on_checkpoint = {});

}  // namespace lgnss
