#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ilsvm/dataset.hpp"
#include "ilsvm/evaluator.hpp"
#include "ilsvm/search_space.hpp"
#include "ilsvm/svm.hpp"

namespace ilsvm {

struct TunerConfig {
    int k = 5;
    /// Iterations after the initial grid; 0 reduces to plain grid search.
    int max_iterations = 20;
    /// Consecutive rejections before stopping; nullopt = no stagnation stop.
    std::optional<int> patience = 5;
    std::uint64_t seed = 42;
    SolverConfig solver{};
    bool scale_features = false;
    /// Concurrent candidate evaluations per grid; 0 = hardware concurrency.
    /// Results do not depend on it.
    unsigned threads = 1;

    void validate() const;
};

struct IterationRecord {
    int index = 0;
    ParamRange range_gamma_used;
    ParamRange range_c_used;
    Evaluation best_candidate;
    bool accepted = false;
    /// Candidates of this grid that were not already cached.
    int new_evaluations = 0;
    /// Candidates excluded because the solver did not converge for them.
    int failed_candidates = 0;

    bool operator==(const IterationRecord&) const = default;
};

struct TuneResult {
    Evaluation best;
    Evaluation initial;
    std::vector<IterationRecord> iterations;
    std::uint64_t total_evaluations = 0;
    double wall_time_seconds = 0.0;
};

struct GridOutcome {
    Evaluation winner;
    /// Candidates whose training raised ConvergenceError, in canonical order.
    std::vector<HyperParams> failed;
};

/// Evaluates the 25 candidates of the two ranges and returns the most
/// accurate; ties go to the earliest candidate in canonical order.
/// Candidates the solver cannot train within its budget are left out of the
/// comparison; if all 25 fail the first failure is rethrown.
GridOutcome grid_search(const Dataset& d, const FoldAssignment& folds, const ParamRange& range_gamma,
                        const ParamRange& range_c, const SolverConfig& cfg, EvalCache& cache,
                        unsigned threads = 1);

/// Winner of grid_search.
Evaluation grid_search_step(const Dataset& d, const FoldAssignment& folds, const ParamRange& range_gamma,
                            const ParamRange& range_c, const SolverConfig& cfg, EvalCache& cache,
                            unsigned threads = 1);

/// Strict improvement.
inline bool accept(double candidate_acc, double best_acc) { return candidate_acc > best_acc; }

using IterationCallback = std::function<void(const IterationRecord&)>;

/// Iterated local search over (C, gamma) with grid search as the local
/// search. Starts from the powers-of-ten grid, then repeats: grid search on
/// the current ranges; on strict improvement recenter both ranges on the
/// winner, otherwise perturb them. Stops after `max_iterations` or
/// `patience` consecutive rejections. `cache` may be supplied to inspect
/// every evaluation afterwards.
TuneResult ils_tune(const Dataset& d, const TunerConfig& cfg, EvalCache& cache,
                    const IterationCallback& on_iteration = {});
TuneResult ils_tune(const Dataset& d, const TunerConfig& cfg, const IterationCallback& on_iteration = {});

/// One grid search over the initial powers-of-ten ranges with the same
/// folds as ils_tune.
Evaluation baseline_grid(const Dataset& d, const TunerConfig& cfg, EvalCache& cache);
Evaluation baseline_grid(const Dataset& d, const TunerConfig& cfg);

}  // namespace ilsvm
