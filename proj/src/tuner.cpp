#include "ilsvm/tuner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ilsvm/errors.hpp"

namespace ilsvm {

void TunerConfig::validate() const {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
    if (patience && *patience < 1) throw std::invalid_argument("patience must be >= 1");
    solver.validate();
}

namespace {

unsigned effective_threads(unsigned requested) {
    if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
    return requested;
}

const Dataset& prepared(const Dataset& d, const TunerConfig& cfg, std::optional<Dataset>& storage) {
    if (!cfg.scale_features) return d;
    storage.emplace(standardize(d).data);
    return *storage;
}

}  // namespace

GridOutcome grid_search(const Dataset& d, const FoldAssignment& folds, const ParamRange& range_gamma,
                        const ParamRange& range_c, const SolverConfig& cfg, EvalCache& cache,
                        unsigned threads) {
    const auto candidates = cartesian_candidates(range_gamma, range_c);
    std::vector<std::optional<Evaluation>> results(candidates.size());
    std::vector<std::exception_ptr> errors(candidates.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next.fetch_add(1); i < candidates.size(); i = next.fetch_add(1)) {
            try {
                results[i] = cv_accuracy(d, folds, candidates[i], cfg, cache);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const auto n_threads = std::min<std::size_t>(effective_threads(threads), candidates.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    GridOutcome out;
    std::exception_ptr first_failure;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const ConvergenceError&) {
            out.failed.push_back(candidates[i]);
            if (!first_failure) first_failure = errors[i];
        }
    }
    if (out.failed.size() == candidates.size()) std::rethrow_exception(first_failure);

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < results.size(); ++i)
        if (results[i] && (!best || results[i]->cv_accuracy > results[*best]->cv_accuracy)) best = i;
    out.winner = *results[*best];
    return out;
}

Evaluation grid_search_step(const Dataset& d, const FoldAssignment& folds, const ParamRange& range_gamma,
                            const ParamRange& range_c, const SolverConfig& cfg, EvalCache& cache,
                            unsigned threads) {
    return grid_search(d, folds, range_gamma, range_c, cfg, cache, threads).winner;
}

TuneResult ils_tune(const Dataset& data, const TunerConfig& cfg, EvalCache& cache,
                    const IterationCallback& on_iteration) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    std::optional<Dataset> scaled;
    const Dataset& d = prepared(data, cfg, scaled);

    const auto folds = kfold_split(d, cfg.k, cfg.seed);
    const auto computed_before = cache.computed();

    TuneResult result;
    const auto init = initial_ranges();
    result.initial = grid_search_step(d, folds, init.gamma, init.c, cfg.solver, cache, cfg.threads);
    result.best = result.initial;

    SearchState state{ranges_around(result.best.params.gamma), ranges_around(result.best.params.c),
                      Rng(cfg.seed, kSearchStream)};
    int rejections = 0;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        IterationRecord rec;
        rec.index = it;
        rec.range_gamma_used = state.range_gamma;
        rec.range_c_used = state.range_c;

        const auto before = cache.computed();
        auto step = grid_search(d, folds, state.range_gamma, state.range_c, cfg.solver, cache, cfg.threads);
        rec.best_candidate = std::move(step.winner);
        rec.failed_candidates = static_cast<int>(step.failed.size());
        rec.new_evaluations = static_cast<int>(cache.computed() - before);
        rec.accepted = accept(rec.best_candidate.cv_accuracy, result.best.cv_accuracy);

        if (rec.accepted) {
            result.best = rec.best_candidate;
            state.range_gamma = ranges_around(result.best.params.gamma);
            state.range_c = ranges_around(result.best.params.c);
            rejections = 0;
        } else {
            state = perturb_state(std::move(state));
            ++rejections;
        }
        result.iterations.push_back(rec);
        if (on_iteration) on_iteration(result.iterations.back());
        if (cfg.patience && rejections >= *cfg.patience) break;
    }

    result.total_evaluations = cache.computed() - computed_before;
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

TuneResult ils_tune(const Dataset& d, const TunerConfig& cfg, const IterationCallback& on_iteration) {
    EvalCache cache;
    return ils_tune(d, cfg, cache, on_iteration);
}

Evaluation baseline_grid(const Dataset& data, const TunerConfig& cfg, EvalCache& cache) {
    cfg.validate();
    std::optional<Dataset> scaled;
    const Dataset& d = prepared(data, cfg, scaled);
    const auto folds = kfold_split(d, cfg.k, cfg.seed);
    const auto init = initial_ranges();
    return grid_search_step(d, folds, init.gamma, init.c, cfg.solver, cache, cfg.threads);
}

Evaluation baseline_grid(const Dataset& d, const TunerConfig& cfg) {
    EvalCache cache;
    return baseline_grid(d, cfg, cache);
}

}  // namespace ilsvm
