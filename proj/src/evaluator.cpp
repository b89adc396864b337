#include "ilsvm/evaluator.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "ilsvm/errors.hpp"
#include "ilsvm/rng.hpp"

namespace ilsvm {

EvalCache::Key EvalCache::key_of(const HyperParams& p) {
    return {std::bit_cast<std::uint64_t>(p.c), std::bit_cast<std::uint64_t>(p.gamma)};
}

std::size_t EvalCache::KeyHash::operator()(const Key& k) const noexcept {
    return static_cast<std::size_t>(splitmix64(k.c_bits ^ splitmix64(k.gamma_bits)));
}

std::optional<Evaluation> EvalCache::find(const HyperParams& p) const {
    std::lock_guard lock(mu_);
    const auto it = entries_.find(key_of(p));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void EvalCache::store(const Evaluation& e) {
    std::lock_guard lock(mu_);
    entries_.insert_or_assign(key_of(e.params), e);
}

std::optional<std::string> EvalCache::failure(const HyperParams& p) const {
    std::lock_guard lock(mu_);
    const auto it = failures_.find(key_of(p));
    if (it == failures_.end()) return std::nullopt;
    return it->second;
}

void EvalCache::store_failure(const HyperParams& p, std::string message) {
    std::lock_guard lock(mu_);
    failures_.insert_or_assign(key_of(p), std::move(message));
}

std::size_t EvalCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

void EvalCache::clear() {
    std::lock_guard lock(mu_);
    entries_.clear();
    failures_.clear();
}

double accuracy(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument(fmt::format("accuracy: {} predictions for {} labels",
                                                predicted.size(), actual.size()));
    if (predicted.empty()) throw std::invalid_argument("accuracy: empty label lists");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == actual[i];
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

namespace {

Evaluation evaluate_folds(const Dataset& d, const FoldAssignment& folds, const HyperParams& params,
                          const SolverConfig& cfg, std::uint64_t* trainings = nullptr) {
    if (folds.fold_of.size() != static_cast<std::size_t>(d.size()))
        throw DataError("fold assignment does not match the dataset size");
    Evaluation e{params, 0.0, {}};
    e.fold_accuracies.reserve(static_cast<std::size_t>(folds.k));
    for (int f = 0; f < folds.k; ++f) {
        const auto train_idx = folds.train_indices(f);
        const auto test_idx = folds.test_indices(f);
        if (test_idx.empty()) throw DataError(fmt::format("fold {} is empty", f));
        Dataset train_split = [&] {
            try {
                return d.subset(train_idx);
            } catch (const DataError&) {
                throw DataError(fmt::format(
                    "training split for fold {} holds a single class; change k or the seed", f));
            }
        }();
        if (trainings) ++*trainings;
        const auto model = ilsvm::train(train_split, params, cfg);

        std::vector<int> predicted, actual;
        predicted.reserve(test_idx.size());
        actual.reserve(test_idx.size());
        for (auto i : test_idx) {
            predicted.push_back(predict(model, d.sample(i)));
            actual.push_back(d.label(i));
        }
        e.fold_accuracies.push_back(accuracy(predicted, actual));
    }
    e.cv_accuracy = std::accumulate(e.fold_accuracies.begin(), e.fold_accuracies.end(), 0.0) /
                    static_cast<double>(folds.k);
    return e;
}

}  // namespace

Evaluation cv_accuracy(const Dataset& d, const FoldAssignment& folds, const HyperParams& params,
                       const SolverConfig& cfg, EvalCache& cache) {
    if (auto hit = cache.find(params)) return *hit;
    if (auto failed = cache.failure(params)) throw ConvergenceError(*failed);
    std::uint64_t trainings = 0;
    try {
        auto e = evaluate_folds(d, folds, params, cfg, &trainings);
        cache.computed_.fetch_add(1);
        cache.trainings_.fetch_add(trainings);
        cache.store(e);
        return e;
    } catch (const ConvergenceError& e) {
        cache.computed_.fetch_add(1);
        cache.trainings_.fetch_add(trainings);
        cache.store_failure(params, e.what());
        throw;
    }
}

Evaluation cv_accuracy(const Dataset& d, const FoldAssignment& folds, const HyperParams& params,
                       const SolverConfig& cfg) {
    return evaluate_folds(d, folds, params, cfg);
}

}  // namespace ilsvm
