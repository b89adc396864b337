#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ilsvm/dataset.hpp"
#include "ilsvm/svm.hpp"

namespace ilsvm {

/// Cross-validated accuracy of one (C, gamma) pair. `cv_accuracy` is the
/// unweighted mean of `fold_accuracies`.
struct Evaluation {
    HyperParams params;
    double cv_accuracy = 0.0;
    std::vector<double> fold_accuracies;

    bool operator==(const Evaluation&) const = default;
};

/// Memo of evaluations keyed on the exact bit patterns of (C, gamma). Safe
/// for concurrent lookup and insert; a duplicate insert overwrites with an
/// identical value.
class EvalCache {
  public:
    std::optional<Evaluation> find(const HyperParams& p) const;
    void store(const Evaluation& e);

    /// Solver failure recorded for `p`, replayed on later lookups.
    std::optional<std::string> failure(const HyperParams& p) const;
    void store_failure(const HyperParams& p, std::string message);

    std::size_t size() const;
    void clear();

    /// Number of evaluations computed (cache misses) through cv_accuracy.
    std::uint64_t computed() const { return computed_.load(); }
    /// Number of SVM trainings performed through cv_accuracy.
    std::uint64_t trainings() const { return trainings_.load(); }

  private:
    friend Evaluation cv_accuracy(const Dataset&, const FoldAssignment&, const HyperParams&,
                                  const SolverConfig&, EvalCache&);

    struct Key {
        std::uint64_t c_bits;
        std::uint64_t gamma_bits;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    static Key key_of(const HyperParams& p);

    mutable std::mutex mu_;
    std::unordered_map<Key, Evaluation, KeyHash> entries_;
    std::unordered_map<Key, std::string, KeyHash> failures_;
    std::atomic<std::uint64_t> computed_{0};
    std::atomic<std::uint64_t> trainings_{0};
};

/// Fraction of positions where the labels agree.
double accuracy(std::span<const int> predicted, std::span<const int> actual);

/// k-fold accuracy with fixed `folds`: train on every fold but f, score
/// fold f. Served from `cache` when the exact pair was seen before. A
/// ConvergenceError is cached as well and rethrown on repeat lookups.
Evaluation cv_accuracy(const Dataset& d, const FoldAssignment& folds, const HyperParams& params,
                       const SolverConfig& cfg, EvalCache& cache);

/// Uncached variant.
Evaluation cv_accuracy(const Dataset& d, const FoldAssignment& folds, const HyperParams& params,
                       const SolverConfig& cfg = {});

}  // namespace ilsvm
