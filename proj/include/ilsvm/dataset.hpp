#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ilsvm {

/// Binary-labelled dense dataset. Rows of `features()` are samples in
/// ingestion order; labels are -1 or +1. Immutable once constructed.
class Dataset {
  public:
    /// Throws DataError if labels are not +-1, dimensions disagree, a feature
    /// is not finite, or one of the classes is missing.
    Dataset(Eigen::MatrixXd features, Eigen::VectorXi labels);

    Eigen::Index size() const { return features_.rows(); }
    Eigen::Index n_features() const { return features_.cols(); }

    const Eigen::MatrixXd& features() const { return features_; }
    const Eigen::VectorXi& labels() const { return labels_; }

    auto sample(Eigen::Index i) const { return features_.row(i); }
    int label(Eigen::Index i) const { return labels_(i); }

    Eigen::Index count(int label) const { return (labels_.array() == label).count(); }

    /// Rows `indices` in the given order. The result must still hold both
    /// classes.
    Dataset subset(std::span<const Eigen::Index> indices) const;

    bool operator==(const Dataset& other) const {
        return features_ == other.features_ && labels_ == other.labels_;
    }

  private:
    Eigen::MatrixXd features_;
    Eigen::VectorXi labels_;
};

/// Sparse libsvm text: `<label> <index>:<value> ...`, 1-based strictly
/// increasing indices. Labels 0 map to -1.
Dataset parse_libsvm(std::string_view text);

/// Comma separated with a header row. Every column except `label_column`
/// becomes a feature, in header order.
Dataset parse_csv(std::string_view text, std::string_view label_column);

/// libsvm text that parses back to an identical Dataset. Zero entries are
/// omitted except the last column, which is always written so the feature
/// count survives the round trip.
std::string to_libsvm(const Dataset& d);

struct Standardization {
    Eigen::VectorXd mean;
    /// Population standard deviation per column.
    Eigen::VectorXd stddev;
    /// Divisor actually applied: stddev, or 1 for constant columns.
    Eigen::VectorXd scale;

    Dataset apply(const Dataset& d) const;
};

struct StandardizeResult {
    Dataset data;
    Standardization stats;
};

StandardizeResult standardize(const Dataset& d);

/// Stratified fold membership. `fold_of[i]` is the fold of sample i.
struct FoldAssignment {
    int k = 0;
    std::vector<int> fold_of;

    std::vector<Eigen::Index> test_indices(int fold) const;
    std::vector<Eigen::Index> train_indices(int fold) const;
    std::vector<Eigen::Index> fold_sizes() const;

    bool operator==(const FoldAssignment&) const = default;
};

/// Within each class (-1 first, then +1) samples are shuffled with the
/// seeded stream and dealt round-robin; the dealing position carries over
/// between classes so fold sizes differ by at most one.
FoldAssignment kfold_split(const Dataset& d, int k, std::uint64_t seed);

}  // namespace ilsvm
