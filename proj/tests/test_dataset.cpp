#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "ilsvm/dataset.hpp"
#include "ilsvm/errors.hpp"
#include "ilsvm/rng.hpp"
#include "support/synthetic.hpp"

using namespace ilsvm;

TEST(ParseLibsvm, FillsMissingIndicesWithZero) {
    const auto d = parse_libsvm("+1 1:2.0 3:1.0\n-1 2:0.5\n");
    ASSERT_EQ(d.size(), 2);
    ASSERT_EQ(d.n_features(), 3);
    Eigen::MatrixXd expected(2, 3);
    expected << 2, 0, 1, 0, 0.5, 0;
    EXPECT_EQ(d.features(), expected);
    EXPECT_EQ(d.label(0), 1);
    EXPECT_EQ(d.label(1), -1);
}

TEST(ParseLibsvm, MapsZeroLabelToMinusOne) {
    const auto d = parse_libsvm("1 1:1\n0 1:-1\n");
    EXPECT_EQ(d.label(0), 1);
    EXPECT_EQ(d.label(1), -1);
}

TEST(ParseLibsvm, AcceptsCrlfAndBlankLines) {
    const auto d = parse_libsvm("+1 1:1\r\n\r\n-1 1:2\r\n");
    EXPECT_EQ(d.size(), 2);
}

TEST(ParseLibsvm, RejectsSingleClass) {
    EXPECT_THROW(parse_libsvm("+1 1:1\n+1 2:1\n"), DataError);
}

TEST(ParseLibsvm, RejectsEmptyInput) {
    EXPECT_THROW(parse_libsvm(""), DataError);
    EXPECT_THROW(parse_libsvm("\n\n"), DataError);
}

TEST(ParseLibsvm, ReportsLineOfMalformedEntry) {
    try {
        parse_libsvm("+1 1:1\n-1 2:1\n+1 3:x\n");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_libsvm("+1 2:1 1:1\n-1 1:1\n"), DataError);
    EXPECT_THROW(parse_libsvm("+1 0:1\n-1 1:1\n"), DataError);
    EXPECT_THROW(parse_libsvm("+1 1\n-1 1:1\n"), DataError);
}

TEST(ParseLibsvm, RejectsLabelOutsideBinarySet) {
    EXPECT_THROW(parse_libsvm("2 1:1\n-1 1:1\n"), DataError);
}

TEST(ParseCsv, UsesHeaderOrderWithoutLabel) {
    const auto d = parse_csv("a,b,y\n1,2,1\n3,4,0\n", "y");
    Eigen::MatrixXd expected(2, 2);
    expected << 1, 2, 3, 4;
    EXPECT_EQ(d.features(), expected);
    EXPECT_EQ(d.label(0), 1);
    EXPECT_EQ(d.label(1), -1);
}

TEST(ParseCsv, LabelColumnMayBeFirst) {
    const auto d = parse_csv("y,a\n-1,0.5\n+1,1.5\n", "y");
    EXPECT_EQ(d.n_features(), 1);
    EXPECT_DOUBLE_EQ(d.features()(1, 0), 1.5);
}

TEST(ParseCsv, UnknownLabelColumn) {
    try {
        parse_csv("a,b,y\n1,2,1\n3,4,0\n", "z");
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("unknown label column"), std::string::npos);
    }
}

TEST(ParseCsv, NonNumericCellNamesRowAndColumn) {
    try {
        parse_csv("a,b,y\n1,abc,1\n3,4,0\n", "y");
        FAIL();
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("column b"), std::string::npos) << msg;
    }
}

TEST(ParseCsv, MissingHeaderAndSingleClass) {
    EXPECT_THROW(parse_csv("", "y"), DataError);
    EXPECT_THROW(parse_csv("a,y\n1,1\n2,1\n", "y"), DataError);
}

TEST(Libsvm, RoundTripIsIdentity) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        const int n = 2 + static_cast<int>(rng.below(10));
        const int dim = 1 + static_cast<int>(rng.below(6));
        Eigen::MatrixXd x(n, dim);
        Eigen::VectorXi y(n);
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < dim; ++c)
                x(i, c) = rng.below(3) == 0 ? 0.0 : rng.uniform(-1e3, 1e3);
            y(i) = i == 0 ? 1 : i == 1 ? -1 : (rng.below(2) ? 1 : -1);
        }
        x.col(dim - 1).setZero();  // a trailing all-zero column must survive
        const Dataset d(x, y);
        EXPECT_EQ(parse_libsvm(to_libsvm(d)), d) << "seed " << seed;
    }
}

TEST(Standardize, PopulationStatistics) {
    Eigen::MatrixXd x(2, 2);
    x << 0, 5, 2, 5;
    Eigen::VectorXi y(2);
    y << 1, -1;
    const auto [d, stats] = standardize(Dataset(x, y));
    EXPECT_DOUBLE_EQ(stats.mean(0), 1.0);
    EXPECT_DOUBLE_EQ(stats.stddev(0), 1.0);
    EXPECT_DOUBLE_EQ(d.features()(0, 0), -1.0);
    EXPECT_DOUBLE_EQ(d.features()(1, 0), 1.0);
    EXPECT_EQ(d.features()(0, 1), 0.0);
    EXPECT_EQ(d.features()(1, 1), 0.0);
}

TEST(Standardize, MomentsAndIdempotence) {
    const auto raw = fixtures::two_blobs(50, {3, -2}, {7, 10}, 2.5, 5);
    const auto once = standardize(raw);
    const auto& x = once.data.features();
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double mean = x.col(c).mean();
        const double sd = std::sqrt((x.col(c).array() - mean).square().mean());
        EXPECT_NEAR(mean, 0.0, 1e-9);
        EXPECT_NEAR(sd, 1.0, 1e-9);
    }
    const auto twice = standardize(once.data);
    EXPECT_LE((twice.data.features() - x).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(once.stats.apply(raw), once.data);
}

TEST(KFold, BalancedTenSamples) {
    const auto d = fixtures::two_blobs(10, {0, 0}, {1, 1}, 1.0, 1);
    for (std::uint64_t seed : {0ULL, 7ULL, 12345ULL}) {
        const auto folds = kfold_split(d, 5, seed);
        for (int f = 0; f < 5; ++f) {
            const auto idx = folds.test_indices(f);
            ASSERT_EQ(idx.size(), 2u);
            EXPECT_NE(d.label(idx[0]), d.label(idx[1]));
        }
    }
}

TEST(KFold, RejectsBadK) {
    const auto d = fixtures::two_blobs(10, {0, 0}, {1, 1}, 1.0, 1);
    EXPECT_THROW(kfold_split(d, 11, 0), DataError);
    EXPECT_THROW(kfold_split(d, 6, 0), DataError);  // 5 per class
    EXPECT_THROW(kfold_split(d, 1, 0), DataError);
}

TEST(KFold, DeterministicPerSeed) {
    const auto d = fixtures::two_blobs(40, {0, 0}, {1, 1}, 1.0, 3);
    EXPECT_EQ(kfold_split(d, 4, 9), kfold_split(d, 4, 9));
    EXPECT_NE(kfold_split(d, 4, 9).fold_of, kfold_split(d, 4, 10).fold_of);
}

// Partition and stratification over unbalanced random datasets.
TEST(KFold, PartitionAndStratificationProperty) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed, 5);
        const int n_pos = 2 + static_cast<int>(rng.below(40));
        const int n_neg = 2 + static_cast<int>(rng.below(40));
        const int n = n_pos + n_neg;
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, 1);
        Eigen::VectorXi y(n);
        std::vector<int> labels(static_cast<std::size_t>(n_pos), 1);
        labels.resize(static_cast<std::size_t>(n), -1);
        for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng.below(i)]);
        for (int i = 0; i < n; ++i) y(i) = labels[static_cast<std::size_t>(i)];
        const Dataset d(x, y);
        const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n_pos, n_neg) - 1)));

        const auto folds = kfold_split(d, k, seed);
        ASSERT_EQ(folds.fold_of.size(), static_cast<std::size_t>(n));
        const auto sizes = folds.fold_sizes();
        Eigen::Index total = 0;
        for (auto s : sizes) total += s;
        EXPECT_EQ(total, n);
        EXPECT_LE(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()), 1);

        std::map<std::pair<int, int>, int> counts;
        for (int i = 0; i < n; ++i) {
            const int f = folds.fold_of[static_cast<std::size_t>(i)];
            ASSERT_GE(f, 0);
            ASSERT_LT(f, k);
            ++counts[{f, d.label(i)}];
        }
        for (int f = 0; f < k; ++f)
            for (int cls : {-1, 1}) {
                const double share = static_cast<double>(d.count(cls)) / n;
                const double expected = std::round(static_cast<double>(sizes[static_cast<std::size_t>(f)]) * share);
                EXPECT_LE(std::abs(counts[{f, cls}] - expected), 1.0) << "seed " << seed;
            }
    }
}
