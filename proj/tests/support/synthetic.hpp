#pragma once

// Synthetic datasets shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

#include "ilsvm/dataset.hpp"
#include "ilsvm/rng.hpp"

namespace ilsvm::fixtures {

inline double normal(Rng& rng) {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u = 1.0 - rng.uniform01();
    const double v = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

/// `n` samples alternating between N(mean_neg, spread^2 I) labelled -1 and
/// N(mean_pos, spread^2 I) labelled +1.
inline Dataset two_blobs(int n, Eigen::Vector2d mean_neg, Eigen::Vector2d mean_pos, double spread,
                         std::uint64_t seed) {
    Rng rng(seed, 99);
    Eigen::MatrixXd x(n, 2);
    Eigen::VectorXi y(n);
    for (int i = 0; i < n; ++i) {
        const bool pos = i % 2 == 1;
        const Eigen::Vector2d& m = pos ? mean_pos : mean_neg;
        x(i, 0) = m(0) + spread * normal(rng);
        x(i, 1) = m(1) + spread * normal(rng);
        y(i) = pos ? 1 : -1;
    }
    return Dataset(std::move(x), std::move(y));
}

/// Four Gaussian clusters centred at (+-c, +-c); the label is the sign of the
/// product of the sampled coordinates.
inline Dataset xor_quadrants(int n, double center, double spread, std::uint64_t seed) {
    Rng rng(seed, 98);
    Eigen::MatrixXd x(n, 2);
    Eigen::VectorXi y(n);
    for (int i = 0; i < n; ++i) {
        const double sx = (i % 2 == 0) ? 1.0 : -1.0;
        const double sy = ((i / 2) % 2 == 0) ? 1.0 : -1.0;
        x(i, 0) = sx * center + spread * normal(rng);
        x(i, 1) = sy * center + spread * normal(rng);
        y(i) = x(i, 0) * x(i, 1) >= 0.0 ? 1 : -1;
    }
    return Dataset(std::move(x), std::move(y));
}

/// Points uniform in [-1, 1]^2 with labels drawn independently of them.
inline Dataset random_labels(int n, std::uint64_t seed) {
    Rng rng(seed, 97);
    Eigen::MatrixXd x(n, 2);
    Eigen::VectorXi y(n);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = rng.uniform(-1.0, 1.0);
        x(i, 1) = rng.uniform(-1.0, 1.0);
        y(i) = i < 2 ? (i == 0 ? 1 : -1) : (rng.below(2) == 0 ? 1 : -1);
    }
    return Dataset(std::move(x), std::move(y));
}

}  // namespace ilsvm::fixtures
