#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

#include "ilsvm/dataset.hpp"
#include "ilsvm/kernel.hpp"

namespace ilsvm {

/// Soft-margin penalty C and RBF width gamma. Both strictly positive and
/// finite; `make` validates.
struct HyperParams {
    double c = 1.0;
    double gamma = 1.0;

    static HyperParams make(double c, double gamma);

    bool operator==(const HyperParams&) const = default;
};

struct SolverConfig {
    double kkt_tolerance = 1e-3;
    /// Consecutive full sweeps without any multiplier change tolerated while
    /// the KKT gap is still open.
    int max_passes = 10;
    /// Pair updates allowed; 0 means 10000 * n.
    std::int64_t max_iterations = 0;

    void validate() const;
};

/// Dual expansion f(x) = sum_i coefficients_i K(sv_i, x) + bias with
/// coefficients_i = alpha_i y_i. Rows of `support_vectors` are the vectors.
template <typename Scalar>
struct SvmModel {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Matrix support_vectors;
    Vector coefficients;
    Scalar bias = 0;
    Scalar gamma = 1;
    Scalar c_used = 1;

    Eigen::Index n_features() const { return support_vectors.cols(); }

    bool operator==(const SvmModel& o) const {
        return support_vectors == o.support_vectors && coefficients == o.coefficients &&
               bias == o.bias && gamma == o.gamma && c_used == o.c_used;
    }
};

using SvmModeld = SvmModel<double>;

template <typename Scalar, typename Derived>
Scalar decision_value(const SvmModel<Scalar>& m, const Eigen::MatrixBase<Derived>& x) {
    if (x.size() != m.n_features()) throw std::invalid_argument("decision_value: dimension mismatch");
    Scalar f = m.bias;
    for (Eigen::Index i = 0; i < m.coefficients.size(); ++i)
        f += m.coefficients(i) * rbf_kernel(m.support_vectors.row(i), x, m.gamma);
    return f;
}

/// +1 when the decision value is >= 0, otherwise -1.
template <typename Scalar, typename Derived>
int predict(const SvmModel<Scalar>& m, const Eigen::MatrixBase<Derived>& x) {
    return decision_value(m, x) >= Scalar(0) ? 1 : -1;
}

/// Labels for every row of `x`.
template <typename Scalar, typename Derived>
Eigen::VectorXi predict_rows(const SvmModel<Scalar>& m, const Eigen::MatrixBase<Derived>& x) {
    Eigen::VectorXi out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) out(i) = predict(m, x.row(i));
    return out;
}

/// Full multiplier vector from the dual solver, indexed like the training
/// samples.
struct DualSolution {
    Eigen::VectorXd alphas;
    double bias = 0.0;
    std::int64_t iterations = 0;
};

/// Maximises sum(alpha) - 1/2 (alpha*y)' K (alpha*y) subject to
/// 0 <= alpha <= c and y'alpha = 0.
///
/// Two-multiplier decomposition: the first multiplier is found by scanning
/// sample indices in order (full sweeps alternating with sweeps over the
/// non-bound multipliers), the second as the violating partner with the
/// largest analytic gain (E1 - E2)^2 / eta. Optimality is tested with the two-threshold KKT condition so
/// the returned bias leaves every sample within `kkt_tolerance`. Throws
/// ConvergenceError past `max_iterations` or `max_passes` stalled sweeps.
DualSolution solve_dual(const Eigen::MatrixXd& gram, const Eigen::VectorXi& labels, double c,
                        const SolverConfig& cfg);

/// Trains on `d`; multipliers equal to zero are dropped from the model.
SvmModeld train(const Dataset& d, const HyperParams& params, const SolverConfig& cfg = {});

/// sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K(x_i, x_j).
double dual_objective(const Eigen::VectorXd& alphas, const Dataset& d, const HyperParams& params);

/// Same quantity from a precomputed Gram matrix; no box checks.
template <typename Scalar>
Scalar dual_objective(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& alphas,
                      const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& gram,
                      const Eigen::VectorXi& labels) {
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ay =
        alphas.cwiseProduct(labels.template cast<Scalar>());
    return alphas.sum() - Scalar(0.5) * ay.dot(gram * ay);
}

/// Largest violation of the per-sample optimality conditions on y_i f(x_i)
/// for multipliers `alphas` and bias `bias`. Multipliers within `bound_eps`
/// of 0 or c count as bound.
double max_kkt_violation(const Eigen::VectorXd& alphas, double bias, const Eigen::MatrixXd& gram,
                         const Eigen::VectorXi& labels, double c, double bound_eps = 1e-12);

}  // namespace ilsvm
