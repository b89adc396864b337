#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace ilsvm {

/// exp(-gamma * ||a - b||^2). Either argument may be a row or column
/// expression.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar rbf_kernel(const Eigen::MatrixBase<DerivedA>& a,
                                     const Eigen::MatrixBase<DerivedB>& b,
                                     typename DerivedA::Scalar gamma) {
    if (a.size() != b.size()) throw std::invalid_argument("rbf_kernel: dimension mismatch");
    using std::exp;
    typename DerivedA::Scalar sq(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const auto diff = a.derived().coeff(i) - b.derived().coeff(i);
        sq += diff * diff;
    }
    return exp(-gamma * sq);
}

/// Kernel matrix between the rows of `x` and the rows of `z`.
template <typename DerivedX, typename DerivedZ>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic>
rbf_cross(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedZ>& z,
          typename DerivedX::Scalar gamma) {
    using Scalar = typename DerivedX::Scalar;
    if (x.cols() != z.cols()) throw std::invalid_argument("rbf_cross: dimension mismatch");
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k(x.rows(), z.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < z.rows(); ++j) k(i, j) = rbf_kernel(x.row(i), z.row(j), gamma);
    return k;
}

/// Symmetric Gram matrix over the rows of `x`; the diagonal is exactly 1.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
rbf_gram(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar gamma) {
    using Scalar = typename Derived::Scalar;
    const auto n = x.rows();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = Scalar(1);
        for (Eigen::Index j = i + 1; j < n; ++j) k(i, j) = k(j, i) = rbf_kernel(x.row(i), x.row(j), gamma);
    }
    return k;
}

}  // namespace ilsvm
