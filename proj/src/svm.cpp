#include "ilsvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ilsvm/errors.hpp"

namespace ilsvm {

HyperParams HyperParams::make(double c, double gamma) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument(fmt::format("C must be positive and finite, got {}", c));
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument(fmt::format("gamma must be positive and finite, got {}", gamma));
    return {c, gamma};
}

void SolverConfig::validate() const {
    if (!(kkt_tolerance > 0.0 && kkt_tolerance < 1.0))
        throw std::invalid_argument("kkt_tolerance must lie in (0, 1)");
    if (max_passes < 1) throw std::invalid_argument("max_passes must be >= 1");
    if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 1 (or 0 for default)");
}

namespace {

// Working state of the decomposition. F_i = sum_j alpha_j y_j K_ij - y_i is
// the prediction error without the bias term.
class SmoState {
  public:
    SmoState(const Eigen::MatrixXd& gram, const Eigen::VectorXi& labels, double c)
        : k_(gram), y_(labels.cast<double>()), c_(c), alpha_(Eigen::VectorXd::Zero(labels.size())),
          f_(-y_) {}

    Eigen::Index size() const { return y_.size(); }
    bool free(Eigen::Index i) const { return alpha_(i) > 0.0 && alpha_(i) < c_; }

    // Samples whose condition bounds F from below / above.
    bool lower(Eigen::Index i) const {
        return free(i) || (y_(i) > 0 ? alpha_(i) == 0.0 : alpha_(i) == c_);
    }
    bool upper(Eigen::Index i) const {
        return free(i) || (y_(i) > 0 ? alpha_(i) == c_ : alpha_(i) == 0.0);
    }

    struct Extremes {
        Eigen::Index i_up = -1;   // argmax F over upper
        Eigen::Index i_low = -1;  // argmin F over lower
        double max_up = -std::numeric_limits<double>::infinity();
        double min_low = std::numeric_limits<double>::infinity();
        double gap() const { return max_up - min_low; }
    };

    Extremes extremes() const {
        Extremes e;
        for (Eigen::Index i = 0; i < size(); ++i) {
            if (upper(i) && f_(i) > e.max_up) {
                e.max_up = f_(i);
                e.i_up = i;
            }
            if (lower(i) && f_(i) < e.min_low) {
                e.min_low = f_(i);
                e.i_low = i;
            }
        }
        return e;
    }

    // Partner for `i` if it violates optimality against the current
    // extremes, else -1. Among partners that form a violating pair the one
    // with the largest analytic gain (E_i - E_j)^2 / eta is chosen.
    Eigen::Index partner(Eigen::Index i, const Extremes& e, double tol) const {
        const bool raise = lower(i) && f_(i) < e.max_up - 2.0 * tol;
        const bool drop = upper(i) && f_(i) > e.min_low + 2.0 * tol;
        if (!raise && !drop) return -1;
        Eigen::Index j = -1;
        double best = 0.0;
        for (Eigen::Index t = 0; t < size(); ++t) {
            if (t == i) continue;
            double diff = 0.0;
            if (raise && upper(t) && f_(t) > f_(i) + 2.0 * tol) diff = f_(t) - f_(i);
            if (drop && lower(t) && f_(t) < f_(i) - 2.0 * tol) diff = std::max(diff, f_(i) - f_(t));
            if (diff <= 0.0) continue;
            const double gain = diff * diff / eta(i, t);
            if (gain > best) {
                best = gain;
                j = t;
            }
        }
        return j;
    }

    double eta(Eigen::Index i, Eigen::Index j) const {
        return std::max(k_(i, i) + k_(j, j) - 2.0 * k_(i, j), 1e-12);
    }

    bool take_step(Eigen::Index i, Eigen::Index j) {
        const double ai = alpha_(i), aj = alpha_(j);
        const double yi = y_(i), yj = y_(j);
        const double s = yi * yj;

        double lo, hi;
        if (s < 0) {
            lo = std::max(0.0, aj - ai);
            hi = std::min(c_, c_ + aj - ai);
        } else {
            lo = std::max(0.0, ai + aj - c_);
            hi = std::min(c_, ai + aj);
        }
        if (lo >= hi) return false;

        double aj_new = std::clamp(aj + yj * (f_(i) - f_(j)) / eta(i, j), lo, hi);
        const double snap = 1e-12 * c_;
        if (aj_new < snap) aj_new = 0.0;
        if (aj_new > c_ - snap) aj_new = c_;
        double ai_new = ai + s * (aj - aj_new);
        if (ai_new < snap) ai_new = 0.0;
        if (ai_new > c_ - snap) ai_new = c_;

        if (aj_new == aj && ai_new == ai) return false;

        alpha_(i) = ai_new;
        alpha_(j) = aj_new;
        f_ += ((ai_new - ai) * yi) * k_.col(i) + ((aj_new - aj) * yj) * k_.col(j);
        return true;
    }

    const Eigen::VectorXd& alphas() const { return alpha_; }

  private:
    const Eigen::MatrixXd& k_;
    Eigen::VectorXd y_;
    double c_;
    Eigen::VectorXd alpha_;
    Eigen::VectorXd f_;
};

}  // namespace

DualSolution solve_dual(const Eigen::MatrixXd& gram, const Eigen::VectorXi& labels, double c,
                        const SolverConfig& cfg) {
    cfg.validate();
    const auto n = labels.size();
    if (gram.rows() != n || gram.cols() != n)
        throw std::invalid_argument("solve_dual: Gram matrix does not match label count");
    const double tol = cfg.kkt_tolerance;
    const std::int64_t max_iter = cfg.max_iterations > 0 ? cfg.max_iterations : 10000 * std::int64_t{n};

    SmoState st(gram, labels, c);
    std::int64_t iterations = 0;
    int stalled = 0;
    bool examine_all = true;

    auto ext = st.extremes();
    while (ext.gap() > 2.0 * tol) {
        int changed = 0;
        for (Eigen::Index i = 0; i < n && ext.gap() > 2.0 * tol; ++i) {
            if (!examine_all && !st.free(i)) continue;
            const auto j = st.partner(i, ext, tol);
            if (j < 0) continue;
            if (st.take_step(i, j)) {
                ++changed;
                if (++iterations > max_iter)
                    throw ConvergenceError(fmt::format(
                        "SMO did not converge within {} iterations (C = {}, KKT gap {:.3g})", max_iter,
                        c, ext.gap()));
                ext = st.extremes();
            }
        }
        if (examine_all) {
            if (changed == 0) {
                if (++stalled >= cfg.max_passes)
                    throw ConvergenceError(fmt::format(
                        "SMO stalled with KKT gap {:.3g} after {} full sweeps (C = {})", ext.gap(),
                        stalled, c));
            } else {
                stalled = 0;
                examine_all = false;
            }
        } else if (changed == 0) {
            examine_all = true;
        }
    }

    double beta;
    if (ext.i_up >= 0 && ext.i_low >= 0)
        beta = 0.5 * (ext.max_up + ext.min_low);
    else
        beta = ext.i_up >= 0 ? ext.max_up : ext.min_low;
    return {st.alphas(), -beta, iterations};
}

SvmModeld train(const Dataset& d, const HyperParams& params, const SolverConfig& cfg) {
    const Eigen::MatrixXd gram = rbf_gram(d.features(), params.gamma);
    const auto sol = solve_dual(gram, d.labels(), params.c, cfg);

    std::vector<Eigen::Index> sv;
    for (Eigen::Index i = 0; i < sol.alphas.size(); ++i)
        if (sol.alphas(i) > 0.0) sv.push_back(i);

    SvmModeld m;
    m.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), d.n_features());
    m.coefficients.resize(static_cast<Eigen::Index>(sv.size()));
    for (std::size_t r = 0; r < sv.size(); ++r) {
        const auto row = static_cast<Eigen::Index>(r);
        m.support_vectors.row(row) = d.sample(sv[r]);
        m.coefficients(row) = sol.alphas(sv[r]) * d.label(sv[r]);
    }
    m.bias = sol.bias;
    m.gamma = params.gamma;
    m.c_used = params.c;
    return m;
}

double dual_objective(const Eigen::VectorXd& alphas, const Dataset& d, const HyperParams& params) {
    if (alphas.size() != d.size())
        throw std::invalid_argument(fmt::format("dual_objective: {} multipliers for {} samples",
                                                alphas.size(), d.size()));
    if ((alphas.array() < 0.0).any() || (alphas.array() > params.c).any())
        throw std::invalid_argument("dual_objective: multiplier outside [0, C]");
    const Eigen::MatrixXd gram = rbf_gram(d.features(), params.gamma);
    return dual_objective<double>(alphas, gram, d.labels());
}

double max_kkt_violation(const Eigen::VectorXd& alphas, double bias, const Eigen::MatrixXd& gram,
                         const Eigen::VectorXi& labels, double c, double bound_eps) {
    const Eigen::VectorXd y = labels.cast<double>();
    const Eigen::VectorXd f = gram * alphas.cwiseProduct(y) + Eigen::VectorXd::Constant(y.size(), bias);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double margin = y(i) * f(i);
        double v;
        if (alphas(i) <= bound_eps)
            v = 1.0 - margin;
        else if (alphas(i) >= c - bound_eps)
            v = margin - 1.0;
        else
            v = std::abs(margin - 1.0);
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace ilsvm
