#pragma once

// Independent reference solver for the SVM dual, used only by tests:
// projected gradient ascent in long double on
//   max sum(a) - 1/2 (a*y)' K (a*y),  0 <= a <= C,  y'a = 0.
// The Gram matrix is rebuilt here from raw coordinates rather than taken
// from the library's kernel code.

#include <algorithm>
#include <cmath>
#include <vector>

namespace ilsvm::fixtures {

struct OracleResult {
    std::vector<long double> alphas;
    long double objective = 0;
    long iterations = 0;
};

inline std::vector<std::vector<long double>> oracle_gram(const std::vector<std::vector<double>>& x,
                                                         long double gamma) {
    const auto n = x.size();
    std::vector<std::vector<long double>> k(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long double sq = 0;
            for (std::size_t d = 0; d < x[i].size(); ++d) {
                const long double diff = static_cast<long double>(x[i][d]) - x[j][d];
                sq += diff * diff;
            }
            k[i][j] = std::exp(-gamma * sq);
        }
    return k;
}

inline long double oracle_objective(const std::vector<long double>& a, const std::vector<int>& y,
                                    const std::vector<std::vector<long double>>& k) {
    long double lin = 0, quad = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        lin += a[i];
        for (std::size_t j = 0; j < a.size(); ++j) quad += a[i] * a[j] * y[i] * y[j] * k[i][j];
    }
    return lin - quad / 2;
}

/// Euclidean projection of v onto {0 <= a <= C, y'a = 0}: a = clip(v - t y)
/// where t solves the piecewise-linear, non-increasing g(t) = y'clip(v - t y).
inline std::vector<long double> project(const std::vector<long double>& v, const std::vector<int>& y,
                                        long double c) {
    const auto n = v.size();
    auto clipped = [&](long double t) {
        std::vector<long double> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = std::clamp(v[i] - t * y[i], 0.0L, c);
        return a;
    };
    auto g = [&](long double t) {
        long double s = 0;
        const auto a = clipped(t);
        for (std::size_t i = 0; i < n; ++i) s += y[i] * a[i];
        return s;
    };
    std::vector<long double> bps;
    for (std::size_t i = 0; i < n; ++i) {
        bps.push_back(v[i] * y[i]);
        bps.push_back((v[i] - c) * y[i]);
    }
    std::sort(bps.begin(), bps.end());
    // g is linear between consecutive breakpoints; find the bracketing pair.
    for (std::size_t b = 0; b + 1 < bps.size(); ++b) {
        const long double g0 = g(bps[b]), g1 = g(bps[b + 1]);
        if (g0 >= 0 && g1 <= 0) {
            if (g0 == g1) return clipped(bps[b]);
            const long double t = bps[b] + (bps[b + 1] - bps[b]) * g0 / (g0 - g1);
            return clipped(t);
        }
    }
    return clipped(g(bps.front()) <= 0 ? bps.front() : bps.back());
}

inline OracleResult projected_gradient_dual(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                                            double c, double gamma, long max_iterations = 1000000,
                                            long double step = 1e-3L) {
    const auto k = oracle_gram(x, gamma);
    const auto n = y.size();
    OracleResult r;
    r.alphas.assign(n, 0);
    std::vector<long double> v(n);
    for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
        for (std::size_t i = 0; i < n; ++i) {
            long double grad = 1;
            for (std::size_t j = 0; j < n; ++j) grad -= y[i] * y[j] * k[i][j] * r.alphas[j];
            v[i] = r.alphas[i] + step * grad;
        }
        auto next = project(v, y, c);
        long double change = 0;
        for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::fabs(next[i] - r.alphas[i]));
        r.alphas = std::move(next);
        if (change < 1e-15L) break;
    }
    r.objective = oracle_objective(r.alphas, y, k);
    return r;
}

}  // namespace ilsvm::fixtures
