#include "ilsvm/search_space.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace ilsvm {

bool ParamRange::valid() const {
    const auto v = values();
    for (double x : v)
        if (!std::isfinite(x) || !(x > 0.0)) return false;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1] < v[i])) return false;
    return true;
}

void ParamRange::check() const {
    if (!valid())
        throw std::domain_error(fmt::format("invalid parameter range [{}, {}, {}, {}, {}]", inf_down,
                                            inf_up, center, sup_down, sup_up));
}

RangePair initial_ranges() {
    const ParamRange powers{0.01, 0.1, 1.0, 10.0, 100.0};
    return {powers, powers};
}

ParamRange ranges_around(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::domain_error(fmt::format("range center must be positive and finite, got {}", p));
    ParamRange r{p / 100.0, p / 10.0, p, p * 10.0, p * 100.0};
    r.check();
    return r;
}

std::vector<HyperParams> cartesian_candidates(const ParamRange& range_gamma, const ParamRange& range_c) {
    range_gamma.check();
    range_c.check();
    std::vector<HyperParams> out;
    out.reserve(25);
    for (double g : range_gamma.values())
        for (double c : range_c.values()) out.push_back({c, g});
    return out;
}

ParamRange perturb(const ParamRange& r, Rng& rng) {
    r.check();
    const double c = r.center;

    const double inf_down_lo = r.inf_down / 10.0, inf_down_hi = r.inf_down;
    const double inf_up_lo = (c - r.inf_up) / 2.0, inf_up_hi = c;
    const double sup_down_lo = c, sup_down_hi = c + (r.sup_down - c) / 2.0;
    const double sup_up_lo = r.sup_up, sup_up_hi = r.sup_up * 10.0;

    ParamRange out = r;
    out.inf_down = rng.uniform(inf_down_lo, inf_down_hi);
    out.inf_up = rng.uniform(inf_up_lo, inf_up_hi);
    out.sup_down = rng.uniform(sup_down_lo, sup_down_hi);
    out.sup_up = rng.uniform(sup_up_lo, sup_up_hi);

    constexpr int kRedraws = 100;
    for (int t = 0; t < kRedraws && !(out.inf_down < out.inf_up && out.inf_up < c); ++t)
        out.inf_up = rng.uniform(inf_up_lo, inf_up_hi);
    if (!(out.inf_down < out.inf_up && out.inf_up < c)) out.inf_up = std::sqrt(out.inf_down * c);

    for (int t = 0; t < kRedraws && !(c < out.sup_down && out.sup_down < out.sup_up); ++t)
        out.sup_down = rng.uniform(sup_down_lo, sup_down_hi);
    if (!(c < out.sup_down && out.sup_down < out.sup_up)) out.sup_down = std::sqrt(c * out.sup_up);

    out.check();
    return out;
}

SearchState perturb_state(SearchState s) {
    s.range_gamma = perturb(s.range_gamma, s.rng);
    s.range_c = perturb(s.range_c, s.rng);
    return s;
}

}  // namespace ilsvm
