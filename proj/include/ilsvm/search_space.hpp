#pragma once

#include <array>
#include <vector>

#include "ilsvm/rng.hpp"
#include "ilsvm/svm.hpp"

namespace ilsvm {

/// Five ascending grid values around a center:
/// inf_down < inf_up < center < sup_down < sup_up.
struct ParamRange {
    double inf_down = 0.01;
    double inf_up = 0.1;
    double center = 1.0;
    double sup_down = 10.0;
    double sup_up = 100.0;

    std::array<double, 5> values() const { return {inf_down, inf_up, center, sup_down, sup_up}; }
    /// Strictly ascending, positive and finite.
    bool valid() const;
    /// Throws std::domain_error unless valid().
    void check() const;

    bool operator==(const ParamRange&) const = default;
};

/// Ranges for gamma and C plus the random stream that perturbs them. The
/// centers track the incumbent.
struct SearchState {
    ParamRange range_gamma;
    ParamRange range_c;
    Rng rng;
};

struct RangePair {
    ParamRange gamma;
    ParamRange c;
};

/// Both ranges are the powers of ten 10^-2 .. 10^2.
RangePair initial_ranges();

/// [p/100, p/10, p, 10p, 100p]. Throws std::domain_error for p <= 0 or when
/// a slot is not finite.
ParamRange ranges_around(double p);

/// All 25 (gamma, C) pairs; gamma index outer, C index inner, both ascending.
/// The pair of centers sits at position 12.
std::vector<HyperParams> cartesian_candidates(const ParamRange& range_gamma, const ParamRange& range_c);

/// Randomised range update after a rejected iteration, with c = center:
///   inf_down <- U[inf_down / 10, inf_down)
///   inf_up   <- U[(c - inf_up) / 2, c)
///   sup_down <- U[c, c + (sup_down - c) / 2)
///   sup_up   <- U[sup_up, 10 * sup_up)
/// drawn in that order. Outer slots move away from the center, inner slots
/// toward it. If inf_up or sup_down breaks the ordering it is re-drawn up to
/// 100 times, then set to the geometric mean of its neighbours.
ParamRange perturb(const ParamRange& r, Rng& rng);

/// Perturbs the gamma range, then the C range, on the state's stream.
SearchState perturb_state(SearchState s);

}  // namespace ilsvm
