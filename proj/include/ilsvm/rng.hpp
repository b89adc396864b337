#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ilsvm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform reals and bounded integers are derived here rather than
/// through <random> distributions, whose algorithms are implementation
/// defined. A uniform real takes the top 53 bits of one engine output.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(seed ^ stream)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi). Requires lo < hi.
    double uniform(double lo, double hi) {
        const double v = lo + uniform01() * (hi - lo);
        return v < hi ? v : std::nextafter(hi, lo);
    }

    /// Uniform integer on [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    bool operator==(const Rng&) const = default;

  private:
    std::mt19937_64 engine_;
};

/// Stream identifiers carved out of a single user seed.
inline constexpr std::uint64_t kFoldStream = 1;
inline constexpr std::uint64_t kSearchStream = 2;

}  // namespace ilsvm
