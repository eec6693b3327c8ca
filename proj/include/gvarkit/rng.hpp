#pragma once

#include <cstdint>
#include <random>

namespace gvarkit {

/// Deterministic random source. The raw stream is std::mt19937_64 (whose
/// output sequence is fixed by the standard); all distribution transforms are
/// implemented here rather than via <random> distributions, so that a seed
/// produces the same draws on every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal (Box-Muller, spare cached).
    double normal();

    /// Uniform on {0, ..., n-1}; n must be positive.
    std::uint64_t bounded(std::uint64_t n);

    /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang).
    double gamma(double shape);

    double beta(double a, double b);

    /// Student t with `dof` degrees of freedom, scaled to unit variance when
    /// dof > 2 (so it can stand in for a standard normal in error terms).
    double student_t_unit_variance(double dof);

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent per-stream seed from a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace gvarkit
