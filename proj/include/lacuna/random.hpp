#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lacuna {

/// Seeded generator with a fixed, documented bit stream.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the
/// C++ standard. Conversions to doubles and bounded integers are done here
/// rather than through <random> distributions, whose algorithms are left
/// to the implementation; this keeps experiment tables identical across
/// standard libraries.
class Rng {
 public:
  static constexpr const char* algorithm = "mt19937_64/top53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Uniform on the closed complex unit disc.
  std::complex<double> unit_disc() {
    const double r = std::sqrt(uniform());
    const double theta = 2.0 * std::numbers::pi * uniform();
    return std::polar(r, theta);
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser; derives independent per-trial seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace lacuna
