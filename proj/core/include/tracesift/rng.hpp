#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tracesift {

/// splitmix64 finalizer. Used to derive independent stream seeds from
/// (base_seed, tag, index) tuples so experiments can run in any order.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return mix64(mix64(mix64(base) ^ a) ^ b);
}

/// Deterministic random stream. Wraps std::mt19937_64, whose output
/// sequence is pinned by the standard, so traces are reproducible across
/// platforms. Gaussian samples use an explicit Box-Muller transform rather
/// than std::normal_distribution, which is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  double gaussian(double mean, double sd) {
    if (sd == 0.0) return mean;
    // Box-Muller; u1 must be nonzero for the log.
    double u1;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    return mean + sd * z;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace tracesift
