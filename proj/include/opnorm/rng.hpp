#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace opnorm {

/// Deterministic seeded generator. All randomness in the library routes
/// through this class so that runs are reproducible bit-for-bit; the raw
/// mt19937_64 stream is mapped to doubles by an explicit bit recipe rather
/// than std distributions, which are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (no state caching, two draws per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  bool coin() { return (gen_() & 1u) != 0; }

  std::complex<double> unit_complex() {
    const double phi = uniform(0.0, 6.283185307179586476925286766559);
    return {std::cos(phi), std::sin(phi)};
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

/// Van der Corput radical inverse; halton(i, base) for low-discrepancy grids.
inline double halton(std::size_t index, int base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index + 1;  // skip the degenerate zeroth term
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::size_t>(base));
    i /= static_cast<std::size_t>(base);
  }
  return r;
}

inline int halton_base(std::size_t dim_index) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  return primes[dim_index % (sizeof(primes) / sizeof(primes[0]))];
}

}  // namespace opnorm
