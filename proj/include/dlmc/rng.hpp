#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace dlmc {

namespace detail {

// SplitMix64 step; used both as a seed scrambler and as a counter-based
// stream for per-coordinate draws.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53-bit mantissa uniform in [0, 1).
inline double u64_to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Deterministic per-chain random generator. Draws are produced by explicit
// arithmetic (not std distributions) so traces are bit-reproducible across
// standard library implementations. fork() derives an independent stream,
// which keeps parallel chains reproducible regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : seed_(seed), engine_(detail::splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  double uniform() { return detail::u64_to_unit(next_u64()); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // modulo bias is < 2^-40 for the n used here (n << 2^24)
    return next_u64() % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Marsaglia polar method; avoids implementation-defined
  // std::normal_distribution.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Independent child stream for (chain, tag); deterministic in (seed, tag).
  Rng fork(std::uint64_t tag) const {
    return Rng(detail::splitmix64(seed_ ^ detail::splitmix64(tag + 0x9e3779b97f4a7c15ULL)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Counter-based uniform for coordinate i of a draw keyed by `base`.
// Independent of evaluation order, so coordinatewise sampling can be
// parallelized without changing results.
inline double coord_uniform(std::uint64_t base, std::uint64_t i) {
  return detail::u64_to_unit(detail::splitmix64(base + 0x9e3779b97f4a7c15ULL * (i + 1)));
}

}  // namespace dlmc
