#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mixmobo {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Seeded random stream with counter-based substream derivation.
///
/// All draws are built on the raw mt19937_64 output so sequences are
/// pinned by the seed alone, independent of the standard library's
/// distribution implementations. Substreams derived from the same key
/// and tags are identical across runs; callers are responsible for
/// using distinct tags per logical stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(seed), engine_(detail::splitmix64(seed)) {}

  /// Derives an independent stream from this stream's key and up to three tags.
  Rng child(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
    std::uint64_t h = detail::splitmix64(key_ ^ 0x6d696d6f626f0001ULL);
    h = detail::splitmix64(h ^ detail::splitmix64(a));
    h = detail::splitmix64(h ^ detail::splitmix64(b));
    h = detail::splitmix64(h ^ detail::splitmix64(c));
    return Rng(h);
  }

  std::uint64_t key() const { return key_; }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Requires n >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    // rejection to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  /// Standard normal via Box-Muller (no state carried between calls).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace mixmobo
