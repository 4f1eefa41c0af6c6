#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace beamcast {

/// Counter-style 64-bit generator (splitmix64). The state walks a Weyl
/// sequence and every output is a full avalanche of the state, so streams
/// seeded from related keys are decorrelated. Cheap to construct, which is
/// what the per-chunk Monte Carlo streams rely on.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Unit-mean exponential via inverse transform; never returns +inf.
  double exponential() { return -std::log1p(-uniform01()); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() {
    return std::numeric_limits<std::uint64_t>::max();
  }

 private:
  std::uint64_t state_;
};

/// splitmix64 finalizer: a bijective full-avalanche mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Key for the c-th substream of a base seed. Chunked Monte Carlo derives
/// one SplitMix64 per (seed, chunk) pair from this, independent of how work
/// is split across threads. The avalanche scatters the streams' starting
/// states: without it, consecutive chunks would sit a few Weyl steps apart
/// and replay overlapping windows of the same sequence.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9E3779B97F4A7C15ull * (index + 0x632BE59BD9B4E019ull));
}

/// Compensated (Kahan) accumulator for long Monte Carlo sums.
class KahanSum {
 public:
  void add(double value) {
    double y = value - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace beamcast
