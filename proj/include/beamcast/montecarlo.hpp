#pragma once

#include <cstdint>
#include <vector>

#include "beamcast/rate.hpp"

namespace beamcast {

/// Monte Carlo rate/load estimate. Per-beam means and standard errors are
/// carried alongside the headline numbers for symmetry diagnostics.
struct RateEstimate {
  double mean_rate = 0.0;      // sum over beams, nats
  double std_error = 0.0;
  double mean_load = 0.0;      // users feeding back on beam 1 per slot
  double load_std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> per_beam_rate;
  std::vector<double> per_beam_se;
};

struct SimulateOptions {
  /// Definition-1 reporting (every beam above threshold) by default; when
  /// set, users report only their best beam, and only if it clears the
  /// threshold. No analytic counterpart ships for this mode.
  bool best_beam_only = false;
};

/// Fixed chunk size of the deterministic sample partition. Chunk c draws
/// from the SplitMix64 stream keyed by substream_key(seed, c); chunks are
/// reduced in index order, so the estimate does not depend on how many
/// workers ran them.
inline constexpr std::int64_t kChunkSamples = 4096;

/// Number of Monte Carlo workers: BEAMCAST_THREADS when set and positive,
/// otherwise the hardware concurrency.
int worker_count();

/// Event-level simulation of the full system: joint SINR draws per user,
/// threshold feedback, and max-SINR scheduling per beam. The realized rate
/// per sample is sum_m log(1 + best reported SINR on m), zero on beams
/// nobody requests. Identical (seed, samples) reproduce the identical
/// estimate for any worker count.
RateEstimate simulate(const ChannelModel& model, const ThresholdPolicy& policy,
                      std::int64_t samples, std::uint64_t seed,
                      const SimulateOptions& options = {});

/// Estimates E[log(1 + max(trunc(gamma_a; tau_low), trunc(gamma_b; tau_high), y))]
/// from two independent beam-1 SINR draws: the Monte Carlo oracle for
/// g_const / r1_cond / r2_cond.
RateEstimate simulate_pair_conditional(const ChannelModel& model,
                                       double tau_low, double tau_high,
                                       double y, std::int64_t samples,
                                       std::uint64_t seed);

}  // namespace beamcast
