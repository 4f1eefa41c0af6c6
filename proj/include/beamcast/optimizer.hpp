#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "beamcast/rate.hpp"

namespace beamcast {

struct OptimizeOptions {
  int starts = 8;            // uniform + one-hot-heavy + random feasible
  double step_tol = 1e-4;    // converged once the pattern step shrinks below
  int max_iters = 400;       // sweep budget per start
  double initial_step = 0.25;
  std::uint64_t seed = 0x5bea3ca57ull;  // for the random starts
  QuadratureSpec quad;
};

struct OptimizationResult {
  std::vector<double> best_p;
  ThresholdPolicy best_thresholds;
  double best_rate = 0.0;
  double load = 0.0;
  bool converged = false;
  int iterations = 0;
  /// Accepted iterates (p, rate) of the winning search, start point first.
  std::vector<std::pair<std::vector<double>, double>> trace;
};

/// Homogeneous policy with all thresholds F^{-1}(1 - lambda/n), so the
/// feedback load is exactly lambda.
ThresholdPolicy homogeneous_policy(const ChannelModel& model, int n,
                                   double lambda);

/// Maximizes the sum rate over feedback probabilities p in [0,1]^n with
/// sum_i p_i <= lambda, by multi-start coordinate pattern search with
/// shrinking steps. Moves include single-coordinate changes (clipped onto
/// the constraint face), pairwise transfers along the face, and a rescale
/// onto the face. The homogeneous candidate is always evaluated; the result
/// is never worse than it.
OptimizationResult optimize(const ChannelModel& model, int n, double lambda,
                            const OptimizeOptions& options = {});

/// Exhaustive two-user scan: rate of p = (lambda - q, q) for q on a uniform
/// grid over [max(0, lambda-1), lambda/2].
struct TwoUserCurve {
  std::vector<double> q;
  std::vector<double> rate;
  double best_q = 0.0;
  double best_rate = 0.0;
};

TwoUserCurve exhaustive_two_user(const ChannelModel& model, double lambda,
                                 int grid_points,
                                 const QuadratureSpec& spec = {});

}  // namespace beamcast
