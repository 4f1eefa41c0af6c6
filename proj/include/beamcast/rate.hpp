#pragma once

#include <span>
#include <vector>

#include "beamcast/channel.hpp"
#include "beamcast/numerics.hpp"

namespace beamcast {

/// Per-user feedback thresholds. A component of +infinity means the user
/// never feeds back; 0 means she always does.
struct ThresholdPolicy {
  std::vector<double> thresholds;

  ThresholdPolicy() = default;
  explicit ThresholdPolicy(std::vector<double> taus);

  std::size_t size() const { return thresholds.size(); }

  /// Threshold for feedback probability p: tau = F^{-1}(1 - p), with p = 0
  /// mapping to +infinity.
  static double threshold_for_probability(const ChannelModel& model, double p);

  /// Policy with tau_i = F^{-1}(1 - p_i).
  static ThresholdPolicy from_probabilities(const ChannelModel& model,
                                            std::span<const double> p);

  /// Feedback probabilities p_i = 1 - F(tau_i).
  std::vector<double> probabilities(const ChannelModel& model) const;
};

/// CDF of the truncated SINR gamma * 1{gamma >= tau}: mass F(tau) collapses
/// onto the atom at zero, so P(truncated <= y) = F(max(tau, y)) for y >= 0.
double truncated_cdf(const ChannelModel& model, double tau, double y);

/// Ergodic rate on one beam, E[log(1 + max_i truncated SINR_i)], in nats.
/// Evaluated as int_0^inf (1 - prod_i P(trunc_i <= y)) / (1+y) dy with the
/// quadrature split at every distinct finite threshold.
double beam_rate(const ChannelModel& model, const ThresholdPolicy& policy,
                 const QuadratureSpec& spec = {});

/// Ergodic sum rate over all beams; beams are statistically identical, so
/// this is beams() * beam_rate.
double sum_rate(const ChannelModel& model, const ThresholdPolicy& policy,
                const QuadratureSpec& spec = {});

/// Average number of users feeding back per beam, sum_i (1 - F(tau_i)).
double feedback_load(const ChannelModel& model, const ThresholdPolicy& policy);

/// Inputs for the conditional pair rates: the two ordered thresholds, the
/// realized best competing truncated SINR y, and the pair feedback level
/// lambda_pair = p_low + p_high.
struct ConditionalRateInput {
  double tau_low = 0.0;
  double tau_high = 0.0;
  double y = 0.0;
  double lambda_pair = 0.0;
};

/// Conditional pair rate when the competing max y exceeds both thresholds:
///   G(y) = F(y)^2 log(1+y) + int_y^inf log(1+x) dF^2(x).
double g_const(const ChannelModel& model, double y,
               const QuadratureSpec& spec = {});

/// Conditional pair rate for y < tau_low:
///   int_{tau_high}^inf log(1+x) dF^2(x)
///   + F(tau_high) int_{tau_low}^{tau_high} log(1+x) dF(x)
///   + log(1+y) F(tau_low) F(tau_high).
double r1_cond(const ChannelModel& model, const ConditionalRateInput& input,
               const QuadratureSpec& spec = {});

/// Conditional pair rate for tau_low <= y <= tau_high:
///   int_{tau_high}^inf log(1+x) dF^2(x)
///   + F(tau_high) int_y^{tau_high} log(1+x) dF(x)
///   + log(1+y) F(tau_high) F(y).
double r2_cond(const ChannelModel& model, const ConditionalRateInput& input,
               const QuadratureSpec& spec = {});

/// Pair rate as a function of the smaller feedback probability q at fixed
/// pair level lambda_pair and competing max y. Dispatches between G, R1 and
/// R2 according to where y falls relative to the thresholds
/// tau_high = F^{-1}(1-q), tau_low = F^{-1}(1-(lambda_pair-q)). Admissible
/// range: max(0, lambda_pair - 1) <= q <= lambda_pair / 2.
double conditional_rate_q(const ChannelModel& model, double q,
                          double lambda_pair, double y,
                          const QuadratureSpec& spec = {});

}  // namespace beamcast
