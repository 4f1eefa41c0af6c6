#include "beamcast/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace beamcast {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_a^b log(1+x) dF(x), integrated by parts so the quadrature only sees
// the smooth bounded integrand F(x)/(1+x) (or its tail complement).
double log1p_df(const ChannelModel& model, double a, double b,
                const QuadratureSpec& spec) {
  if (a >= b) return 0.0;
  if (std::isinf(a)) return 0.0;
  if (std::isinf(b)) {
    double tail = integrate(
        [&model](double x) { return (1.0 - model.cdf(x)) / (1.0 + x); }, a,
        kInf, spec);
    return (1.0 - model.cdf(a)) * std::log1p(a) + tail;
  }
  double body = integrate(
      [&model](double x) { return model.cdf(x) / (1.0 + x); }, a, b, spec);
  return model.cdf(b) * std::log1p(b) - model.cdf(a) * std::log1p(a) - body;
}

// int_a^inf log(1+x) dF^2(x) with dF^2 = 2 F f dx, again by parts:
// (1 - F(a)^2) log(1+a) + int_a^inf (1 - F(x)^2)/(1+x) dx.
double log1p_df2_tail(const ChannelModel& model, double a,
                      const QuadratureSpec& spec) {
  if (std::isinf(a)) return 0.0;
  double Fa = model.cdf(a);
  double tail = integrate(
      [&model](double x) {
        double F = model.cdf(x);
        return (1.0 - F * F) / (1.0 + x);
      },
      a, kInf, spec);
  return (1.0 - Fa * Fa) * std::log1p(a) + tail;
}

void validate_pair_input(const ConditionalRateInput& input) {
  if (!(input.tau_low >= 0.0) || !(input.tau_high >= input.tau_low)) {
    throw std::invalid_argument("conditional rate: need 0 <= tau_low <= tau_high");
  }
  if (!(input.y >= 0.0)) {
    throw std::invalid_argument("conditional rate: y must be >= 0");
  }
  if (input.lambda_pair < -1e-12 || input.lambda_pair > 2.0 + 1e-12) {
    throw std::invalid_argument("conditional rate: lambda_pair outside [0, 2]");
  }
}

}  // namespace

ThresholdPolicy::ThresholdPolicy(std::vector<double> taus)
    : thresholds(std::move(taus)) {
  if (thresholds.empty()) {
    throw std::invalid_argument("ThresholdPolicy: need at least one user");
  }
  for (double t : thresholds) {
    if (std::isnan(t) || t < 0.0) {
      throw std::invalid_argument("ThresholdPolicy: thresholds must be >= 0");
    }
  }
}

double ThresholdPolicy::threshold_for_probability(const ChannelModel& model,
                                                  double p) {
  if (std::isnan(p) || p < -1e-12 || p > 1.0 + 1e-12) {
    throw std::invalid_argument("threshold_for_probability: p outside [0, 1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  if (p <= 0.0) return kInf;
  if (p >= 1.0) return 0.0;
  double u = 1.0 - p;
  if (u >= 1.0) return kInf;  // p below one ulp of zero
  return model.inv_cdf(u);
}

ThresholdPolicy ThresholdPolicy::from_probabilities(const ChannelModel& model,
                                                    std::span<const double> p) {
  if (p.empty()) {
    throw std::invalid_argument("from_probabilities: need at least one user");
  }
  ThresholdPolicy policy;
  policy.thresholds.reserve(p.size());
  for (double pi : p) {
    policy.thresholds.push_back(threshold_for_probability(model, pi));
  }
  return policy;
}

std::vector<double> ThresholdPolicy::probabilities(
    const ChannelModel& model) const {
  std::vector<double> p;
  p.reserve(thresholds.size());
  for (double t : thresholds) {
    p.push_back(std::isinf(t) ? 0.0 : 1.0 - model.cdf(t));
  }
  return p;
}

double truncated_cdf(const ChannelModel& model, double tau, double y) {
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("truncated_cdf: tau must be >= 0");
  }
  if (y < 0.0) throw std::invalid_argument("truncated_cdf: y must be >= 0");
  if (std::isinf(tau)) return 1.0;  // truncated SINR is identically zero
  return y < tau ? model.cdf(tau) : model.cdf(y);
}

double beam_rate(const ChannelModel& model, const ThresholdPolicy& policy,
                 const QuadratureSpec& spec) {
  if (policy.thresholds.empty()) {
    throw std::invalid_argument("beam_rate: empty policy");
  }
  std::vector<double> finite;
  for (double t : policy.thresholds) {
    if (!std::isinf(t)) finite.push_back(t);
  }
  if (finite.empty()) return 0.0;  // nobody ever feeds back

  auto integrand = [&](double y) {
    double prod = 1.0;
    for (double tau : policy.thresholds) {
      prod *= truncated_cdf(model, tau, y);
    }
    return (1.0 - prod) / (1.0 + y);
  };

  // Split at the thresholds: the product has a kink at each of them.
  std::sort(finite.begin(), finite.end());
  finite.erase(std::unique(finite.begin(), finite.end()), finite.end());
  std::vector<double> points;
  points.push_back(0.0);
  for (double t : finite) {
    if (t > points.back()) points.push_back(t);
  }

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    total += integrate(integrand, points[k], points[k + 1], spec);
  }
  total += integrate(integrand, points.back(), kInf, spec);
  return total;
}

double sum_rate(const ChannelModel& model, const ThresholdPolicy& policy,
                const QuadratureSpec& spec) {
  return model.beams() * beam_rate(model, policy, spec);
}

double feedback_load(const ChannelModel& model,
                     const ThresholdPolicy& policy) {
  double load = 0.0;
  for (double t : policy.thresholds) {
    load += std::isinf(t) ? 0.0 : 1.0 - model.cdf(t);
  }
  return load;
}

double g_const(const ChannelModel& model, double y,
               const QuadratureSpec& spec) {
  if (!(y >= 0.0)) throw std::invalid_argument("g_const: y must be >= 0");
  double Fy = model.cdf(y);
  return Fy * Fy * std::log1p(y) + log1p_df2_tail(model, y, spec);
}

double r1_cond(const ChannelModel& model, const ConditionalRateInput& input,
               const QuadratureSpec& spec) {
  validate_pair_input(input);
  if (input.y > input.tau_low + 1e-9 * (1.0 + input.tau_low)) {
    throw std::invalid_argument("r1_cond: requires y <= tau_low");
  }
  double F_high = std::isinf(input.tau_high) ? 1.0 : model.cdf(input.tau_high);
  double F_low = std::isinf(input.tau_low) ? 1.0 : model.cdf(input.tau_low);
  return log1p_df2_tail(model, input.tau_high, spec) +
         F_high * log1p_df(model, input.tau_low, input.tau_high, spec) +
         std::log1p(input.y) * F_low * F_high;
}

double r2_cond(const ChannelModel& model, const ConditionalRateInput& input,
               const QuadratureSpec& spec) {
  validate_pair_input(input);
  if (input.y < input.tau_low - 1e-9 * (1.0 + input.tau_low) ||
      input.y > input.tau_high + 1e-9 * (1.0 + input.tau_high)) {
    throw std::invalid_argument("r2_cond: requires tau_low <= y <= tau_high");
  }
  double F_high = std::isinf(input.tau_high) ? 1.0 : model.cdf(input.tau_high);
  double Fy = model.cdf(input.y);
  return log1p_df2_tail(model, input.tau_high, spec) +
         F_high * log1p_df(model, input.y, input.tau_high, spec) +
         std::log1p(input.y) * F_high * Fy;
}

double conditional_rate_q(const ChannelModel& model, double q,
                          double lambda_pair, double y,
                          const QuadratureSpec& spec) {
  if (!(y >= 0.0)) {
    throw std::invalid_argument("conditional_rate_q: y must be >= 0");
  }
  if (lambda_pair < 0.0 || lambda_pair > 2.0) {
    throw std::invalid_argument("conditional_rate_q: lambda_pair outside [0, 2]");
  }
  double q_lo = std::max(0.0, lambda_pair - 1.0);
  double q_hi = 0.5 * lambda_pair;
  if (q < q_lo - 1e-12 || q > q_hi + 1e-12) {
    throw std::invalid_argument("conditional_rate_q: q outside admissible range");
  }
  q = std::clamp(q, q_lo, q_hi);

  // exceed_y == 0 means y sits numerically at the top of the distribution,
  // where all three branches have already merged into log(1+y).
  double exceed_y = 1.0 - model.cdf(y);
  if (q > exceed_y || exceed_y <= 0.0) return g_const(model, y, spec);

  ConditionalRateInput input;
  input.tau_low = ThresholdPolicy::threshold_for_probability(model, lambda_pair - q);
  input.tau_high = ThresholdPolicy::threshold_for_probability(model, q);
  input.lambda_pair = lambda_pair;
  // Clamping y absorbs inverse-CDF rounding right at the branch boundaries,
  // which are continuity points of the rate.
  if (q > lambda_pair - exceed_y) {
    input.y = std::min(y, input.tau_low);
    return r1_cond(model, input, spec);
  }
  input.y = std::clamp(y, input.tau_low, input.tau_high);
  return r2_cond(model, input, spec);
}

}  // namespace beamcast
