#include "beamcast/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "beamcast/conditions.hpp"
#include "beamcast/io.hpp"
#include "beamcast/majorization.hpp"
#include "beamcast/montecarlo.hpp"
#include "beamcast/rate.hpp"

namespace beamcast {
namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

RayleighModel random_model(SplitMix64& rng, int max_beams, double rho_lo,
                           double rho_hi) {
  int beams = 1 + static_cast<int>(rng.below(max_beams));
  double rho = std::exp(rng.uniform(std::log(rho_lo), std::log(rho_hi)));
  return RayleighModel(beams, rho);
}

}  // namespace

CheckResult check_single_beam_boundary() {
  Stopwatch watch;
  CheckResult result;
  result.name = "single-beam-boundary";
  result.passed = true;

  const double holds_at[] = {0.1, 0.5, 0.9, 1.0};
  const double fails_at[] = {1.0001, 2.0, 10.0};
  std::ostringstream detail;
  auto run = [&](double snr, bool expected) {
    RayleighModel model(1, snr);
    bool closed = schur_condition_rayleigh(1, snr);
    ConditionReport numeric = schur_condition_numeric(model);
    if (closed != expected || numeric.holds != expected) {
      result.passed = false;
      detail << " snr=" << format_real(snr) << " closed=" << closed
             << " numeric=" << numeric.holds << " expected=" << expected
             << ";";
    }
  };
  for (double snr : holds_at) run(snr, true);
  for (double snr : fails_at) run(snr, false);
  result.detail = result.passed
                      ? "7/7 single-beam boundary points match"
                      : "mismatch at:" + detail.str();
  result.seconds = watch.seconds();
  return result;
}

CheckResult check_multi_beam_coverage() {
  Stopwatch watch;
  CheckResult result;
  result.name = "multi-beam-coverage";
  result.passed = true;

  int checked = 0;
  std::ostringstream detail;
  for (int beams = 2; beams <= 8; ++beams) {
    for (double snr : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      RayleighModel model(beams, snr);
      ConditionReport numeric = schur_condition_numeric(model);
      bool closed = schur_condition_rayleigh(beams, snr);
      ++checked;
      if (!numeric.holds || !closed) {
        result.passed = false;
        detail << " (M=" << beams << ", snr=" << format_real(snr)
               << ") holds=" << numeric.holds << ";";
      }
    }
  }
  result.detail = result.passed
                      ? std::to_string(checked) + "/35 multi-beam checks hold"
                      : "violations at:" + detail.str();
  result.seconds = watch.seconds();
  return result;
}

CheckResult check_mc_agreement(const VerifyOptions& options) {
  Stopwatch watch;
  CheckResult result;
  result.name = "mc-agreement";

  SplitMix64 rng(substream_key(options.seed, 3));
  int first_pass_failures = 0;
  bool hard_failure = false;
  double worst_sigma = 0.0;
  std::ostringstream detail;

  for (int k = 0; k < options.mc_configs; ++k) {
    RayleighModel model = random_model(rng, 4, 0.1, 10.0);
    int users = 1 + static_cast<int>(rng.below(6));
    std::vector<double> p(users);
    for (auto& v : p) v = rng.uniform(0.02, 0.95);
    ThresholdPolicy policy = ThresholdPolicy::from_probabilities(model, p);
    double analytic = sum_rate(model, policy);

    std::uint64_t run_seed = substream_key(options.seed, 100 + k);
    RateEstimate est = simulate(model, policy, options.mc_samples, run_seed);
    double sigma = std::abs(est.mean_rate - analytic) / est.std_error;
    worst_sigma = std::max(worst_sigma, sigma);
    if (sigma >= 3.0) {
      ++first_pass_failures;
      RateEstimate retry = simulate(model, policy, options.mc_samples,
                                    substream_key(options.seed, 500 + k));
      double retry_sigma =
          std::abs(retry.mean_rate - analytic) / retry.std_error;
      detail << " config " << k << ": " << format_real(sigma)
             << " sigma, retry " << format_real(retry_sigma) << " sigma;";
      if (retry_sigma >= 3.0) hard_failure = true;
    }
  }
  result.passed = !hard_failure && first_pass_failures <= 1;
  std::ostringstream summary;
  summary << options.mc_configs << " configs at " << options.mc_samples
          << " samples, worst " << format_real(worst_sigma) << " sigma, "
          << first_pass_failures << " marginal" << detail.str();
  result.detail = summary.str();
  result.seconds = watch.seconds();
  return result;
}

CheckResult check_conditional_continuity(const VerifyOptions& options) {
  Stopwatch watch;
  CheckResult result;
  result.name = "conditional-continuity";

  const double tol = options.inject_failure ? 0.0 : 1e-9;
  SplitMix64 rng(substream_key(options.seed, 4));
  double worst = 0.0;
  int failures = 0;

  for (int k = 0; k < options.continuity_draws; ++k) {
    RayleighModel model = random_model(rng, 4, 0.1, 10.0);
    double p_low = rng.uniform(0.05, 0.95);
    double p_high = rng.uniform(0.05, 0.95);
    if (p_low < p_high) std::swap(p_low, p_high);  // tau_low <= tau_high
    ConditionalRateInput input;
    input.tau_low = model.inv_cdf(1.0 - p_low);
    input.tau_high = model.inv_cdf(1.0 - p_high);
    input.lambda_pair = p_low + p_high;

    input.y = input.tau_low;
    double at_low = std::abs(r1_cond(model, input) - r2_cond(model, input));
    input.y = input.tau_high;
    double at_high =
        std::abs(r2_cond(model, input) - g_const(model, input.tau_high));
    worst = std::max({worst, at_low, at_high});
    if (at_low > tol || at_high > tol) ++failures;
  }
  result.passed = failures == 0;
  std::ostringstream summary;
  summary << options.continuity_draws << " draws, worst gap "
          << format_real(worst) << ", " << failures << " over tolerance "
          << format_real(tol);
  result.detail = summary.str();
  result.seconds = watch.seconds();
  return result;
}

CheckResult check_schur_ordering(const VerifyOptions& options) {
  Stopwatch watch;
  CheckResult result;
  result.name = "schur-ordering";

  SplitMix64 rng(substream_key(options.seed, 5));
  int failures = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();

  const RayleighModel models[] = {RayleighModel(2, 1.0),
                                  RayleighModel(1, 0.8)};
  for (const auto& model : models) {
    for (int k = 0; k < options.schur_pairs; ++k) {
      int n = 2 + static_cast<int>(rng.below(5));
      double total = rng.uniform(0.2, 0.8 * n);
      MajorizationPair pair = random_majorization_pair(rng, n, total);
      double spread_rate = sum_rate(
          model, ThresholdPolicy::from_probabilities(model, pair.majorizing));
      double even_rate = sum_rate(
          model, ThresholdPolicy::from_probabilities(model, pair.majorized));
      double gap = spread_rate - even_rate;  // must be <= 1e-8
      worst_gap = std::max(worst_gap, gap);
      if (gap > 1e-8) ++failures;
    }
  }
  result.passed = failures == 0;
  std::ostringstream summary;
  summary << 2 * options.schur_pairs << " majorization pairs, worst gap "
          << format_real(worst_gap) << ", " << failures << " orderings violated";
  result.detail = summary.str();
  result.seconds = watch.seconds();
  return result;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(check_single_beam_boundary());
  results.push_back(check_multi_beam_coverage());
  results.push_back(check_mc_agreement(options));
  results.push_back(check_conditional_continuity(options));
  results.push_back(check_schur_ordering(options));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace beamcast
