#include <cmath>
#include <limits>

#include "beamcast/majorization.hpp"
#include "beamcast/rate.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beamcast;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// pair rate dispatched by where y falls relative to the sorted thresholds
double cond_pair(const ChannelModel& m, double tau_low, double tau_high,
                 double y) {
  ConditionalRateInput in{tau_low, tau_high, y, 0.0};
  if (y > tau_high) return g_const(m, y);
  if (y < tau_low) return r1_cond(m, in);
  return r2_cond(m, in);
}

}  // namespace

TEST_CASE("truncated_cdf pinned values") {
  RayleighModel m(1, 1.0);
  CHECK(truncated_cdf(m, 0.0, 0.7) == doctest::Approx(m.cdf(0.7)));
  CHECK(truncated_cdf(m, kInf, 0.0) == 1.0);
  CHECK(truncated_cdf(m, 1.0, 0.5) ==
        doctest::Approx(0.6321205588285577).epsilon(1e-13));
  CHECK(truncated_cdf(m, 1.0, 2.0) == doctest::Approx(m.cdf(2.0)));
  CHECK_THROWS_AS(truncated_cdf(m, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("policy probability round-trips") {
  RayleighModel m(2, 3.0);
  std::vector<double> p = {0.0, 0.25, 0.7, 1.0};
  auto policy = ThresholdPolicy::from_probabilities(m, p);
  CHECK(std::isinf(policy.thresholds[0]));
  CHECK(policy.thresholds[3] == 0.0);
  auto back = policy.probabilities(m);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(back[i] == doctest::Approx(p[i]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(ThresholdPolicy(std::vector<double>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThresholdPolicy(std::vector<double>{-1.0}),
                  std::invalid_argument);

  // probabilities below one ulp of zero (arithmetic dust) act like zero
  CHECK(std::isinf(ThresholdPolicy::threshold_for_probability(m, 1.9e-17)));
  auto dusty = ThresholdPolicy::from_probabilities(
      m, std::vector<double>{0.5, 1.9e-17});
  CHECK(std::isinf(dusty.thresholds[1]));
}

TEST_CASE("beam_rate pinned values") {
  RayleighModel m(1, 1.0);
  CHECK(beam_rate(m, ThresholdPolicy({kInf, kInf})) == 0.0);
  // E[log(1+gamma)] for one always-reporting user
  CHECK(beam_rate(m, ThresholdPolicy({0.0})) ==
        doctest::Approx(0.596347362323194).epsilon(1e-9));
  CHECK(beam_rate(m, ThresholdPolicy({0.5, 1.0})) ==
        doctest::Approx(0.736211986772005).epsilon(1e-9));
}

TEST_CASE("sum_rate is beams times beam_rate") {
  ThresholdPolicy policy({0.3, 1.2, kInf});
  RayleighModel m1(1, 2.0);
  CHECK(sum_rate(m1, policy) == beam_rate(m1, policy));
  RayleighModel m2(2, 2.0);
  CHECK(sum_rate(m2, policy) == 2.0 * beam_rate(m2, policy));
}

TEST_CASE("feedback_load pinned values") {
  RayleighModel m(1, 1.0);
  CHECK(feedback_load(m, ThresholdPolicy({0.0, 0.0, 0.0})) ==
        doctest::Approx(3.0));
  CHECK(feedback_load(m, ThresholdPolicy({kInf, kInf})) == 0.0);
  CHECK(feedback_load(m, ThresholdPolicy({1.0, 1.0})) ==
        doctest::Approx(0.7357588823428847).epsilon(1e-13));
}

TEST_CASE("beam_rate is nonincreasing in every threshold") {
  SplitMix64 rng(57);
  for (int k = 0; k < 10; ++k) {
    RayleighModel m(1 + static_cast<int>(rng.below(3)),
                    std::exp(rng.uniform(-1.5, 2.0)));
    int n = 2 + static_cast<int>(rng.below(3));
    std::vector<double> taus(n);
    for (auto& t : taus) t = rng.uniform(0.0, 3.0);
    double base = beam_rate(m, ThresholdPolicy(taus));
    for (int i = 0; i < n; ++i) {
      auto bumped = taus;
      bumped[i] += 0.05;
      CHECK(beam_rate(m, ThresholdPolicy(bumped)) <= base + 1e-9);
    }
  }
}

TEST_CASE("beam_rate for n=3 equals the conditional-rate expectation") {
  // condition on user 3's truncated SINR and average the pair rates
  for (auto [beams, snr, t1, t2, t3] :
       {std::tuple{1, 1.0, 0.4, 1.5, 0.8}, {2, 2.0, 1.0, 0.2, 2.5},
        {1, 5.0, 3.0, 6.0, 1.0}}) {
    RayleighModel m(beams, snr);
    double lo = std::min(t1, t2), hi = std::max(t1, t2);
    auto integrand = [&](double x) { return cond_pair(m, lo, hi, x) * m.pdf(x); };
    double expectation = m.cdf(t3) * cond_pair(m, lo, hi, 0.0);
    std::vector<double> cuts = {t3, std::max(lo, t3), std::max(hi, t3)};
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      expectation += integrate(integrand, cuts[j], cuts[j + 1]);
    }
    expectation += integrate(integrand, cuts.back(), kInf);

    double direct = beam_rate(m, ThresholdPolicy({t1, t2, t3}));
    CHECK(direct == doctest::Approx(expectation).epsilon(1e-6));
  }
}

TEST_CASE("g_const pinned behavior") {
  RayleighModel m(1, 1.0);
  CHECK(g_const(m, 1.0) == doctest::Approx(0.931072072906122).epsilon(1e-9));
  // large y: F(y)^2 -> 1 and the tail integral vanishes
  CHECK(g_const(m, 1000.0) ==
        doctest::Approx(std::log1p(1000.0)).epsilon(1e-10));
  // y = 0: untruncated two-user max, checked against the Simpson oracle
  oracles::RayleighFormulas ref{1, 1.0};
  double expected = oracles::pair_truncated_max_rate(ref, 0.0, 0.0, 0.0);
  CHECK(g_const(m, 0.0) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("r1_cond and r2_cond pinned values") {
  RayleighModel m(1, 1.0);
  CHECK(r1_cond(m, {1.0, 2.0, 0.5, 0.0}) ==
        doctest::Approx(0.743326467185971).epsilon(1e-9));
  CHECK(r2_cond(m, {0.5, 2.0, 1.0, 0.0}) ==
        doctest::Approx(0.900565531841157).epsilon(1e-9));
  // y = 0 with tau_low = 0 collapses to the untruncated pair rate
  CHECK(r1_cond(m, {0.0, 0.0, 0.0, 0.0}) ==
        doctest::Approx(g_const(m, 0.0)).epsilon(1e-10));
}

TEST_CASE("conditional rate preconditions") {
  RayleighModel m(1, 1.0);
  CHECK_THROWS_AS(r1_cond(m, {1.0, 2.0, 1.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(r2_cond(m, {1.0, 2.0, 0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(r2_cond(m, {1.0, 2.0, 2.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(r1_cond(m, {2.0, 1.0, 0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(r1_cond(m, {1.0, 2.0, -0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("conditional rates are continuous at the thresholds") {
  SplitMix64 rng(67);
  for (int k = 0; k < 30; ++k) {
    RayleighModel m(1 + static_cast<int>(rng.below(4)),
                    std::exp(rng.uniform(-2.0, 2.0)));
    double a = rng.uniform(0.05, 3.0);
    double b = rng.uniform(0.05, 3.0);
    ConditionalRateInput in{std::min(a, b), std::max(a, b), 0.0, 0.0};
    in.y = in.tau_low;
    CHECK(std::abs(r1_cond(m, in) - r2_cond(m, in)) < 1e-9);
    in.y = in.tau_high;
    CHECK(std::abs(r2_cond(m, in) - g_const(m, in.tau_high)) < 1e-9);
  }
}

TEST_CASE("r1_cond matches the brute-force pair oracle") {
  for (auto [beams, snr, tl, th, y] :
       {std::tuple{1, 1.0, 1.0, 2.0, 0.5}, {2, 1.0, 0.7, 1.9, 0.2},
        {3, 2.0, 0.5, 4.0, 0.0}, {1, 10.0, 2.0, 8.0, 1.5}}) {
    RayleighModel m(beams, snr);
    oracles::RayleighFormulas ref{beams, snr};
    double expected = oracles::pair_truncated_max_rate(ref, tl, th, y);
    CHECK(r1_cond(m, {tl, th, y, 0.0}) ==
          doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("r2_cond matches the brute-force pair oracle") {
  for (auto [beams, snr, tl, th, y] :
       {std::tuple{1, 1.0, 0.5, 2.0, 1.0}, {2, 0.5, 0.3, 1.1, 0.6},
        {4, 3.0, 1.0, 5.0, 4.2}}) {
    RayleighModel m(beams, snr);
    oracles::RayleighFormulas ref{beams, snr};
    double expected = oracles::pair_truncated_max_rate(ref, tl, th, y);
    CHECK(r2_cond(m, {tl, th, y, 0.0}) ==
          doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("conditional_rate_q dispatch and continuity") {
  RayleighModel m(2, 1.0);
  const double lambda = 0.4;

  // equal thresholds at q = lambda/2 reduce to r1 with tau_low = tau_high
  double tau = ThresholdPolicy::threshold_for_probability(m, 0.2);
  double y = 0.5 * tau;
  CHECK(conditional_rate_q(m, 0.2, lambda, y) ==
        doctest::Approx(r1_cond(m, {tau, tau, y, lambda})).epsilon(1e-12));

  // y = 0 keeps every branch consistent across the q range
  for (int j = 0; j <= 40; ++j) {
    double q = 0.2 * j / 40.0;
    double v = conditional_rate_q(m, q, lambda, 0.0);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }

  // branch boundary q = 1 - F(y): G and R2 agree there
  y = 0.9;
  double q_star = 1.0 - m.cdf(y);
  if (q_star <= 0.5 * lambda && q_star >= std::max(0.0, lambda - 1.0)) {
    double left = conditional_rate_q(m, q_star - 1e-13, lambda, y);
    double right = conditional_rate_q(m, q_star + 1e-13, lambda, y);
    CHECK(std::abs(left - right) < 1e-9);
  }

  CHECK_THROWS_AS(conditional_rate_q(m, 0.21, lambda, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(conditional_rate_q(m, -0.01, lambda, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(conditional_rate_q(m, 0.4, 1.5, 0.5),
                  std::invalid_argument);
}

TEST_CASE("conditional_rate_q branch boundaries are continuous in q") {
  SplitMix64 rng(83);
  for (int k = 0; k < 20; ++k) {
    RayleighModel m(1 + static_cast<int>(rng.below(3)),
                    std::exp(rng.uniform(-1.0, 1.5)));
    double lambda = rng.uniform(0.1, 1.8);
    double y = rng.uniform(0.0, 2.0);
    double q_lo = std::max(0.0, lambda - 1.0);
    double q_hi = 0.5 * lambda;
    for (double boundary : {1.0 - m.cdf(y), lambda - (1.0 - m.cdf(y))}) {
      if (boundary <= q_lo + 1e-9 || boundary >= q_hi - 1e-9) continue;
      double left = conditional_rate_q(m, boundary - 1e-12, lambda, y);
      double right = conditional_rate_q(m, boundary + 1e-12, lambda, y);
      CHECK(std::abs(left - right) < 1e-9);
    }
  }
}

TEST_CASE("conditional_rate_q slope in q is nonnegative under the condition") {
  // regime where the distribution condition certifies monotonicity
  RayleighModel m(2, 1.0);
  double lambda = 0.4, y = 0.3;
  double q_lo = std::max(0.0, lambda - 1.0);
  double q_hi = 0.5 * lambda;
  const int G = 41;
  double prev = conditional_rate_q(m, q_lo, lambda, y);
  for (int j = 1; j < G; ++j) {
    double q = q_lo + (q_hi - q_lo) * j / (G - 1);
    double v = conditional_rate_q(m, q, lambda, y);
    double slope = (v - prev) / ((q_hi - q_lo) / (G - 1));
    CHECK(slope >= -1e-8);
    prev = v;
  }
}

TEST_CASE("sum_rate reverses majorization under the condition (spot)") {
  SplitMix64 rng(101);
  for (const auto& m : {RayleighModel(2, 1.0), RayleighModel(1, 0.8)}) {
    for (int k = 0; k < 20; ++k) {
      int n = 2 + static_cast<int>(rng.below(4));
      auto pair = random_majorization_pair(rng, n, rng.uniform(0.2, 0.7 * n));
      double spread =
          sum_rate(m, ThresholdPolicy::from_probabilities(m, pair.majorizing));
      double even =
          sum_rate(m, ThresholdPolicy::from_probabilities(m, pair.majorized));
      CHECK(spread <= even + 1e-8);
    }
  }
}

TEST_CASE("pinching probabilities never raises the rate under the condition") {
  SplitMix64 rng(109);
  RayleighModel m(3, 2.0);
  for (int k = 0; k < 20; ++k) {
    int n = 3 + static_cast<int>(rng.below(3));
    std::vector<double> p(n);
    for (auto& v : p) v = rng.uniform(0.05, 0.95);
    std::sort(p.begin(), p.end(), std::greater<>());
    std::size_t i = rng.below(n - 1);
    double left = (i == 0) ? 1.0 : p[i - 1] - p[i];
    double right = (i + 2 >= p.size()) ? 1.0 : p[i + 1] - p[i + 2];
    double eps = rng.uniform01() * std::min({left, right, 1.0 - p[i], p[i + 1]});
    auto pinched = pinch(p, i, eps);
    double before = sum_rate(m, ThresholdPolicy::from_probabilities(m, p));
    double after =
        sum_rate(m, ThresholdPolicy::from_probabilities(m, pinched));
    CHECK(after <= before + 1e-8);
  }
}
