#include <cmath>

#include "beamcast/channel.hpp"
#include "beamcast/numerics.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beamcast;

TEST_CASE("cdf pinned values") {
  RayleighModel m11(1, 1.0);
  CHECK(m11.cdf(0.0) == 0.0);
  CHECK(m11.cdf(-3.0) == 0.0);
  CHECK(m11.cdf(1.0) == doctest::Approx(0.6321205588285577).epsilon(1e-14));
  RayleighModel m21(2, 1.0);
  CHECK(m21.cdf(1.0) == doctest::Approx(0.8160602794142788).epsilon(1e-14));
}

TEST_CASE("cdf shape invariants") {
  for (auto [beams, snr] : {std::pair{1, 1.0}, {2, 0.3}, {4, 7.0}, {8, 100.0}}) {
    RayleighModel m(beams, snr);
    double prev = 0.0;
    for (double x = 0.0; x <= 40.0 * snr; x += 0.37 * snr) {
      double v = m.cdf(x);
      CHECK(v >= prev);
      CHECK(v <= 1.0);
      prev = v;
    }
    CHECK(m.cdf(1e3 * snr * beams) > 1.0 - 1e-6);
  }
}

TEST_CASE("pdf pinned values and boundedness at zero") {
  CHECK(RayleighModel(1, 1.0).pdf(0.0) == doctest::Approx(1.0));
  CHECK(RayleighModel(1, 2.0).pdf(0.0) == doctest::Approx(0.5));
  CHECK(RayleighModel(3, 1.0).pdf(0.0) == doctest::Approx(3.0));
  for (auto [beams, snr] : {std::pair{1, 0.1}, {5, 2.0}, {8, 100.0}}) {
    RayleighModel m(beams, snr);
    CHECK(m.pdf(0.0) == doctest::Approx(1.0 / snr + beams - 1).epsilon(1e-13));
    CHECK(std::isfinite(m.pdf(0.0)));
  }
}

TEST_CASE("pdf equals the numerical derivative of cdf") {
  for (auto [beams, snr] : {std::pair{1, 1.0}, {2, 1.0}, {3, 0.5}, {4, 10.0}}) {
    RayleighModel m(beams, snr);
    for (double x = 0.5; x <= 50.0; x += 1.7) {
      double numeric = central_diff([&](double t) { return m.cdf(t); }, x, 1e-6);
      CHECK(m.pdf(x) == doctest::Approx(numeric).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("pdf_prime pinned values") {
  RayleighModel m(1, 1.0);
  CHECK(m.pdf_prime(0.0) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(m.pdf_prime(1.0) ==
        doctest::Approx(-0.36787944117144233).epsilon(1e-13));
  CHECK(std::abs(RayleighModel(4, 2.0).pdf_prime(200.0)) < 1e-12);
}

TEST_CASE("pdf_prime matches central differences of pdf") {
  for (auto [beams, snr] : {std::pair{1, 1.0}, {2, 1.0}, {3, 0.5}, {4, 10.0}}) {
    RayleighModel m(beams, snr);
    for (double x = 0.1; x <= 50.0; x += 0.9) {
      double numeric = central_diff([&](double t) { return m.pdf(t); }, x, 1e-6);
      CHECK(m.pdf_prime(x) == doctest::Approx(numeric).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("inv_cdf pinned values") {
  CHECK(RayleighModel(1, 1.0).inv_cdf(0.0) == 0.0);
  CHECK(RayleighModel(1, 2.0).inv_cdf(0.5) ==
        doctest::Approx(1.3862943611198906).epsilon(1e-12));
  // independent bisection oracle on the CDF for the Lambert branch
  RayleighModel m21(2, 1.0);
  double ref = oracles::bisect_increasing(
      [&](double t) { return m21.cdf(t) - 0.9; }, 0.0, 100.0);
  CHECK(m21.inv_cdf(0.9) == doctest::Approx(ref).epsilon(1e-10));
  CHECK(std::abs(m21.cdf(m21.inv_cdf(0.9)) - 0.9) < 1e-9);
}

TEST_CASE("inv_cdf round-trip on a 1001-point grid") {
  for (auto [beams, snr] :
       {std::pair{1, 1.0}, {2, 1.0}, {3, 0.2}, {4, 10.0}, {8, 0.01}}) {
    RayleighModel m(beams, snr);
    for (int j = 0; j <= 1000; ++j) {
      double u = 0.999 * j / 1000.0;
      CHECK(std::abs(m.cdf(m.inv_cdf(u)) - u) < 1e-9);
    }
  }
}

TEST_CASE("inv_cdf domain errors") {
  RayleighModel m(2, 1.0);
  CHECK_THROWS_AS(m.inv_cdf(-0.1), std::domain_error);
  CHECK_THROWS_AS(m.inv_cdf(1.0), std::domain_error);
  CHECK_THROWS_AS(m.inv_cdf(1.5), std::domain_error);
}

TEST_CASE("model constructor validation") {
  CHECK_THROWS_AS(RayleighModel(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RayleighModel(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RayleighModel(1, -2.0), std::invalid_argument);
}

TEST_CASE("sampler marginals match the analytic cdf (KS)") {
  const int n = 100000;
  for (auto [beams, snr] : {std::pair{1, 1.0}, {1, 4.0}, {3, 1.0}, {2, 0.5}}) {
    RayleighModel m(beams, snr);
    SplitMix64 rng(777 + beams);
    std::vector<double> beam1(n);
    std::vector<double> row(beams);
    for (int i = 0; i < n; ++i) {
      m.sample_sinr(rng, row);
      for (double v : row) CHECK(v >= 0.0);
      beam1[i] = row[0];
    }
    double d = oracles::ks_statistic(std::move(beam1),
                                     [&](double x) { return m.cdf(x); });
    CHECK(d < 0.01);
  }
}

TEST_CASE("sample_sinr_matrix shape") {
  RayleighModel m(3, 2.0);
  SplitMix64 rng(5);
  auto rows = sample_sinr_matrix(m, 4, rng);
  CHECK(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.size() == 3);
    for (double v : r) CHECK(v >= 0.0);
  }
  CHECK_THROWS_AS(sample_sinr_matrix(m, 0, rng), std::invalid_argument);
}
