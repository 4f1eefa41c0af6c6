#include "beamcast/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "beamcast/numerics.hpp"

namespace beamcast {

RayleighModel::RayleighModel(int beams, double snr)
    : beams_(beams), snr_(snr) {
  if (beams < 1) throw std::invalid_argument("RayleighModel: beams must be >= 1");
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw std::invalid_argument("RayleighModel: snr must be positive");
  }
}

double RayleighModel::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;  // support is the positive half line
  if (std::isinf(x)) return 1.0;
  double expo = x / snr_ + (beams_ - 1) * std::log1p(x);
  return -std::expm1(-expo);
}

double RayleighModel::pdf(double x) const {
  if (x < 0.0) return 0.0;
  if (std::isinf(x)) return 0.0;
  double u = x + 1.0;
  double g = u / snr_ + (beams_ - 1);
  return std::exp(-x / snr_ - beams_ * std::log1p(x)) * g;
}

double RayleighModel::pdf_prime(double x) const {
  if (x < 0.0) return 0.0;
  if (std::isinf(x)) return 0.0;
  double u = x + 1.0;
  double g = u / snr_ + (beams_ - 1);
  double bracket = (u / snr_) * (1.0 - g) - beams_ * g;
  return std::exp(-x / snr_ - (beams_ + 1) * std::log1p(x)) * bracket;
}

double RayleighModel::inv_cdf(double u) const {
  if (std::isnan(u) || u < 0.0 || u >= 1.0) {
    throw std::domain_error("inv_cdf: u must lie in [0, 1)");
  }
  u = std::min(u, 1.0 - 1e-12);  // keeps the W argument finite
  if (u == 0.0) return 0.0;
  if (beams_ == 1) return -snr_ * std::log1p(-u);

  const double m = beams_ - 1;
  const double mr = m * snr_;
  // F(t) = u  <=>  (t+1)/mr * exp((t+1)/mr) = exp(1/mr) (1-u)^{-1/m} / mr
  double log_arg = 1.0 / mr - std::log(mr) - std::log1p(-u) / m;
  double w;
  if (log_arg <= 700.0) {
    w = lambert_w0(std::exp(log_arg));
  } else {
    // overflow regime: solve w + log w = log_arg instead
    w = log_arg - std::log(log_arg) + std::log(log_arg) / log_arg;
    for (int i = 0; i < 4; ++i) {
      w -= (w + std::log(w) - log_arg) / (1.0 + 1.0 / w);
    }
  }
  double t = mr * w - 1.0;
  if (t < 0.0) t = 0.0;
  // one Newton polish on the CDF
  double density = pdf(t);
  if (density > 0.0 && std::isfinite(density)) {
    t -= (cdf(t) - u) / density;
    if (t < 0.0) t = 0.0;
  }
  return t;
}

void RayleighModel::sample_sinr(SplitMix64& rng, std::span<double> out) const {
  double total = 0.0;
  for (int k = 0; k < beams_; ++k) {
    out[k] = rng.exponential();  // received signal power on beam k
    total += out[k];
  }
  const double noise = 1.0 / snr_;
  for (int m = 0; m < beams_; ++m) {
    double power = out[m];
    out[m] = power / (noise + (total - power));
  }
}

std::vector<SinrVector> sample_sinr_matrix(const ChannelModel& model,
                                           int n_users, SplitMix64& rng) {
  if (n_users < 1) {
    throw std::invalid_argument("sample_sinr_matrix: n_users must be >= 1");
  }
  std::vector<SinrVector> rows(n_users, SinrVector(model.beams()));
  for (auto& row : rows) model.sample_sinr(rng, row);
  return rows;
}

}  // namespace beamcast
