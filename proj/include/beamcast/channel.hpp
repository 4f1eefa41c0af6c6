#pragma once

#include <memory>
#include <span>
#include <vector>

#include "beamcast/rng.hpp"

namespace beamcast {

/// One user's per-beam SINR values.
using SinrVector = std::vector<double>;

/// Fading-channel SINR model: the marginal distribution of a single beam's
/// SINR (CDF, density, density derivative, inverse CDF) plus a joint sampler
/// for one user's full SINR vector. Everything downstream (rate functionals,
/// the Schur-concavity checker, the simulator) works against this interface;
/// RayleighModel is the one shipped implementation.
class ChannelModel {
 public:
  virtual ~ChannelModel() = default;

  virtual int beams() const = 0;

  /// Marginal CDF F(x). Zero for x <= 0.
  virtual double cdf(double x) const = 0;

  /// Marginal density f(x) for x >= 0; finite at zero.
  virtual double pdf(double x) const = 0;

  /// Analytic derivative f'(x) for x >= 0.
  virtual double pdf_prime(double x) const = 0;

  /// Quantile F^{-1}(u) for u in [0, 1). Throws std::domain_error outside.
  virtual double inv_cdf(double u) const = 0;

  /// Draws one user's SINR vector (beams() entries) into out. Components
  /// within a row are dependent through shared interference; each has
  /// marginal F.
  virtual void sample_sinr(SplitMix64& rng, std::span<double> out) const = 0;
};

/// SINR model for opportunistic beamforming over Rayleigh fading with
/// unit-power signals: M beams, background noise power 1/snr. The beam-m
/// SINR at a user is X_m / (1/snr + sum_{k != m} X_k) with i.i.d. unit-mean
/// exponential signal powers X_k, giving the marginal
///   F(x) = 1 - exp(-x/snr) / (x+1)^{M-1},  x > 0.
class RayleighModel final : public ChannelModel {
 public:
  RayleighModel(int beams, double snr);

  int beams() const override { return beams_; }
  double snr() const { return snr_; }

  double cdf(double x) const override;
  double pdf(double x) const override;
  double pdf_prime(double x) const override;
  double inv_cdf(double u) const override;
  void sample_sinr(SplitMix64& rng, std::span<double> out) const override;

 private:
  int beams_;
  double snr_;
};

/// Draws n_users independent SINR vectors (rows) from the model.
std::vector<SinrVector> sample_sinr_matrix(const ChannelModel& model,
                                           int n_users, SplitMix64& rng);

}  // namespace beamcast
