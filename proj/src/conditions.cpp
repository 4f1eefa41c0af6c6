#include "beamcast/conditions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace beamcast {

ConditionReport schur_condition_numeric(const ChannelModel& model,
                                        int grid_size) {
  if (grid_size < 100) {
    throw std::invalid_argument("schur_condition_numeric: grid_size must be >= 100");
  }
  // Uniform in probability space; the open end stops at 1 - 1e-6 because
  // F^{-1}(1) diverges.
  const double x_max = 1.0 - 1e-6;
  ConditionReport report;
  report.grid_size = grid_size;
  report.worst_margin = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_size; ++j) {
    double x = x_max * static_cast<double>(j) / (grid_size - 1);
    double t = model.inv_cdf(x);
    double margin = model.pdf_prime(t) * (1.0 + t) + model.pdf(t);
    if (margin > report.worst_margin) {
      report.worst_margin = margin;
      report.witness_x = x;
    }
  }
  report.holds = report.worst_margin <= kConditionMarginTol;
  return report;
}

bool schur_condition_rayleigh(int beams, double snr) {
  if (beams < 1) {
    throw std::invalid_argument("schur_condition_rayleigh: beams must be >= 1");
  }
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw std::invalid_argument("schur_condition_rayleigh: snr must be positive");
  }
  return beams >= 2 || snr <= 1.0;
}

}  // namespace beamcast
