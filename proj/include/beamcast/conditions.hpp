#pragma once

#include "beamcast/channel.hpp"

namespace beamcast {

/// Margin tolerance for the distribution condition: the rate is certified
/// Schur-concave when every grid margin stays at or below this.
inline constexpr double kConditionMarginTol = 1e-10;

/// Outcome of the numeric Schur-concavity condition check. The margin at
/// probability x is f'(t)(1+t) + f(t) with t = F^{-1}(x); the condition
/// holds when the margin is <= kConditionMarginTol everywhere on the grid.
struct ConditionReport {
  bool holds = false;
  double worst_margin = 0.0;  // largest margin seen
  double witness_x = 0.0;     // grid point attaining it (lowest x on ties)
  int grid_size = 0;
};

/// Checks f'(F^{-1}(x)) <= -f(F^{-1}(x)) / (1 + F^{-1}(x)) on a uniform
/// probability grid over [0, 1 - 1e-6]. Works for any model exposing pdf,
/// pdf_prime and inv_cdf with f bounded at zero.
ConditionReport schur_condition_numeric(const ChannelModel& model,
                                        int grid_size = 1001);

/// Closed-form verdict for the Rayleigh model: the condition holds exactly
/// when M >= 2, or when M = 1 and snr <= 1. (For M = 1 the margin reduces
/// to a positive multiple of snr - (1+t), so it is nonpositive for all
/// t >= 0 iff snr <= 1.)
bool schur_condition_rayleigh(int beams, double snr);

}  // namespace beamcast
