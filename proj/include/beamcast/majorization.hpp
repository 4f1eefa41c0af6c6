#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "beamcast/rng.hpp"

namespace beamcast {

/// A vector of feedback probabilities; every component in [0, 1].
using ProbVector = std::vector<double>;

/// True iff x majorizes y: with both sorted descending, every prefix sum of
/// x dominates the matching prefix sum of y and the totals agree. Each
/// comparison carries an absolute tolerance (default 1e-12).
bool majorizes(std::span<const double> x, std::span<const double> y,
               double tol = 1e-12);

/// Moves mass eps from component i+1 to component i of a descending-sorted
/// vector (0-based i, pinching the adjacent pair (i, i+1)). eps must satisfy
/// 0 <= eps <= min(z[i-1]-z[i], z[i+1]-z[i+2]), with the missing bound
/// dropped at either end. The result majorizes the input.
std::vector<double> pinch(std::span<const double> z, std::size_t i,
                          double eps);

struct MajorizationPair {
  ProbVector majorizing;  // x
  ProbVector majorized;   // y, obtained from x by Robin-Hood transfers
};

/// Random pair (x, y) with components in [0, 1], equal totals, and
/// majorizes(x, y). y is built from x by 1-10 transfers that move mass from
/// a larger to a smaller coordinate without letting them cross.
MajorizationPair random_majorization_pair(SplitMix64& rng, int n,
                                          double total);

}  // namespace beamcast
