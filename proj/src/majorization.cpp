#include "beamcast/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace beamcast {

bool majorizes(std::span<const double> x, std::span<const double> y,
               double tol) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("majorizes: length mismatch");
  }
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());

  double sx = 0.0, sy = 0.0;
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    sx += xs[j];
    sy += ys[j];
    if (sx < sy - tol) return false;
  }
  sx += xs.back();
  sy += ys.back();
  return std::abs(sx - sy) <= tol;
}

std::vector<double> pinch(std::span<const double> z, std::size_t i,
                          double eps) {
  const std::size_t n = z.size();
  if (n < 2 || i + 1 >= n) {
    throw std::invalid_argument("pinch: need components i and i+1");
  }
  double left = (i == 0) ? std::numeric_limits<double>::infinity()
                         : z[i - 1] - z[i];
  double right = (i + 2 >= n) ? std::numeric_limits<double>::infinity()
                              : z[i + 1] - z[i + 2];
  double bound = std::min(left, right);
  if (!(eps >= 0.0) || eps > bound + 1e-15) {
    throw std::invalid_argument("pinch: eps outside the admissible range");
  }
  std::vector<double> out(z.begin(), z.end());
  out[i] += eps;
  out[i + 1] -= eps;
  return out;
}

MajorizationPair random_majorization_pair(SplitMix64& rng, int n,
                                          double total) {
  if (n < 2) {
    throw std::invalid_argument("random_majorization_pair: n must be >= 2");
  }
  if (!(total > 0.0) || total > n) {
    throw std::invalid_argument(
        "random_majorization_pair: total must lie in (0, n]");
  }

  // Random feasible x: scale uniforms to the target total, clipping at 1 and
  // redistributing any excess over the unsaturated components.
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform(0.05, 1.0);
  double remaining = total;
  std::vector<int> open(n);
  for (int k = 0; k < n; ++k) open[k] = k;
  while (!open.empty()) {
    double mass = 0.0;
    for (int k : open) mass += x[k];
    double scale = remaining / mass;
    if (scale <= 1.0) {
      for (int k : open) x[k] *= scale;
      break;
    }
    std::vector<int> still_open;
    for (int k : open) {
      double v = x[k] * scale;
      if (v >= 1.0) {
        x[k] = 1.0;
        remaining -= 1.0;
      } else {
        still_open.push_back(k);
      }
    }
    if (still_open.size() == open.size()) {
      for (int k : open) x[k] *= scale;  // nothing saturated, scale fits
      break;
    }
    open.swap(still_open);
  }

  MajorizationPair pair;
  pair.majorizing = x;
  pair.majorized = x;
  auto& y = pair.majorized;
  int transfers = 1 + static_cast<int>(rng.below(10));
  for (int t = 0; t < transfers; ++t) {
    int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n));
    if (a == b) continue;
    if (y[a] < y[b]) std::swap(a, b);
    double gap = y[a] - y[b];
    double move = rng.uniform01() * 0.5 * gap;  // never crosses
    y[a] -= move;
    y[b] += move;
  }
  return pair;
}

}  // namespace beamcast
