#include "beamcast/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace beamcast {
namespace {

constexpr double kInvE = 0.36787944117144233;

double halley_step(double w, double z) {
  // w_{n+1} = w - r / (e^w (w+1) - (w+2) r / (2(w+1))), r = w e^w - z
  double ew = std::exp(w);
  double r = w * ew - z;
  double denom = ew * (w + 1.0) - (w + 2.0) * r / (2.0 * (w + 1.0));
  return w - r / denom;
}

double lambert_bisect(double z) {
  // g(w) = w e^w - z is increasing on [-1, inf); bracket and halve.
  double lo = -1.0;
  double hi = 1.0;
  auto g = [z](double w) { return w * std::exp(w) - z; };
  while (g(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lambert_initial_guess(double z) {
  if (z < -0.3235) {
    // expansion around the branch point w(-1/e) = -1
    double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * z));
    return -1.0 + p - p * p / 3.0;
  }
  if (z < 0.5) return z * (1.0 - z + 1.5 * z * z);
  return std::log1p(z);
}

struct Panel {
  double a, b;
  double integral;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 15> fv{};
  fv[14] = f(center);
  for (int j = 0; j < 7; ++j) {
    double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[7 + j] = f(center + dx);
  }

  double resk = kWgk[7] * fv[14];
  double resg = kWg[3] * fv[14];
  double resabs = kWgk[7] * std::abs(fv[14]);
  for (int j = 0; j < 7; ++j) {
    double pair = fv[j] + fv[7 + j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[7 + j]));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * pair;
  }
  double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[14] - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc +=
        kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[7 + j] - reskh));
  }

  double integral = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  err = std::max(err, floor);
  return {a, b, integral, err};
}

double integrate_finite(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec) {
  std::priority_queue<Panel> panels;
  Panel first = gk15(f, a, b);
  double total = first.integral;
  double total_err = first.error;
  panels.push(first);

  int subdivisions = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (!std::isfinite(total)) {
      throw QuadratureError("integrate: non-finite integrand value", total);
    }
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureError(
          "integrate: no convergence after " +
              std::to_string(spec.max_subdivisions) + " subdivisions",
          total);
    }
    Panel worst = panels.top();
    panels.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw QuadratureError("integrate: interval too small to refine", total);
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }
  if (!std::isfinite(total)) {
    throw QuadratureError("integrate: non-finite result", total);
  }
  return total;
}

}  // namespace

double lambert_w0(double z) {
  if (std::isnan(z)) throw std::domain_error("lambert_w0: NaN argument");
  if (z < -kInvE - 1e-12) {
    throw std::domain_error("lambert_w0: argument below -1/e");
  }
  if (z < -kInvE) z = -kInvE;
  if (z == 0.0) return 0.0;

  double w = lambert_initial_guess(z);
  bool fell_back = false;
  for (int i = 0; i < 60; ++i) {
    if (w <= -1.0) {
      w = lambert_bisect(z);
      fell_back = true;
      break;
    }
    double next = halley_step(w, z);
    if (!std::isfinite(next)) {
      w = lambert_bisect(z);
      fell_back = true;
      break;
    }
    double delta = std::abs(next - w);
    w = next;
    if (delta <= 1e-16 * (1.0 + std::abs(w))) break;
  }

  double residual = std::abs(w * std::exp(w) - z);
  if (!fell_back && residual > 1e-12 * std::max(std::abs(z), 1.0)) {
    w = lambert_bisect(z);
  }
  return w;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  if (spec.abs_tol <= 0.0 || spec.rel_tol <= 0.0) {
    throw std::invalid_argument("integrate: tolerances must be positive");
  }
  if (spec.max_subdivisions < 1) {
    throw std::invalid_argument("integrate: max_subdivisions must be >= 1");
  }
  if (std::isnan(a) || std::isnan(b) || std::isinf(a)) {
    throw std::invalid_argument("integrate: bad interval");
  }
  if (a == b) return 0.0;
  if (a > b) throw std::invalid_argument("integrate: requires a < b");

  if (std::isinf(b)) {
    // x = a + t/(1-t) maps [0,1) onto [a, inf); integrands must decay.
    auto g = [&f, a](double t) {
      if (t >= 1.0) return 0.0;
      double onem = 1.0 - t;
      double x = a + t / onem;
      if (!std::isfinite(x)) return 0.0;
      return f(x) / (onem * onem);
    };
    return integrate_finite(g, 0.0, 1.0, spec);
  }
  return integrate_finite(f, a, b, spec);
}

double central_diff(const std::function<double(double)>& f, double x,
                    double h) {
  if (!(h > 0.0)) throw std::invalid_argument("central_diff: h must be > 0");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace beamcast
