#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace beamcast {

/// Tolerances and subdivision budget for adaptive quadrature.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;
};

/// Thrown when the adaptive integrator exhausts its subdivision budget or
/// meets a non-finite integrand. Carries the best estimate so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& message, double partial_estimate)
      : std::runtime_error(message), partial_estimate_(partial_estimate) {}
  double partial_estimate() const { return partial_estimate_; }

 private:
  double partial_estimate_;
};

/// Principal branch of the Lambert W function, w with w*exp(w) = z, for
/// z >= -1/e. Halley iteration from a piecewise initial guess, with a
/// bisection fallback if an iterate ever leaves the w >= -1 branch.
/// Relative residual |w*e^w - z| / max(|z|, 1) stays below 1e-12.
double lambert_w0(double z);

/// Adaptive Gauss-Kronrod (7-15) integration of f over (a, b). Pass
/// b = +infinity for a semi-infinite range; it is folded onto [0, 1) via
/// x = a + t/(1-t). The integrand must be finite and piecewise continuous;
/// callers split at known breakpoints themselves.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Symmetric difference quotient (f(x+h) - f(x-h)) / (2h).
double central_diff(const std::function<double(double)>& f, double x,
                    double h);

}  // namespace beamcast
