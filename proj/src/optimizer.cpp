#include "beamcast/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace beamcast {
namespace {

double variance(const std::vector<double>& p) {
  double mean = 0.0;
  for (double v : p) mean += v;
  mean /= static_cast<double>(p.size());
  double var = 0.0;
  for (double v : p) var += (v - mean) * (v - mean);
  return var / static_cast<double>(p.size());
}

struct Candidate {
  std::vector<double> p;
  double rate = -1.0;
};

// rate first, then smaller spread, then lexicographic p: a deterministic
// total order for merging starts.
bool better(const Candidate& a, const Candidate& b) {
  if (a.rate > b.rate + 1e-12) return true;
  if (b.rate > a.rate + 1e-12) return false;
  double va = variance(a.p);
  double vb = variance(b.p);
  if (va < vb - 1e-15) return true;
  if (vb < va - 1e-15) return false;
  return a.p < b.p;
}

double total(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

std::vector<double> random_feasible(SplitMix64& rng, int n, double lambda) {
  // scale uniforms onto the constraint face, clipping at 1
  std::vector<double> p(n);
  for (auto& v : p) v = rng.uniform(0.05, 1.0);
  double remaining = lambda;
  std::vector<int> open(n);
  for (int k = 0; k < n; ++k) open[k] = k;
  while (!open.empty()) {
    double mass = 0.0;
    for (int k : open) mass += p[k];
    double scale = remaining / mass;
    if (scale <= 1.0) {
      for (int k : open) p[k] *= scale;
      break;
    }
    std::vector<int> still_open;
    for (int k : open) {
      if (p[k] * scale >= 1.0) {
        p[k] = 1.0;
        remaining -= 1.0;
      } else {
        still_open.push_back(k);
      }
    }
    if (still_open.size() == open.size()) {
      for (int k : open) p[k] *= scale;  // nothing saturated, scale fits
      break;
    }
    open.swap(still_open);
  }
  return p;
}

struct SearchOutcome {
  Candidate best;
  bool converged = false;
  int iterations = 0;
  std::vector<std::pair<std::vector<double>, double>> trace;
};

template <typename Objective>
SearchOutcome pattern_search(Objective&& objective, std::vector<double> p,
                             double lambda, const OptimizeOptions& options) {
  SearchOutcome out;
  double rate = objective(p);
  out.trace.emplace_back(p, rate);

  const int n = static_cast<int>(p.size());
  double step = options.initial_step;
  while (out.iterations < options.max_iters && step >= options.step_tol) {
    ++out.iterations;
    Candidate best_move;
    auto consider = [&](std::vector<double>&& q) {
      double r = objective(q);
      if (r > rate + 1e-13 && (best_move.p.empty() || r > best_move.rate)) {
        best_move.p = std::move(q);
        best_move.rate = r;
      }
    };

    double slack = lambda - total(p);
    for (int i = 0; i < n; ++i) {
      double up = std::min({step, 1.0 - p[i], slack});
      if (up > 1e-15) {
        auto q = p;
        q[i] += up;
        consider(std::move(q));
      }
      double down = std::min(step, p[i]);
      if (down > 1e-15) {
        auto q = p;
        q[i] -= down;
        consider(std::move(q));
      }
    }
    // transfers keep the total fixed, so they can walk the constraint face
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double delta = std::min({step, p[i], 1.0 - p[j]});
        if (delta <= 1e-15) continue;
        auto q = p;
        q[i] -= delta;
        q[j] += delta;
        consider(std::move(q));
      }
    }
    double s = total(p);
    if (s > 0.0 && s < lambda - 1e-15) {
      auto q = p;
      for (auto& v : q) v = std::min(1.0, v * lambda / s);
      if (total(q) <= lambda + 1e-12) consider(std::move(q));
    }

    if (!best_move.p.empty()) {
      p = best_move.p;
      rate = best_move.rate;
      out.trace.emplace_back(p, rate);
    } else {
      step *= 0.5;
    }
  }
  out.converged = step < options.step_tol;
  out.best = {std::move(p), rate};
  return out;
}

}  // namespace

ThresholdPolicy homogeneous_policy(const ChannelModel& model, int n,
                                   double lambda) {
  if (n < 1) throw std::invalid_argument("homogeneous_policy: n must be >= 1");
  if (!(lambda > 0.0) || lambda > n) {
    throw std::invalid_argument("homogeneous_policy: lambda must lie in (0, n]");
  }
  double tau =
      ThresholdPolicy::threshold_for_probability(model, lambda / n);
  return ThresholdPolicy(std::vector<double>(n, tau));
}

OptimizationResult optimize(const ChannelModel& model, int n, double lambda,
                            const OptimizeOptions& options) {
  if (n < 1) throw std::invalid_argument("optimize: n must be >= 1");
  if (!(lambda > 0.0) || lambda > n) {
    throw std::invalid_argument("optimize: lambda must lie in (0, n]");
  }
  if (options.starts < 1) {
    throw std::invalid_argument("optimize: starts must be >= 1");
  }

  auto objective = [&](const std::vector<double>& p) {
    try {
      return sum_rate(model, ThresholdPolicy::from_probabilities(model, p),
                      options.quad);
    } catch (const QuadratureError& e) {
      std::string at = "optimize: quadrature failure at p = [";
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) at += ", ";
        at += std::to_string(p[i]);
      }
      throw QuadratureError(at + "]: " + e.what(), e.partial_estimate());
    }
  };

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, std::min(1.0, lambda / n));  // uniform
  {
    std::vector<double> heavy(n, 0.0);  // mass piled on the first users
    double remaining = lambda;
    for (int i = 0; i < n && remaining > 0.0; ++i) {
      heavy[i] = std::min(1.0, remaining);
      remaining -= heavy[i];
    }
    starts.push_back(std::move(heavy));
  }
  SplitMix64 rng(options.seed);
  while (static_cast<int>(starts.size()) < options.starts) {
    starts.push_back(random_feasible(rng, n, lambda));
  }

  const Candidate homogeneous{starts.front(), objective(starts.front())};

  SearchOutcome winner;
  bool have_winner = false;
  for (const auto& start : starts) {
    SearchOutcome outcome = pattern_search(objective, start, lambda, options);
    if (!have_winner || better(outcome.best, winner.best)) {
      winner = std::move(outcome);
      have_winner = true;
    }
  }
  if (better(homogeneous, winner.best)) {
    winner.best = homogeneous;
    winner.trace = {{homogeneous.p, homogeneous.rate}};
    winner.converged = true;
    winner.iterations = 0;
  }

  OptimizationResult result;
  result.best_p = winner.best.p;
  result.best_thresholds =
      ThresholdPolicy::from_probabilities(model, winner.best.p);
  result.best_rate = winner.best.rate;
  result.load = feedback_load(model, result.best_thresholds);
  result.converged = winner.converged;
  result.iterations = winner.iterations;
  result.trace = std::move(winner.trace);
  return result;
}

TwoUserCurve exhaustive_two_user(const ChannelModel& model, double lambda,
                                 int grid_points, const QuadratureSpec& spec) {
  if (!(lambda > 0.0) || lambda > 2.0) {
    throw std::invalid_argument("exhaustive_two_user: lambda must lie in (0, 2]");
  }
  if (grid_points < 11) {
    throw std::invalid_argument("exhaustive_two_user: need at least 11 grid points");
  }
  const double q_lo = std::max(0.0, lambda - 1.0);
  const double q_hi = 0.5 * lambda;

  TwoUserCurve curve;
  curve.q.reserve(grid_points);
  curve.rate.reserve(grid_points);
  curve.best_rate = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_points; ++j) {
    double q = q_lo + (q_hi - q_lo) * static_cast<double>(j) /
                          static_cast<double>(grid_points - 1);
    std::vector<double> p = {lambda - q, q};
    double rate =
        sum_rate(model, ThresholdPolicy::from_probabilities(model, p), spec);
    curve.q.push_back(q);
    curve.rate.push_back(rate);
    if (rate >= curve.best_rate) {  // ties resolve toward the homogeneous end
      curve.best_rate = rate;
      curve.best_q = q;
    }
  }
  return curve;
}

}  // namespace beamcast
