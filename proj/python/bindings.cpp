#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "beamcast/channel.hpp"
#include "beamcast/conditions.hpp"
#include "beamcast/majorization.hpp"
#include "beamcast/montecarlo.hpp"
#include "beamcast/numerics.hpp"
#include "beamcast/optimizer.hpp"
#include "beamcast/rate.hpp"

namespace py = pybind11;
using namespace beamcast;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Threshold feedback policies for multi-beam vector broadcast channels: "
      "SINR distributions, analytic rate functionals, Schur-concavity "
      "condition checks, threshold optimization, and Monte Carlo validation.";

  m.def("lambert_w0", &lambert_w0, py::arg("z"),
        "Principal branch of the Lambert W function.");

  py::class_<RayleighModel>(m, "RayleighModel",
                            "Per-beam SINR distribution for opportunistic "
                            "beamforming over Rayleigh fading.")
      .def(py::init<int, double>(), py::arg("beams"), py::arg("snr"))
      .def_property_readonly("beams", &RayleighModel::beams)
      .def_property_readonly("snr", &RayleighModel::snr)
      .def("cdf", &RayleighModel::cdf, py::arg("x"))
      .def("pdf", &RayleighModel::pdf, py::arg("x"))
      .def("pdf_prime", &RayleighModel::pdf_prime, py::arg("x"))
      .def("inv_cdf", &RayleighModel::inv_cdf, py::arg("u"))
      .def("__repr__", [](const RayleighModel& model) {
        return "RayleighModel(beams=" + std::to_string(model.beams()) +
               ", snr=" + std::to_string(model.snr()) + ")";
      });

  m.def(
      "sample_sinr_matrix",
      [](const RayleighModel& model, int n_users, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return sample_sinr_matrix(model, n_users, rng);
      },
      py::arg("model"), py::arg("n_users"), py::arg("seed"),
      "n_users x beams matrix of jointly sampled SINRs.");

  m.def(
      "majorizes",
      [](const std::vector<double>& x, const std::vector<double>& y,
         double tol) { return majorizes(x, y, tol); },
      py::arg("x"), py::arg("y"), py::arg("tol") = 1e-12);
  m.def(
      "pinch",
      [](const std::vector<double>& z, std::size_t i, double eps) {
        return pinch(z, i, eps);
      },
      py::arg("z"), py::arg("i"), py::arg("eps"),
      "Moves eps from component i+1 to component i of a descending vector.");
  m.def(
      "random_majorization_pair",
      [](std::uint64_t seed, int n, double total) {
        SplitMix64 rng(seed);
        MajorizationPair pair = random_majorization_pair(rng, n, total);
        return py::make_tuple(pair.majorizing, pair.majorized);
      },
      py::arg("seed"), py::arg("n"), py::arg("total"),
      "(x, y) with equal totals and x majorizing y.");

  py::class_<ThresholdPolicy>(m, "ThresholdPolicy",
                              "Per-user feedback thresholds; float('inf') "
                              "means the user never feeds back.")
      .def(py::init<std::vector<double>>(), py::arg("thresholds"))
      .def_readonly("thresholds", &ThresholdPolicy::thresholds)
      .def_static(
          "from_probabilities",
          [](const RayleighModel& model, const std::vector<double>& p) {
            return ThresholdPolicy::from_probabilities(model, p);
          },
          py::arg("model"), py::arg("p"))
      .def("probabilities", &ThresholdPolicy::probabilities, py::arg("model"))
      .def("__len__",
           [](const ThresholdPolicy& policy) { return policy.size(); });
  py::implicitly_convertible<std::vector<double>, ThresholdPolicy>();

  m.def(
      "truncated_cdf",
      [](const RayleighModel& model, double tau, double y) {
        return truncated_cdf(model, tau, y);
      },
      py::arg("model"), py::arg("tau"), py::arg("y"));
  m.def(
      "beam_rate",
      [](const RayleighModel& model, const ThresholdPolicy& policy) {
        return beam_rate(model, policy);
      },
      py::arg("model"), py::arg("policy"),
      "Ergodic rate on one beam, in nats.");
  m.def(
      "sum_rate",
      [](const RayleighModel& model, const ThresholdPolicy& policy) {
        return sum_rate(model, policy);
      },
      py::arg("model"), py::arg("policy"),
      "Ergodic sum rate over all beams, in nats.");
  m.def(
      "feedback_load",
      [](const RayleighModel& model, const ThresholdPolicy& policy) {
        return feedback_load(model, policy);
      },
      py::arg("model"), py::arg("policy"),
      "Average number of users feeding back per beam.");
  m.def(
      "g_const",
      [](const RayleighModel& model, double y) { return g_const(model, y); },
      py::arg("model"), py::arg("y"));
  m.def(
      "r1_cond",
      [](const RayleighModel& model, double tau_low, double tau_high,
         double y) {
        return r1_cond(model, {tau_low, tau_high, y, 0.0});
      },
      py::arg("model"), py::arg("tau_low"), py::arg("tau_high"), py::arg("y"),
      "Conditional pair rate for y < tau_low.");
  m.def(
      "r2_cond",
      [](const RayleighModel& model, double tau_low, double tau_high,
         double y) {
        return r2_cond(model, {tau_low, tau_high, y, 0.0});
      },
      py::arg("model"), py::arg("tau_low"), py::arg("tau_high"), py::arg("y"),
      "Conditional pair rate for tau_low <= y <= tau_high.");
  m.def(
      "conditional_rate_q",
      [](const RayleighModel& model, double q, double lambda_pair, double y) {
        return conditional_rate_q(model, q, lambda_pair, y);
      },
      py::arg("model"), py::arg("q"), py::arg("lambda_pair"), py::arg("y"),
      "Pair rate as a function of the smaller feedback probability q.");

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("holds", &ConditionReport::holds)
      .def_readonly("worst_margin", &ConditionReport::worst_margin)
      .def_readonly("witness_x", &ConditionReport::witness_x)
      .def_readonly("grid_size", &ConditionReport::grid_size)
      .def("__repr__", [](const ConditionReport& r) {
        return std::string("ConditionReport(holds=") +
               (r.holds ? "True" : "False") +
               ", worst_margin=" + std::to_string(r.worst_margin) + ")";
      });
  m.def(
      "schur_condition_numeric",
      [](const RayleighModel& model, int grid_size) {
        return schur_condition_numeric(model, grid_size);
      },
      py::arg("model"), py::arg("grid_size") = 1001);
  m.def("schur_condition_rayleigh", &schur_condition_rayleigh,
        py::arg("beams"), py::arg("snr"));

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("best_p", &OptimizationResult::best_p)
      .def_property_readonly("best_thresholds",
                             [](const OptimizationResult& r) {
                               return r.best_thresholds.thresholds;
                             })
      .def_readonly("best_rate", &OptimizationResult::best_rate)
      .def_readonly("load", &OptimizationResult::load)
      .def_readonly("converged", &OptimizationResult::converged)
      .def_readonly("iterations", &OptimizationResult::iterations)
      .def_readonly("trace", &OptimizationResult::trace);
  m.def(
      "homogeneous_policy",
      [](const RayleighModel& model, int n, double lambda) {
        return homogeneous_policy(model, n, lambda);
      },
      py::arg("model"), py::arg("n"), py::arg("lam"),
      "All thresholds at F^{-1}(1 - lam/n).");
  m.def(
      "optimize",
      [](const RayleighModel& model, int n, double lambda, int starts,
         double step_tol, int max_iters, std::uint64_t seed) {
        OptimizeOptions options;
        options.starts = starts;
        options.step_tol = step_tol;
        options.max_iters = max_iters;
        options.seed = seed;
        return optimize(model, n, lambda, options);
      },
      py::arg("model"), py::arg("n"), py::arg("lam"), py::arg("starts") = 8,
      py::arg("step_tol") = 1e-4, py::arg("max_iters") = 400,
      py::arg("seed") = 0x5bea3ca57ull,
      "Multi-start pattern search for the constrained sum-rate maximum.");

  py::class_<TwoUserCurve>(m, "TwoUserCurve")
      .def_readonly("q", &TwoUserCurve::q)
      .def_readonly("rate", &TwoUserCurve::rate)
      .def_readonly("best_q", &TwoUserCurve::best_q)
      .def_readonly("best_rate", &TwoUserCurve::best_rate);
  m.def(
      "exhaustive_two_user",
      [](const RayleighModel& model, double lambda, int grid_points) {
        return exhaustive_two_user(model, lambda, grid_points);
      },
      py::arg("model"), py::arg("lam"), py::arg("grid_points") = 2001);

  py::class_<RateEstimate>(m, "RateEstimate")
      .def_readonly("mean_rate", &RateEstimate::mean_rate)
      .def_readonly("std_error", &RateEstimate::std_error)
      .def_readonly("mean_load", &RateEstimate::mean_load)
      .def_readonly("load_std_error", &RateEstimate::load_std_error)
      .def_readonly("samples", &RateEstimate::samples)
      .def_readonly("seed", &RateEstimate::seed)
      .def_readonly("per_beam_rate", &RateEstimate::per_beam_rate)
      .def_readonly("per_beam_se", &RateEstimate::per_beam_se)
      .def("__repr__", [](const RateEstimate& e) {
        return "RateEstimate(mean_rate=" + std::to_string(e.mean_rate) +
               ", std_error=" + std::to_string(e.std_error) + ")";
      });
  m.def(
      "simulate",
      [](const RayleighModel& model, const ThresholdPolicy& policy,
         std::int64_t samples, std::uint64_t seed, bool best_beam_only) {
        SimulateOptions options;
        options.best_beam_only = best_beam_only;
        return simulate(model, policy, samples, seed, options);
      },
      py::arg("model"), py::arg("policy"), py::arg("samples"), py::arg("seed"),
      py::arg("best_beam_only") = false,
      "Event-level Monte Carlo estimate of the ergodic sum rate and load.");
  m.def(
      "simulate_pair_conditional",
      [](const RayleighModel& model, double tau_low, double tau_high, double y,
         std::int64_t samples, std::uint64_t seed) {
        return simulate_pair_conditional(model, tau_low, tau_high, y, samples,
                                         seed);
      },
      py::arg("model"), py::arg("tau_low"), py::arg("tau_high"), py::arg("y"),
      py::arg("samples"), py::arg("seed"),
      "Monte Carlo oracle for the conditional pair rates.");

#ifdef VERSION_INFO
#define BEAMCAST_STR(x) #x
#define BEAMCAST_XSTR(x) BEAMCAST_STR(x)
  m.attr("__version__") = BEAMCAST_XSTR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
