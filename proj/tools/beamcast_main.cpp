// beamcast: threshold feedback policies for multi-beam broadcast channels.
//
// Subcommands: check (Schur-concavity condition), optimize (threshold
// selection under a feedback constraint), simulate (Monte Carlo vs analytic
// rate), sweep (parameter sweeps as CSV), verify (cross-validation battery).
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
// inconsistency.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beamcast/channel.hpp"
#include "beamcast/conditions.hpp"
#include "beamcast/io.hpp"
#include "beamcast/montecarlo.hpp"
#include "beamcast/numerics.hpp"
#include "beamcast/optimizer.hpp"
#include "beamcast/rate.hpp"
#include "beamcast/verify.hpp"

namespace {

using beamcast::csv_row;
using beamcast::format_real;
using beamcast::json_real;
using beamcast::json_real_array;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

constexpr double kNatsPerBit = 0.6931471805599453;  // log(2)

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty = stdout
  bool bits = false;
};

double rate_out(double nats, const OutputOptions& out) {
  return out.bits ? nats / kNatsPerBit : nats;
}

void emit(const std::string& text, const OutputOptions& out) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + out.path);
  file << text;
}

void emit_json(json doc, const OutputOptions& out) {
  emit(doc.dump(2) + "\n", out);
}

void emit_csv(const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows,
              const OutputOptions& out) {
  std::string text = csv_row(header) + "\n";
  for (const auto& row : rows) text += csv_row(row) + "\n";
  emit(text, out);
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item == "inf" || item == "+inf" || item == "infinity") {
      values.push_back(std::numeric_limits<double>::infinity());
    } else {
      std::size_t pos = 0;
      double v = std::stod(item, &pos);
      if (pos != item.size()) {
        throw std::invalid_argument("bad number in list: '" + item + "'");
      }
      values.push_back(v);
    }
  }
  if (values.empty()) throw std::invalid_argument("empty value list");
  return values;
}

std::string join_reals(const std::vector<double>& values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text += ',';
    text += format_real(values[i]);
  }
  return text;
}

// ---------------------------------------------------------------- check ---

int cmd_check(int beams, double snr, int grid, const OutputOptions& out) {
  beamcast::RayleighModel model(beams, snr);
  bool closed = beamcast::schur_condition_rayleigh(beams, snr);
  beamcast::ConditionReport numeric =
      beamcast::schur_condition_numeric(model, grid);
  bool agree = closed == numeric.holds;

  if (out.format == "csv") {
    emit_csv({"beams", "snr", "grid_size", "closed_form_holds",
              "numeric_holds", "worst_margin", "witness_x", "agree"},
             {{std::to_string(beams), format_real(snr), std::to_string(grid),
               closed ? "true" : "false", numeric.holds ? "true" : "false",
               format_real(numeric.worst_margin),
               format_real(numeric.witness_x), agree ? "true" : "false"}},
             out);
  } else {
    json doc;
    doc["command"] = "check";
    doc["beams"] = beams;
    doc["snr"] = json_real(snr);
    doc["closed_form_holds"] = closed;
    doc["numeric"] = {{"holds", numeric.holds},
                      {"worst_margin", json_real(numeric.worst_margin)},
                      {"witness_x", json_real(numeric.witness_x)},
                      {"grid_size", numeric.grid_size}};
    doc["agree"] = agree;
    emit_json(doc, out);
  }
  if (!agree) {
    std::cerr << "check: closed-form and numeric verdicts disagree\n";
    return kExitInternal;
  }
  return kExitOk;
}

// ------------------------------------------------------------- optimize ---

int cmd_optimize(int beams, double snr, int users, double lambda,
                 const beamcast::OptimizeOptions& opts,
                 const OutputOptions& out) {
  beamcast::RayleighModel model(beams, snr);
  beamcast::OptimizationResult result =
      beamcast::optimize(model, users, lambda, opts);
  beamcast::ThresholdPolicy homogeneous =
      beamcast::homogeneous_policy(model, users, lambda);
  double homogeneous_rate = beamcast::sum_rate(model, homogeneous, opts.quad);

  if (out.format == "csv") {
    emit_csv(
        {"users", "lambda", "beams", "snr", "best_rate", "homogeneous_rate",
         "load", "converged", "iterations", "best_p", "best_thresholds"},
        {{std::to_string(users), format_real(lambda), std::to_string(beams),
          format_real(snr), format_real(rate_out(result.best_rate, out)),
          format_real(rate_out(homogeneous_rate, out)),
          format_real(result.load), result.converged ? "true" : "false",
          std::to_string(result.iterations), join_reals(result.best_p),
          join_reals(result.best_thresholds.thresholds)}},
        out);
  } else {
    json doc;
    doc["command"] = "optimize";
    doc["beams"] = beams;
    doc["snr"] = json_real(snr);
    doc["users"] = users;
    doc["lambda"] = json_real(lambda);
    doc["seed"] = opts.seed;
    doc["starts"] = opts.starts;
    doc["best_p"] = json_real_array(result.best_p);
    doc["best_thresholds"] = json_real_array(result.best_thresholds.thresholds);
    doc["best_rate"] = json_real(rate_out(result.best_rate, out));
    doc["load"] = json_real(result.load);
    doc["converged"] = result.converged;
    doc["iterations"] = result.iterations;
    doc["homogeneous_rate"] = json_real(rate_out(homogeneous_rate, out));
    doc["improvement_over_homogeneous"] =
        json_real(rate_out(result.best_rate - homogeneous_rate, out));
    doc["rate_units"] = out.bits ? "bits" : "nats";
    emit_json(doc, out);
  }
  return kExitOk;
}

// ------------------------------------------------------------- simulate ---

int cmd_simulate(int beams, double snr, const std::vector<double>& thresholds,
                 std::int64_t samples, std::uint64_t seed, bool best_beam_only,
                 const OutputOptions& out) {
  beamcast::RayleighModel model(beams, snr);
  beamcast::ThresholdPolicy policy(thresholds);
  beamcast::SimulateOptions sim_opts;
  sim_opts.best_beam_only = best_beam_only;
  beamcast::RateEstimate est =
      beamcast::simulate(model, policy, samples, seed, sim_opts);
  double analytic_rate = beamcast::sum_rate(model, policy);
  double analytic_load = beamcast::feedback_load(model, policy);
  double rate_sigma = est.std_error > 0.0
                          ? (est.mean_rate - analytic_rate) / est.std_error
                          : 0.0;
  double load_sigma =
      est.load_std_error > 0.0
          ? (est.mean_load - analytic_load) / est.load_std_error
          : 0.0;

  if (out.format == "csv") {
    emit_csv({"beams", "snr", "samples", "seed", "mc_rate", "mc_rate_se",
              "analytic_rate", "rate_discrepancy_sigma", "mc_load",
              "mc_load_se", "analytic_load", "load_discrepancy_sigma",
              "thresholds"},
             {{std::to_string(beams), format_real(snr),
               std::to_string(samples), std::to_string(seed),
               format_real(rate_out(est.mean_rate, out)),
               format_real(rate_out(est.std_error, out)),
               format_real(rate_out(analytic_rate, out)),
               format_real(rate_sigma), format_real(est.mean_load),
               format_real(est.load_std_error), format_real(analytic_load),
               format_real(load_sigma), join_reals(thresholds)}},
             out);
  } else {
    json doc;
    doc["command"] = "simulate";
    doc["beams"] = beams;
    doc["snr"] = json_real(snr);
    doc["thresholds"] = json_real_array(thresholds);
    doc["samples"] = samples;
    doc["seed"] = seed;
    doc["best_beam_only"] = best_beam_only;
    doc["mc"] = {{"mean_rate", json_real(rate_out(est.mean_rate, out))},
                 {"std_error", json_real(rate_out(est.std_error, out))},
                 {"mean_load", json_real(est.mean_load)},
                 {"load_std_error", json_real(est.load_std_error)},
                 {"per_beam_rate", json_real_array(est.per_beam_rate)},
                 {"per_beam_se", json_real_array(est.per_beam_se)}};
    doc["analytic"] = {{"sum_rate", json_real(rate_out(analytic_rate, out))},
                       {"feedback_load", json_real(analytic_load)}};
    doc["rate_discrepancy_sigma"] = json_real(rate_sigma);
    doc["load_discrepancy_sigma"] = json_real(load_sigma);
    doc["rate_units"] = out.bits ? "bits" : "nats";
    emit_json(doc, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweep ---

struct SweepConfig {
  std::string axis;
  double from = 0.0;
  double to = 1.0;
  int points = 21;
  int beams = 1;
  double snr = 1.0;
  int users = 2;
  double lambda = 1.0;
  bool with_mc = false;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
};

int cmd_sweep(const SweepConfig& cfg, const OutputOptions& out) {
  if (cfg.points < 2) throw std::invalid_argument("sweep: need >= 2 points");
  if (!(cfg.from <= cfg.to)) {
    throw std::invalid_argument("sweep: need from <= to");
  }

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json json_rows = json::array();

  if (cfg.axis == "q") {
    beamcast::RayleighModel model(cfg.beams, cfg.snr);
    beamcast::TwoUserCurve curve =
        beamcast::exhaustive_two_user(model, cfg.lambda, cfg.points);
    header = {"q", "p_low_user", "p_high_user", "lambda", "beams",
              "snr", "rate", "is_best"};
    if (cfg.with_mc) {
      header.push_back("mc_rate");
      header.push_back("mc_rate_se");
    }
    for (std::size_t i = 0; i < curve.q.size(); ++i) {
      double q = curve.q[i];
      bool best = q == curve.best_q;
      std::vector<std::string> row = {
          format_real(q), format_real(cfg.lambda - q), format_real(q),
          format_real(cfg.lambda), std::to_string(cfg.beams),
          format_real(cfg.snr), format_real(rate_out(curve.rate[i], out)),
          best ? "1" : "0"};
      json jrow = {{"q", json_real(q)},
                   {"rate", json_real(rate_out(curve.rate[i], out))},
                   {"is_best", best}};
      if (cfg.with_mc) {
        std::vector<double> p = {cfg.lambda - q, q};
        beamcast::RateEstimate est = beamcast::simulate(
            model, beamcast::ThresholdPolicy::from_probabilities(model, p),
            cfg.samples,
            beamcast::substream_key(cfg.seed, static_cast<std::uint64_t>(i)));
        row.push_back(format_real(rate_out(est.mean_rate, out)));
        row.push_back(format_real(rate_out(est.std_error, out)));
        jrow["mc_rate"] = json_real(rate_out(est.mean_rate, out));
        jrow["mc_rate_se"] = json_real(rate_out(est.std_error, out));
      }
      rows.push_back(std::move(row));
      json_rows.push_back(std::move(jrow));
    }
  } else if (cfg.axis == "snr" || cfg.axis == "lambda") {
    header = {"axis", "snr", "lambda", "beams", "users",
              "rate", "load", "condition_holds"};
    if (cfg.with_mc) {
      header.push_back("mc_rate");
      header.push_back("mc_rate_se");
    }
    for (int j = 0; j < cfg.points; ++j) {
      double v = cfg.from + (cfg.to - cfg.from) * j / (cfg.points - 1);
      double snr = cfg.axis == "snr" ? v : cfg.snr;
      double lambda = cfg.axis == "lambda" ? v : cfg.lambda;
      beamcast::RayleighModel model(cfg.beams, snr);

      double rate = 0.0;
      double load = 0.0;
      bool have_policy = lambda > 0.0;
      beamcast::ThresholdPolicy policy;
      if (have_policy) {
        policy = beamcast::homogeneous_policy(model, cfg.users, lambda);
        rate = beamcast::sum_rate(model, policy);
        load = beamcast::feedback_load(model, policy);
      }
      bool condition = beamcast::schur_condition_rayleigh(cfg.beams, snr);

      std::vector<std::string> row = {
          cfg.axis,           format_real(snr),
          format_real(lambda), std::to_string(cfg.beams),
          std::to_string(cfg.users), format_real(rate_out(rate, out)),
          format_real(load),  condition ? "true" : "false"};
      json jrow = {{"snr", json_real(snr)},
                   {"lambda", json_real(lambda)},
                   {"rate", json_real(rate_out(rate, out))},
                   {"load", json_real(load)},
                   {"condition_holds", condition}};
      if (cfg.with_mc) {
        double mc_rate = 0.0;
        double mc_se = 0.0;
        if (have_policy) {
          beamcast::RateEstimate est = beamcast::simulate(
              model, policy, cfg.samples,
              beamcast::substream_key(cfg.seed, static_cast<std::uint64_t>(j)));
          mc_rate = est.mean_rate;
          mc_se = est.std_error;
        }
        row.push_back(format_real(rate_out(mc_rate, out)));
        row.push_back(format_real(rate_out(mc_se, out)));
        jrow["mc_rate"] = json_real(rate_out(mc_rate, out));
        jrow["mc_rate_se"] = json_real(rate_out(mc_se, out));
      }
      rows.push_back(std::move(row));
      json_rows.push_back(std::move(jrow));
    }
  } else {
    throw std::invalid_argument("sweep: axis must be one of snr, lambda, q");
  }

  if (out.format == "json") {
    json doc;
    doc["command"] = "sweep";
    doc["axis"] = cfg.axis;
    doc["rate_units"] = out.bits ? "bits" : "nats";
    doc["rows"] = std::move(json_rows);
    emit_json(doc, out);
  } else {
    emit_csv(header, rows, out);
  }
  return kExitOk;
}

// --------------------------------------------------------------- verify ---

int cmd_verify(const beamcast::VerifyOptions& opts, const OutputOptions& out) {
  std::vector<beamcast::CheckResult> results;
  results.push_back(beamcast::check_single_beam_boundary());
  std::cerr << "[verify] " << results.back().name << ": "
            << (results.back().passed ? "pass" : "FAIL") << " ("
            << results.back().seconds << " s)\n";
  results.push_back(beamcast::check_multi_beam_coverage());
  std::cerr << "[verify] " << results.back().name << ": "
            << (results.back().passed ? "pass" : "FAIL") << " ("
            << results.back().seconds << " s)\n";
  results.push_back(beamcast::check_mc_agreement(opts));
  std::cerr << "[verify] " << results.back().name << ": "
            << (results.back().passed ? "pass" : "FAIL") << " ("
            << results.back().seconds << " s)\n";
  results.push_back(beamcast::check_conditional_continuity(opts));
  std::cerr << "[verify] " << results.back().name << ": "
            << (results.back().passed ? "pass" : "FAIL") << " ("
            << results.back().seconds << " s)\n";
  results.push_back(beamcast::check_schur_ordering(opts));
  std::cerr << "[verify] " << results.back().name << ": "
            << (results.back().passed ? "pass" : "FAIL") << " ("
            << results.back().seconds << " s)\n";

  bool passed = beamcast::all_passed(results);
  json doc;
  doc["command"] = "verify";
  doc["seed"] = opts.seed;
  doc["passed"] = passed;
  json checks = json::array();
  for (const auto& r : results) {
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"flagged", r.flagged},
                      {"detail", r.detail}});
  }
  doc["checks"] = std::move(checks);
  emit_json(doc, out);
  return passed ? kExitOk : kExitVerifyFailure;
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", out.path, "Write output to this path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Threshold feedback policies for multi-beam vector broadcast channels"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand(
      "check", "Check the Schur-concavity condition for a Rayleigh model");
  int check_beams = 1;
  double check_snr = 1.0;
  int check_grid = 1001;
  OutputOptions check_out;
  check->add_option("--beams,-M", check_beams, "Number of beams")->required();
  check->add_option("--snr", check_snr, "SNR parameter rho")->required();
  check->add_option("--grid", check_grid, "Probability-grid size");
  add_output_flags(check, check_out);

  // optimize
  auto* optimize = app.add_subcommand(
      "optimize", "Maximize the sum rate under the feedback constraint");
  int opt_beams = 1, opt_users = 2;
  double opt_snr = 1.0, opt_lambda = 1.0;
  beamcast::OptimizeOptions opt_opts;
  OutputOptions opt_out;
  optimize->add_option("--beams,-M", opt_beams, "Number of beams")->required();
  optimize->add_option("--snr", opt_snr, "SNR parameter rho")->required();
  optimize->add_option("--users,-n", opt_users, "Number of users")->required();
  optimize->add_option("--lambda", opt_lambda, "Feedback constraint")
      ->required();
  optimize->add_option("--starts", opt_opts.starts, "Multi-start count");
  optimize->add_option("--step-tol", opt_opts.step_tol, "Convergence step");
  optimize->add_option("--max-iters", opt_opts.max_iters, "Sweep budget");
  optimize->add_option("--seed", opt_opts.seed, "Random-start seed");
  optimize->add_flag("--bits", opt_out.bits, "Report rates in bits");
  add_output_flags(optimize, opt_out);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo rate/load estimate vs the analytic values");
  int sim_beams = 1, sim_users = 0;
  double sim_snr = 1.0, sim_lambda = 0.0;
  std::string sim_thresholds, sim_probs;
  std::int64_t sim_samples = 1000000;
  std::uint64_t sim_seed = 1;
  bool sim_best_beam = false;
  OutputOptions sim_out;
  simulate->add_option("--beams,-M", sim_beams, "Number of beams")->required();
  simulate->add_option("--snr", sim_snr, "SNR parameter rho")->required();
  simulate->add_option("--thresholds", sim_thresholds,
                       "Comma-separated thresholds (inf allowed)");
  simulate->add_option("--probs", sim_probs,
                       "Comma-separated feedback probabilities");
  simulate->add_option("--users,-n", sim_users,
                       "Users for a homogeneous policy (with --lambda)");
  simulate->add_option("--lambda", sim_lambda,
                       "Feedback level for a homogeneous policy");
  simulate->add_option("--samples", sim_samples, "Monte Carlo sample count");
  simulate->add_option("--seed", sim_seed, "Simulation seed");
  simulate->add_flag("--best-beam-only", sim_best_beam,
                     "Users report only their best beam");
  simulate->add_flag("--bits", sim_out.bits, "Report rates in bits");
  add_output_flags(simulate, sim_out);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Emit a parameter sweep as a table");
  SweepConfig sweep_cfg;
  OutputOptions sweep_out;
  sweep_out.format = "csv";
  sweep->add_option("--axis", sweep_cfg.axis, "Sweep axis: snr, lambda or q")
      ->required()
      ->check(CLI::IsMember({"snr", "lambda", "q"}));
  sweep->add_option("--from", sweep_cfg.from, "Axis start");
  sweep->add_option("--to", sweep_cfg.to, "Axis end");
  sweep->add_option("--points", sweep_cfg.points, "Grid points");
  sweep->add_option("--beams,-M", sweep_cfg.beams, "Number of beams");
  sweep->add_option("--snr", sweep_cfg.snr, "Fixed SNR (lambda/q sweeps)");
  sweep->add_option("--users,-n", sweep_cfg.users, "Users (snr/lambda sweeps)");
  sweep->add_option("--lambda", sweep_cfg.lambda,
                    "Fixed feedback level (snr/q sweeps)");
  sweep->add_flag("--mc", sweep_cfg.with_mc, "Add Monte Carlo columns");
  sweep->add_option("--samples", sweep_cfg.samples, "MC samples per row");
  sweep->add_option("--seed", sweep_cfg.seed, "MC seed");
  bool sweep_bits = false;
  sweep->add_flag("--bits", sweep_bits, "Report rates in bits");
  add_output_flags(sweep, sweep_out);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Run the full analytic-vs-simulation cross-validation battery");
  beamcast::VerifyOptions verify_opts;
  bool verify_quick = false;
  OutputOptions verify_out;
  verify->add_option("--seed", verify_opts.seed, "Battery seed");
  verify->add_option("--samples", verify_opts.mc_samples,
                     "MC samples per agreement config");
  verify->add_option("--configs", verify_opts.mc_configs,
                     "Number of MC agreement configs");
  verify->add_option("--draws", verify_opts.continuity_draws,
                     "Continuity draws");
  verify->add_option("--pairs", verify_opts.schur_pairs,
                     "Majorization pairs per model");
  verify->add_flag("--quick", verify_quick, "Reduced battery for smoke runs");
  verify->add_flag("--inject-failure", verify_opts.inject_failure)
      ->group("");  // hidden testing hook
  add_output_flags(verify, verify_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) {
      return cmd_check(check_beams, check_snr, check_grid, check_out);
    }
    if (*optimize) {
      return cmd_optimize(opt_beams, opt_snr, opt_users, opt_lambda, opt_opts,
                          opt_out);
    }
    if (*simulate) {
      int given = (!sim_thresholds.empty() ? 1 : 0) +
                  (!sim_probs.empty() ? 1 : 0) + (sim_users > 0 ? 1 : 0);
      if (given != 1) {
        throw std::invalid_argument(
            "simulate: give exactly one of --thresholds, --probs, or "
            "--users with --lambda");
      }
      beamcast::RayleighModel model(sim_beams, sim_snr);
      std::vector<double> thresholds;
      if (!sim_thresholds.empty()) {
        thresholds = parse_real_list(sim_thresholds);
      } else if (!sim_probs.empty()) {
        thresholds = beamcast::ThresholdPolicy::from_probabilities(
                         model, parse_real_list(sim_probs))
                         .thresholds;
      } else {
        thresholds =
            beamcast::homogeneous_policy(model, sim_users, sim_lambda)
                .thresholds;
      }
      return cmd_simulate(sim_beams, sim_snr, thresholds, sim_samples,
                          sim_seed, sim_best_beam, sim_out);
    }
    if (*sweep) {
      sweep_out.bits = sweep_bits;
      return cmd_sweep(sweep_cfg, sweep_out);
    }
    if (*verify) {
      if (verify_quick) {
        verify_opts.mc_samples = std::min<std::int64_t>(
            verify_opts.mc_samples, 100000);
        verify_opts.mc_configs = std::min(verify_opts.mc_configs, 8);
        verify_opts.continuity_draws =
            std::min(verify_opts.continuity_draws, 20);
        verify_opts.schur_pairs = std::min(verify_opts.schur_pairs, 30);
      }
      return cmd_verify(verify_opts, verify_out);
    }
  } catch (const beamcast::QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
