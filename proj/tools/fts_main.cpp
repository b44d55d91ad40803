// Command-line front end: certificate checks, simulations, eta sweeps and
// fixed-point verification for delayed fractional-order systems declared in
// JSON config files.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fts/certificate.hpp"
#include "fts/config.hpp"
#include "fts/fixedpoint.hpp"
#include "fts/io.hpp"
#include "fts/simulator.hpp"

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitNotCertified = 1;  // the sufficient condition failed; NOT "unstable"
constexpr int kExitVacuous = 2;
constexpr int kExitInputError = 3;

fts::RunConfig load_or_exit(const std::string& path) {
  try {
    auto config = fts::load_run_config(path);
    const auto violations = fts::check_hypotheses(config.system);
    if (!violations.empty()) {
      std::cerr << "error: system hypotheses violated: " << violations.front() << "\n";
      std::exit(kExitInputError);
    }
    return config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(kExitInputError);
  }
}

int certificate_exit_code(const fts::Certificate& cert) {
  switch (cert.status) {
    case fts::CertificateStatus::certified: return kExitCertified;
    case fts::CertificateStatus::not_certified: return kExitNotCertified;
    case fts::CertificateStatus::vacuous: return kExitVacuous;
  }
  return kExitInputError;
}

int cmd_check(const std::string& config_path) {
  const fts::RunConfig config = load_or_exit(config_path);
  try {
    const fts::Certificate cert =
        fts::compute_certificate(config.system, config.query);
    std::cout << fts::certificate_to_json(cert).dump(2) << "\n";
    if (cert.status == fts::CertificateStatus::not_certified) {
      std::cerr << "note: the sufficient condition is inconclusive here; this is "
                   "not a verdict of instability\n";
    } else if (cert.status == fts::CertificateStatus::vacuous) {
      std::cerr << "note: bound vacuous (overflow); the certificate cannot decide "
                   "at these parameters\n";
    }
    return certificate_exit_code(cert);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_simulate(const std::string& config_path, const std::string& step_arg,
                 std::size_t samples, std::uint64_t seed, const std::string& out_arg) {
  const fts::RunConfig config = load_or_exit(config_path);
  try {
    double step = config.solver.resolved_step(config.system.t0, config.system.t_end);
    if (!step_arg.empty() && step_arg != "auto") {
      step = std::stod(step_arg);
    }
    const std::string prefix =
        !out_arg.empty() ? out_arg
                         : (!config.output_prefix.empty() ? config.output_prefix : "sim");

    const fts::Trajectory nominal =
        fts::integrate(config.system, step, config.solver.corrector_iters);
    fts::write_trajectory_csv(prefix + ".csv", nominal);

    nlohmann::ordered_json summary;
    summary["sup_norm"] = nominal.sup_norm;
    summary["blow_up"] = nominal.blew_up;
    summary["step"] = nominal.scheme.step;
    summary["samples"] = samples;
    summary["seed"] = seed;

    bool all_ok = !nominal.blew_up && nominal.sup_norm <= config.query.eps2;
    if (samples > 0) {
      const fts::EnvelopeReport envelope = fts::disturbance_envelope_run(
          config.system, config.query, samples, seed, step,
          config.solver.corrector_iters);
      summary["envelope"] = fts::envelope_to_json(envelope);
      all_ok = all_ok && envelope.all_within_eps2;
    }
    summary["all_within_eps2"] = all_ok;

    std::ofstream json_out(prefix + ".json", std::ios::binary);
    if (!json_out) {
      std::cerr << "error: cannot write " << prefix << ".json\n";
      return kExitInputError;
    }
    json_out << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
    return all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_sweep(const std::string& config_path, double eta_min, double eta_max,
              std::size_t points, const std::string& out_arg) {
  const fts::RunConfig config = load_or_exit(config_path);
  try {
    if (!(eta_min > 0.0) || eta_min > eta_max || points < 1) {
      std::cerr << "error: sweep range requires 0 < eta-min <= eta-max and points >= 1\n";
      return kExitInputError;
    }
    fts::FtsQuery query = config.query;
    query.eta = fts::EtaSearch{eta_min, eta_max, points};
    const fts::EtaSweepResult sweep = fts::optimize_eta(config.system, query);

    const std::string prefix =
        !out_arg.empty() ? out_arg
                         : (!config.output_prefix.empty() ? config.output_prefix : "sweep");
    fts::write_sweep_csv(prefix + ".csv", sweep);

    if (sweep.all_vacuous) {
      std::cerr << "note: bound vacuous for entire range\n";
      return kExitVacuous;
    }
    nlohmann::ordered_json best;
    best["best"] = fts::certificate_to_json(sweep.best);
    std::cout << best.dump(2) << "\n";
    return certificate_exit_code(sweep.best);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_verify(const std::string& config_path, const std::string& step_arg) {
  const fts::RunConfig config = load_or_exit(config_path);
  try {
    double step = (config.system.t_end - config.system.t0) / 512.0;
    if (!step_arg.empty() && step_arg != "auto") step = std::stod(step_arg);

    const auto grid = fts::Grid::make(config.system.t0, config.system.t_end,
                                      config.system.g_max, step);
    const fts::AprioriReport report =
        fts::verify_a_priori_bound(config.system, config.query, grid);

    // Contraction check: every measured ratio must respect the theoretical
    // factor plus the documented quadrature slack.
    const double bound = report.picard.contraction_bound + 0.01;
    double max_ratio = 0.0;
    for (const auto& entry : report.picard.log) {
      max_ratio = std::max(max_ratio, entry.ratio);
    }
    const bool ratios_ok = max_ratio <= bound;

    // Picard limit vs the ABM trajectory on the same grid.
    const fts::Trajectory abm =
        fts::integrate(config.system, grid->step, config.solver.corrector_iters);
    const double solver_gap = fts::weighted_distance(
        report.picard.limit, abm.states, report.picard.weight);

    nlohmann::ordered_json j;
    j["picard"] = fts::picard_log_to_json(report.picard);
    j["max_ratio"] = max_ratio;
    j["ratio_bound"] = bound;
    j["ratios_ok"] = ratios_ok;
    j["a_priori"] = fts::apriori_to_json(report);
    j["picard_vs_abm"] = solver_gap;
    const bool ok = report.picard.converged && ratios_ok && report.distance_ok &&
                    report.pointwise_ok;
    j["all_ok"] = ok;
    std::cout << j.dump(2) << "\n";
    if (!report.picard.converged && !report.picard.log.empty()) {
      std::cerr << "note: Picard iteration did not converge; last ratio "
                << report.picard.log.back().ratio << "\n";
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-time stability certificates for fractional-order time-delay "
               "systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string step_arg;
  std::string out_arg;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double eta_min = 0.1, eta_max = 10.0;
  std::size_t points = 64;

  auto* check = app.add_subcommand("check", "Evaluate the FTS certificate");
  check->add_option("config", config_path, "JSON config file")->required();

  auto* simulate = app.add_subcommand("simulate", "Integrate the system and probe "
                                                  "the disturbance envelope");
  simulate->add_option("config", config_path, "JSON config file")->required();
  simulate->add_option("--step", step_arg, "step size or 'auto'");
  simulate->add_option("--samples", samples, "number of envelope runs");
  simulate->add_option("--seed", seed, "seed for the envelope sampling");
  simulate->add_option("--out", out_arg, "output path prefix");

  auto* sweep = app.add_subcommand("sweep", "Sweep eta and minimize the relaxed bound");
  sweep->add_option("config", config_path, "JSON config file")->required();
  sweep->add_option("--eta-min", eta_min, "lower end of the eta range");
  sweep->add_option("--eta-max", eta_max, "upper end of the eta range");
  sweep->add_option("--points", points, "sweep grid size");
  sweep->add_option("--out", out_arg, "output path prefix");

  auto* verify = app.add_subcommand("verify", "Run the fixed-point verification");
  verify->add_option("config", config_path, "JSON config file")->required();
  verify->add_option("--step", step_arg, "step size or 'auto'");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cmd_check(config_path);
  if (simulate->parsed()) return cmd_simulate(config_path, step_arg, samples, seed, out_arg);
  if (sweep->parsed()) return cmd_sweep(config_path, eta_min, eta_max, points, out_arg);
  if (verify->parsed()) return cmd_verify(config_path, step_arg);
  return kExitInputError;
}
