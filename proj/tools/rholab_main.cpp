#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rholab/report.hpp"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw rholab::Error("cannot open '" + path + "'");
  }
  return json::parse(in);
}

// Structured output is deterministic; two-space indent, trailing newline.
void emit_report(const std::string& path, const json& doc) {
  rholab::write_file_atomic(path, doc.dump(2) + "\n");
}

struct PhiArgs {
  std::string spec_path;
  std::string report_path;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  int samples = 10000;
  bool quiet = false;
};

int run_check_phi(const PhiArgs& args) {
  const json doc = read_json_file(args.spec_path);
  const rholab::PhiSpec spec = rholab::phi_from_json(doc);

  rholab::ToleranceConfig tol;
  tol.eq_tol = args.tolerance;
  tol.validate();
  rholab::SamplerConfig cfg;
  cfg.seed = args.seed;
  cfg.random_samples = args.samples;
  cfg.validate();

  const auto start = std::chrono::steady_clock::now();
  const auto result = rholab::run_phi_checks(spec, cfg, tol);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  if (!args.quiet) {
    std::cout << rholab::render_phi_check_text(spec, result);
    std::cout << "elapsed: " << elapsed.count() << " ms\n";
  }
  if (!args.report_path.empty()) {
    emit_report(args.report_path, rholab::phi_check_to_json(spec, result, tol));
    if (!args.quiet) {
      std::cout << "report written to " << args.report_path << "\n";
    }
  }

  // The case probes are advisory; only a disproved axiom fails the run.
  const bool law_broken =
      result.inc.status == rholab::CheckStatus::Fail ||
      result.con.status == rholab::CheckStatus::Fail;
  return law_broken ? 1 : 0;
}

struct AnalyzeArgs {
  std::string scenario_path;
  std::string report_path;
  std::vector<double> r_schedule;
  bool quiet = false;
};

int run_analyze(const AnalyzeArgs& args) {
  const json doc = read_json_file(args.scenario_path);
  rholab::Scenario scenario = rholab::parse_scenario(doc);

  if (!args.r_schedule.empty()) {
    for (double r : args.r_schedule) {
      if (!(r > 0.0) || !std::isfinite(r)) {
        throw rholab::Error("--r-schedule entries must be finite and > 0");
      }
    }
    scenario.r_schedule = args.r_schedule;
  }

  rholab::AnalysisOptions options;
  options.r_schedule = scenario.r_schedule;
  options.sampler = scenario.sampler;
  options.rho_seed = scenario.seed;

  const auto start = std::chrono::steady_clock::now();
  const auto report =
      rholab::run_full_analysis(scenario.table, scenario.phi, scenario.rho,
                                options, scenario.tolerance);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  if (!args.quiet) {
    std::cout << rholab::render_report_text(report);
    std::cout << "\nelapsed: " << elapsed.count() << " ms\n";
  }
  if (!args.report_path.empty()) {
    emit_report(args.report_path,
                rholab::report_to_json(report, scenario.tolerance,
                                       scenario.seed));
    if (!args.quiet) {
      std::cout << "report written to " << args.report_path << "\n";
    }
  }

  switch (report.overall) {
    case rholab::OverallVerdict::Pass: return 0;
    case rholab::OverallVerdict::Fail: return 1;
    case rholab::OverallVerdict::HypothesisFailed:
    case rholab::OverallVerdict::Vacuous: return 3;
  }
  return 1;
}

struct DemoArgs {
  std::string template_name;
  std::string out_path;
  std::uint64_t seed = 1;
};

int run_gen_demo(const DemoArgs& args) {
  const json doc = rholab::demo_scenario(args.template_name, args.seed);
  emit_report(args.out_path, doc);
  std::cout << "wrote " << args.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rholab: verification lab for modulus-composition analysis"};
  app.require_subcommand(1);

  PhiArgs phi_args;
  auto* check_phi =
      app.add_subcommand("check-phi", "probe a gauge spec for the two "
                                      "combination laws and its growth case");
  check_phi->add_option("spec", phi_args.spec_path, "gauge spec JSON file")
      ->required();
  check_phi->add_option("--tolerance", phi_args.tolerance,
                        "equality tolerance");
  check_phi->add_option("--seed", phi_args.seed, "sampler seed");
  check_phi->add_option("--samples", phi_args.samples,
                        "random samples per law");
  check_phi->add_option("--report", phi_args.report_path,
                        "write a structured report here");
  check_phi->add_flag("--quiet", phi_args.quiet, "suppress text output");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand(
      "analyze", "run the full preservation-to-recovery pipeline on a "
                 "scenario file");
  analyze->add_option("scenario", analyze_args.scenario_path,
                      "scenario JSON file")
      ->required();
  analyze->add_option("--report", analyze_args.report_path,
                      "write a structured report here");
  analyze->add_option("--r-schedule", analyze_args.r_schedule,
                      "override the radius schedule, comma separated")
      ->delimiter(',');
  analyze->add_flag("--quiet", analyze_args.quiet, "suppress text output");

  DemoArgs demo_args;
  auto* gen_demo = app.add_subcommand(
      "gen-demo", "write a ready-to-analyze demo scenario file");
  gen_demo
      ->add_option("--template", demo_args.template_name,
                   "one of: additive-basic, multiplicative-basic, perturbed, "
                   "degenerate")
      ->required();
  gen_demo->add_option("--out", demo_args.out_path, "output path")->required();
  gen_demo->add_option("--seed", demo_args.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check_phi) return run_check_phi(phi_args);
    if (*analyze) return run_analyze(analyze_args);
    if (*gen_demo) return run_gen_demo(demo_args);
  } catch (const rholab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
