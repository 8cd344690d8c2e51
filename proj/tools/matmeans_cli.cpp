// matmeans: runs the inequality certifiers over seeded instance families.
//
//   matmeans verify [--config PATH] [--select TAGS] [--seed N] [--trials N] [--out PATH] [--format json|csv]
//   matmeans sweep --grid PATH [--out PATH] [--format json|csv]
//   matmeans probe --name thm21_limits|thm22_sharpness
//
// Settings are layered: built-in defaults, then the config (or grid) file,
// then MATMEANS_<KEY> environment variables, then flags.
// Exit codes: 0 all pass, 1 at least one violation, 2 invalid input.

#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "matmeans/error.hpp"
#include "matmeans/kernels.hpp"
#include "matmeans/runner.hpp"

namespace {

using namespace matmeans;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;

// Registers `--name` as a string flag that is forwarded to set_config_key
// only when given on the command line.
void add_config_flag(CLI::App* cmd, std::vector<std::pair<std::string, CLI::Option*>>& opts,
                     std::deque<std::string>& storage, const std::string& flag, const std::string& key,
                     const std::string& help) {
  storage.emplace_back();
  opts.emplace_back(key, cmd->add_option(flag, storage.back(), help));
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + cfg.output_path + "'");
  out << text;
}

std::string render(const RunConfig& cfg, const std::vector<TrialRecord>& records,
                   const std::vector<SuiteSummary>& summaries, const nlohmann::json& extra) {
  if (cfg.format == OutputFormat::Csv) return to_csv(records);
  nlohmann::json j = verify_report(cfg, records, summaries);
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j.dump(2) + "\n";
}

int finish_suite(const RunConfig& cfg, const std::vector<TrialRecord>& records, const nlohmann::json& extra) {
  const auto summaries = summarize(records);
  write_output(cfg, render(cfg, records, summaries, extra));
  std::fputs(summary_table(summaries).c_str(), stderr);
  for (const auto& s : summaries)
    if (!s.failures.empty()) return kExitViolation;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify weighted matrix mean inequalities on seeded random instances"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the certifier suite");
  std::string config_path;
  verify->add_option("--config", config_path, "flat key = value configuration file");
  std::vector<std::pair<std::string, CLI::Option*>> verify_flags;
  std::deque<std::string> verify_store;
  add_config_flag(verify, verify_flags, verify_store, "--select", "select", "comma separated inequality tags");
  add_config_flag(verify, verify_flags, verify_store, "--seed", "seed", "master seed");
  add_config_flag(verify, verify_flags, verify_store, "--trials", "trials", "trials per inequality");
  add_config_flag(verify, verify_flags, verify_store, "--dims", "dims", "comma separated dimensions");
  add_config_flag(verify, verify_flags, verify_store, "--cond-caps", "cond_caps", "comma separated condition caps");
  add_config_flag(verify, verify_flags, verify_store, "--tolerance-scale", "tolerance_scale", "tolerance multiplier");
  add_config_flag(verify, verify_flags, verify_store, "--out", "out", "report path (default stdout)");
  add_config_flag(verify, verify_flags, verify_store, "--format", "format", "json or csv");
  add_config_flag(verify, verify_flags, verify_store, "--workers", "workers", "worker threads");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate certifiers over a parameter grid");
  std::string grid_path;
  sweep->add_option("--grid", grid_path, "grid file: v, tau, lambda, dim lists plus config keys")->required();
  std::vector<std::pair<std::string, CLI::Option*>> sweep_flags;
  std::deque<std::string> sweep_store;
  add_config_flag(sweep, sweep_flags, sweep_store, "--select", "select", "comma separated inequality tags");
  add_config_flag(sweep, sweep_flags, sweep_store, "--seed", "seed", "master seed");
  add_config_flag(sweep, sweep_flags, sweep_store, "--trials", "trials", "trials per grid cell");
  add_config_flag(sweep, sweep_flags, sweep_store, "--out", "out", "report path (default stdout)");
  add_config_flag(sweep, sweep_flags, sweep_store, "--format", "format", "json or csv");
  add_config_flag(sweep, sweep_flags, sweep_store, "--workers", "workers", "worker threads");

  // probe
  auto* probe = app.add_subcommand("probe", "tabulate a sharpness limit");
  std::string probe_name;
  double probe_v = 0.25, probe_tau = 0.5, probe_b = 1.0;
  std::vector<double> probe_lambda{1.0, 2.0};
  std::vector<double> probe_eps{1e-2, 1e-4, 1e-6, 1e-8};
  std::vector<double> probe_vs{0.1, 0.3, 0.5};
  std::vector<double> probe_t{1.5, 1.1, 1.01, 1.001, 1.0001, 1.00001, 1.000001};
  std::string probe_format = "csv", probe_out;
  probe->add_option("--name", probe_name, "thm21_limits or thm22_sharpness")->required();
  probe->add_option("--v", probe_v, "weight v (thm21_limits)");
  probe->add_option("--tau", probe_tau, "weight tau (thm21_limits)");
  probe->add_option("--b", probe_b, "second argument b (thm21_limits)");
  probe->add_option("--lambda", probe_lambda, "exponents (thm21_limits)")->delimiter(',');
  probe->add_option("--eps", probe_eps, "ratios a/b (thm21_limits)")->delimiter(',');
  probe->add_option("--weights", probe_vs, "weights v (thm22_sharpness)")->delimiter(',');
  probe->add_option("--t", probe_t, "points t > 1 (thm22_sharpness)")->delimiter(',');
  probe->add_option("--format", probe_format, "json or csv");
  probe->add_option("--out", probe_out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    RunConfig cfg;
    if (*verify) {
      if (!config_path.empty()) apply_config_file(cfg, config_path);
      apply_environment(cfg);
      for (const auto& [key, opt] : verify_flags)
        if (opt->count() > 0) set_config_key(cfg, key, opt->as<std::string>());
      validate(cfg);
      return finish_suite(cfg, run_instances(verify_instances(cfg), cfg.tolerance_scale, cfg.workers),
                          nlohmann::json::object());
    }

    if (*sweep) {
      const SweepGrid grid = load_sweep_file(cfg, grid_path);
      apply_environment(cfg);
      for (const auto& [key, opt] : sweep_flags)
        if (opt->count() > 0) set_config_key(cfg, key, opt->as<std::string>());
      validate(cfg);
      const SweepPlan plan = plan_sweep(cfg, grid);
      for (const auto& note : plan.notes) std::fprintf(stderr, "skipped cell: %s\n", note.c_str());
      if (plan.cells == 0) throw Error(ErrorKind::InvalidArgument, "empty effective grid");
      std::fprintf(stderr, "cells=%zu skipped_cells=%zu simd=%s\n", plan.cells, plan.skipped_cells,
                   kernels::active().name);
      nlohmann::json extra{{"cells", plan.cells}, {"skipped_cells", plan.skipped_cells}, {"notes", plan.notes}};
      return finish_suite(cfg, run_instances(plan.instances, cfg.tolerance_scale, cfg.workers), extra);
    }

    ProbeResult result{Inequality::DifferenceRatioLimits};
    if (probe_name == "thm21_limits") {
      result = run_limits_probe(probe_v, probe_tau, probe_lambda, probe_b, probe_eps);
    } else if (probe_name == "thm22_sharpness") {
      result = run_sharpness_probe(probe_vs, probe_t);
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown probe '" + probe_name + "'");
    }
    set_config_key(cfg, "format", probe_format);
    cfg.output_path = probe_out;
    write_output(cfg, cfg.format == OutputFormat::Csv ? to_csv(result) : to_json(result).dump(2) + "\n");
    return result.holds ? kExitPass : kExitViolation;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  }
}
