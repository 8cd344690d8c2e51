#pragma once
// Suite driver behind the command-line tool: configuration, instance
// families per certifier, parallel trial execution and report writers.
//
// A trial is identified by (certifier, trial_index). Its instance is drawn
// from SeedPath{master_seed, trial_index, stream} where the stream is fixed
// per certifier (and per grid cell in a sweep), so results do not depend on
// the worker count or on which certifiers are selected.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matmeans/certifiers.hpp"
#include "matmeans/sampling.hpp"

namespace matmeans {

inline constexpr const char* kReportVersion = "1.0";

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::uint64_t master_seed = 20240611;
  std::size_t trials = 1000;
  std::vector<std::size_t> dims{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> cond_caps{1e2, 1e4, 1e6};
  double tolerance_scale = 1.0;
  std::vector<Inequality> selection;  // empty selects every verifiable certifier
  OutputFormat format = OutputFormat::Json;
  std::string output_path;  // empty writes to stdout
  unsigned workers = 1;
};

/// Sets one configuration key from its text form. Keys: seed, trials, dims,
/// cond_caps, tolerance_scale, select, format, out, workers. Lists are comma
/// separated. Throws Error{InvalidArgument} on unknown keys or bad values.
void set_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` file; blank lines and lines starting with '#' are skipped.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Reads MATMEANS_<KEY> (upper-case key names) from the environment.
void apply_environment(RunConfig& cfg);

/// Throws Error{InvalidArgument} if an invariant of RunConfig is broken.
void validate(const RunConfig& cfg);

std::vector<Inequality> effective_selection(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

/// One instance to evaluate. Unset parameters are sampled.
struct InstanceSpec {
  Inequality id;
  std::uint64_t master_seed = 0;
  std::size_t dim = 1;
  double cond_cap = 1e2;
  std::uint64_t trial_index = 0;
  std::uint64_t stream = 0;
  std::optional<double> v, tau, lambda;
};

struct TrialRecord {
  Inequality id;
  std::size_t dim = 1;
  double cond_cap = 0.0;
  std::uint64_t trial_index = 0;
  std::optional<double> v, tau, lambda;
  CertificateReport report;
  std::string error;  // set when evaluation threw; counted as a failure

  bool failed() const noexcept { return !error.empty() || !report.holds; }
  double margin_lower() const noexcept;
  double margin_upper() const noexcept;  // NaN for single-margin certifiers
};

/// Parameters each certifier reads; the others are not sampled or reported.
struct ParamUse {
  bool v, tau, lambda, dim;
};
ParamUse param_use(Inequality id) noexcept;

TrialRecord run_trial(const InstanceSpec& inst, double tolerance_scale);

/// Evaluates every instance on `workers` threads; output order matches input.
std::vector<TrialRecord> run_instances(const std::vector<InstanceSpec>& instances, double tolerance_scale,
                                       unsigned workers);

struct SuiteSummary {
  Inequality id;
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::size_t degenerate_skipped = 0;
  double min_margin = 0.0;
  double median_margin = 0.0;
  std::vector<std::uint64_t> failures;  // trial indices
};

std::vector<SuiteSummary> summarize(const std::vector<TrialRecord>& records);
nlohmann::json to_json(const SuiteSummary& s);

/// Instances run by `verify`: trial i of each certifier uses dims[i % |dims|]
/// and cond_caps[(i / |dims|) % |cond_caps|].
std::vector<InstanceSpec> verify_instances(const RunConfig& cfg);

struct SweepGrid {
  std::vector<double> v, tau, lambda;
  std::vector<std::size_t> dim;
};

/// Reads the grid axes (keys v, tau, lambda, dim) and any RunConfig keys
/// from a flat key-value file. A missing v, tau or lambda axis is sampled per
/// trial; a missing dim axis uses the configured dims.
SweepGrid load_sweep_file(RunConfig& cfg, const std::string& path);

struct SweepPlan {
  std::vector<InstanceSpec> instances;
  std::size_t cells = 0;
  std::size_t skipped_cells = 0;
  std::vector<std::string> notes;
};

/// Expands the grid per selected certifier (thm51 when the selection is
/// empty). Axes a certifier does not read collapse to one value; cells
/// breaking its constraints are skipped and counted.
SweepPlan plan_sweep(const RunConfig& cfg, const SweepGrid& grid);

/// Fixed-column CSV, numbers printed with 17 significant digits.
std::string to_csv(const std::vector<TrialRecord>& records);

/// spec_version, config echo, summaries and the witness of every failure.
nlohmann::json verify_report(const RunConfig& cfg, const std::vector<TrialRecord>& records,
                             const std::vector<SuiteSummary>& summaries);

/// Human-readable per-certifier table.
std::string summary_table(const std::vector<SuiteSummary>& summaries);

// ---- sharpness probes ---------------------------------------------------

struct ProbeRow {
  std::string series;  // "low" / "high" for the ratio limits, "g" for the weight factor
  double v = 0.0;
  double lambda = 0.0;
  double point = 0.0;  // eps or t
  double value = 0.0;
  double limit = 0.0;
  double gap = 0.0;
};

struct ProbeResult {
  Inequality id;
  std::vector<ProbeRow> rows;
  std::vector<CertificateReport> reports;
  bool holds = true;
};

/// Ratio at a = b*eps and a = b/eps for each lambda against its two limits.
ProbeResult run_limits_probe(double v, double tau, const std::vector<double>& lambdas, double b,
                             const std::vector<double>& eps_list);

/// g_v(t) against v(1-v) for each v.
ProbeResult run_sharpness_probe(const std::vector<double>& vs, const std::vector<double>& t_list);

std::string to_csv(const ProbeResult& p);
nlohmann::json to_json(const ProbeResult& p);

}  // namespace matmeans
