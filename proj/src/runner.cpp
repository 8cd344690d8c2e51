#include "matmeans/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <thread>

#include "matmeans/error.hpp"

namespace matmeans {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = value.find(',', start);
    std::string item = trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(x)) bad(key + ": not a finite number: '" + t + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
    bad(key + ": not a non-negative integer: '" + t + "'");
  }
  errno = 0;
  const unsigned long long x = std::strtoull(t.c_str(), nullptr, 10);
  if (errno == ERANGE) bad(key + ": out of range: '" + t + "'");
  return x;
}

std::vector<double> parse_reals(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_real(key, item));
  if (out.empty()) bad(key + ": empty list");
  return out;
}

std::vector<std::size_t> parse_uints(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(value)) out.push_back(parse_uint(key, item));
  if (out.empty()) bad(key + ": empty list");
  return out;
}

template <class Fn>
void read_key_values(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) bad(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) bad(path + ":" + std::to_string(lineno) + ": empty key");
    fn(key, trim(t.substr(eq + 1)));
  }
}

constexpr const char* kConfigKeys[] = {"seed", "trials", "dims", "cond_caps", "tolerance_scale",
                                       "select", "format", "out", "workers"};

std::uint64_t certifier_stream(Inequality id) { return static_cast<std::uint64_t>(id) + 1; }

ParamRules rules_for(Inequality id, double cond_cap) {
  ParamRules r;
  r.pair_range = std::max(cond_cap, 4.0);
  switch (id) {
    case Inequality::DifferenceRatio:
      r.v_le_tau = true;
      r.distinct = true;
      r.lambda_max = 3.0;
      break;
    case Inequality::ReciprocalSandwich:
    case Inequality::OneSidedBounds:
      r.a_lt_b = true;
      break;
    case Inequality::PowerDifference:
      r.a_gt_b = true;
      r.lambda_max = 3.0;
      break;
    case Inequality::LoewnerDifferenceRatio:
    case Inequality::HsDifferenceRatio:
    case Inequality::DetDifference:
      r.v_le_tau = true;
      break;
    case Inequality::DetRootDifference:
      r.v_le_tau = true;
      r.lambda_max = 3.0;
      break;
    case Inequality::LoewnerHalfWeight:
    case Inequality::HsHalfWeight:
    case Inequality::DetHalfWeight:
      r.v_le_half = true;
      break;
    case Inequality::DetPowerOrder:
      r.lambda_max = 3.0;
      break;
    default:
      break;
  }
  return r;
}

bool half_weight(Inequality id) {
  return id == Inequality::LoewnerHalfWeight || id == Inequality::HsHalfWeight || id == Inequality::DetHalfWeight;
}

// Sampled parameters with the fixed ones substituted; a sampled partner of a
// fixed weight is redrawn so the ordering rule still holds.
MeanParams resolve_params(const InstanceSpec& inst, const ParamRules& rules, MeanParams p, Rng& rng) {
  if (inst.v) p.v = *inst.v;
  if (inst.tau) p.tau = *inst.tau;
  if (inst.lambda) p.lambda = *inst.lambda;
  if (rules.v_le_tau) {
    if (inst.v && !inst.tau) p.tau = p.v + (1.0 - p.v) * rng.uniform(0.05, 0.95);
    if (inst.tau && !inst.v) p.v = p.tau * rng.uniform(0.05, 0.95);
  }
  if (inst.id == Inequality::HalfWeightDifference && !inst.lambda) p.lambda = rng.uniform() < 0.5 ? 1.0 : 2.0;
  return p;
}

SpdMatrix draw_spd(std::size_t dim, double cond_cap, Rng& rng) {
  const double r = std::sqrt(cond_cap);
  const auto dist = static_cast<SpectrumDistribution>(rng.next() % 3);
  return random_spd(SpectrumSpec{dim, 1.0 / r, r, dist}, rng);
}

CertificateReport evaluate(const InstanceSpec& inst, Rng& rng, TrialRecord& rec, const CheckOptions& opts) {
  const ParamRules rules = rules_for(inst.id, inst.cond_cap);
  const ParamSample sample = sample_params(rules, rng);
  const MeanParams p = resolve_params(inst, rules, sample.params, rng);
  const ScalarPair ab = sample.pair;
  const std::size_t n = inst.dim;
  const ParamUse use = param_use(inst.id);
  if (use.v) rec.v = p.v;
  if (use.tau) rec.tau = p.tau;
  if (use.lambda) rec.lambda = p.lambda;
  rec.dim = use.dim ? n : 1;

  switch (inst.id) {
    case Inequality::ScalarMeanChain:
      return check_scalar_mean_chain(ab, p.v, opts);
    case Inequality::DifferenceRatio:
      return check_difference_ratio(ab, p.v, p.tau, p.lambda, opts);
    case Inequality::HalfWeightDifference:
      return check_half_weight_difference(ab, p.v, p.lambda == 2.0, opts);
    case Inequality::ReciprocalSandwich:
      return check_reciprocal_sandwich(ab, p.v, opts);
    case Inequality::OneSidedBounds:
      return check_one_sided_bounds(ab, p.v, opts);
    case Inequality::PowerDifference:
      return check_power_difference(ab.a, ab.b, p.lambda, opts);
    case Inequality::MinkowskiProduct: {
      const double r = std::sqrt(inst.cond_cap);
      std::vector<double> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.log_uniform(1.0 / r, r);
        b[i] = rng.log_uniform(1.0 / r, r);
      }
      return check_minkowski_product(a, b, opts);
    }
    case Inequality::LoewnerBoundedDifference: {
      const double m = rng.log_uniform(1.0 / std::sqrt(inst.cond_cap), 1.0);
      const double M = m * rng.log_uniform(1.0, inst.cond_cap);
      const auto [a, b] = random_ordered_pair(n, m, M, rng);
      return check_loewner_bounded_difference(a, b, p.v, {m, M}, opts);
    }
    default:
      break;
  }

  const SpdMatrix a = draw_spd(n, inst.cond_cap, rng);
  const SpdMatrix b = draw_spd(n, inst.cond_cap, rng);
  switch (inst.id) {
    case Inequality::MatrixMeanChain:
      return check_matrix_mean_chain(a, b, p.v, opts);
    case Inequality::LoewnerDifferenceRatio:
      return check_loewner_difference_ratio(a, b, p.v, p.tau, opts);
    case Inequality::LoewnerHalfWeight:
      return check_loewner_half_weight(a, b, p.v, opts);
    case Inequality::HsDifferenceRatio:
      return check_hs_difference_ratio(a, b, random_invertible(n, inst.cond_cap, rng), p.v, p.tau, opts);
    case Inequality::HsMeanChain:
      return check_hs_mean_chain(a, b, random_invertible(n, inst.cond_cap, rng), p.v, opts);
    case Inequality::HsHalfWeight:
      return check_hs_half_weight(a, b, random_invertible(n, inst.cond_cap, rng), p.v, opts);
    case Inequality::DetPowerOrder:
      return check_det_power_order(a, b, p.v, p.lambda, opts);
    case Inequality::DetRootDifference:
      return check_det_root_difference(a, b, p.v, p.tau, p.lambda, opts);
    case Inequality::DetDifference:
      return check_det_difference(a, b, p.v, p.tau, opts);
    case Inequality::DetHalfWeight:
      return check_det_half_weight(a, b, p.v, opts);
    default:
      bad(std::string(tag(inst.id)) + " is a probe, not a verifiable certifier");
  }
}

std::optional<std::string> cell_violation(Inequality id, const std::optional<double>& v,
                                          const std::optional<double>& tau, const std::optional<double>& lambda) {
  if (v && !(*v > 0.0 && *v < 1.0)) return "v outside (0,1)";
  if (tau && !(*tau > 0.0 && *tau < 1.0)) return "tau outside (0,1)";
  if (v && half_weight(id) && *v > 0.5) return "v > 1/2";
  if (v && tau) {
    if (*v > *tau) return "v > tau";
    if (id == Inequality::DifferenceRatio && *v == *tau) return "v == tau";
  }
  if (lambda && !(*lambda >= 1.0)) return "lambda < 1";
  if (lambda && id == Inequality::HalfWeightDifference && *lambda != 1.0 && *lambda != 2.0) {
    return "lambda not in {1, 2}";
  }
  return std::nullopt;
}

}  // namespace

// ---- configuration -----------------------------------------------------

void set_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "seed") {
    cfg.master_seed = parse_uint(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_uint(key, value);
  } else if (key == "dims") {
    cfg.dims = parse_uints(key, value);
  } else if (key == "cond_caps") {
    cfg.cond_caps = parse_reals(key, value);
  } else if (key == "tolerance_scale") {
    cfg.tolerance_scale = parse_real(key, value);
  } else if (key == "select") {
    cfg.selection.clear();
    for (const auto& t : split_list(value)) {
      if (t == "all") {
        cfg.selection.clear();
        break;
      }
      const auto id = parse_tag(t);
      if (!id) bad("select: unknown inequality tag '" + t + "'");
      cfg.selection.push_back(*id);
    }
  } else if (key == "format") {
    const std::string f = trim(value);
    if (f == "json") {
      cfg.format = OutputFormat::Json;
    } else if (f == "csv") {
      cfg.format = OutputFormat::Csv;
    } else {
      bad("format: expected json or csv, got '" + f + "'");
    }
  } else if (key == "out") {
    cfg.output_path = trim(value);
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(std::min<std::uint64_t>(parse_uint(key, value), 1024));
  } else {
    bad("unknown configuration key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  read_key_values(path, [&](const std::string& k, const std::string& v) { set_config_key(cfg, k, v); });
}

void apply_environment(RunConfig& cfg) {
  for (const char* key : kConfigKeys) {
    std::string name = "MATMEANS_";
    for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    if (const char* value = std::getenv(name.c_str())) set_config_key(cfg, key, value);
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.trials < 1) bad("trials must be >= 1");
  if (cfg.dims.empty()) bad("dims must not be empty");
  for (std::size_t d : cfg.dims)
    if (d < 1 || d > 64) bad("dims must lie in [1, 64], got " + std::to_string(d));
  if (cfg.cond_caps.empty()) bad("cond_caps must not be empty");
  for (double c : cfg.cond_caps)
    if (!(c >= 1.0 && c <= 1e12)) bad("cond_caps must lie in [1, 1e12]");
  if (!(cfg.tolerance_scale > 0.0)) bad("tolerance_scale must be positive");
  if (cfg.workers < 1) bad("workers must be >= 1");
  const auto verifiable = verifiable_inequalities();
  for (Inequality id : cfg.selection) {
    if (std::find(verifiable.begin(), verifiable.end(), id) == verifiable.end()) {
      bad(std::string(tag(id)) + " is a probe; run it with the probe command");
    }
  }
}

std::vector<Inequality> effective_selection(const RunConfig& cfg) {
  if (!cfg.selection.empty()) return cfg.selection;
  const auto all = verifiable_inequalities();
  return {all.begin(), all.end()};
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json select = nlohmann::json::array();
  for (Inequality id : effective_selection(cfg)) select.push_back(tag(id));
  // Output path and worker count are left out so reports compare byte for byte.
  return {{"seed", cfg.master_seed},
          {"trials", cfg.trials},
          {"dims", cfg.dims},
          {"cond_caps", cfg.cond_caps},
          {"tolerance_scale", cfg.tolerance_scale},
          {"select", std::move(select)},
          {"format", cfg.format == OutputFormat::Json ? "json" : "csv"}};
}

// ---- trials ------------------------------------------------------------

double TrialRecord::margin_lower() const noexcept {
  return report.margins.empty() ? kNaN : report.margins.front().value;
}

double TrialRecord::margin_upper() const noexcept {
  if (report.margins.size() < 2) return kNaN;
  double m = report.margins[1].value;
  for (std::size_t i = 2; i < report.margins.size(); ++i) m = std::min(m, report.margins[i].value);
  return m;
}

ParamUse param_use(Inequality id) noexcept {
  switch (id) {
    case Inequality::ScalarMeanChain:
    case Inequality::ReciprocalSandwich:
    case Inequality::OneSidedBounds:
      return {true, false, false, false};
    case Inequality::DifferenceRatio:
      return {true, true, true, false};
    case Inequality::HalfWeightDifference:
      return {true, false, true, false};
    case Inequality::PowerDifference:
      return {false, false, true, false};
    case Inequality::MinkowskiProduct:
      return {false, false, false, true};
    case Inequality::LoewnerDifferenceRatio:
    case Inequality::HsDifferenceRatio:
    case Inequality::DetDifference:
      return {true, true, false, true};
    case Inequality::DetPowerOrder:
      return {true, false, true, true};
    case Inequality::DetRootDifference:
      return {true, true, true, true};
    case Inequality::DifferenceRatioLimits:
      return {true, true, true, false};
    case Inequality::WeightFactorSharpness:
      return {true, false, false, false};
    default:
      return {true, false, false, true};
  }
}

TrialRecord run_trial(const InstanceSpec& inst, double tolerance_scale) {
  TrialRecord rec{inst.id, inst.dim, inst.cond_cap, inst.trial_index};
  rec.report.id = inst.id;
  const CheckOptions opts{tolerance_scale};
  Rng rng(SeedPath{inst.master_seed, inst.trial_index, inst.stream});
  try {
    rec.report = evaluate(inst, rng, rec, opts);
  } catch (const std::exception& e) {
    rec.report.holds = false;
    rec.error = e.what();
  }
  return rec;
}

std::vector<TrialRecord> run_instances(const std::vector<InstanceSpec>& instances, double tolerance_scale,
                                       unsigned workers) {
  std::vector<TrialRecord> out(instances.size(), TrialRecord{Inequality::ScalarMeanChain});
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) out[i] = run_trial(instances[i], tolerance_scale);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(instances.size())));
  if (n == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<SuiteSummary> summarize(const std::vector<TrialRecord>& records) {
  std::vector<SuiteSummary> out;
  for (int k = 0; k <= static_cast<int>(Inequality::DetHalfWeight); ++k) {
    const auto id = static_cast<Inequality>(k);
    SuiteSummary s{id};
    std::vector<double> margins;
    for (const auto& r : records) {
      if (r.id != id) continue;
      ++s.trials;
      if (r.failed()) {
        s.failures.push_back(r.trial_index);
      } else if (r.report.degenerate) {
        ++s.degenerate_skipped;
      } else {
        ++s.passes;
      }
      const double m = r.report.min_margin();
      if (!r.report.degenerate && std::isfinite(m)) margins.push_back(m);
    }
    if (s.trials == 0) continue;
    std::sort(s.failures.begin(), s.failures.end());
    std::sort(margins.begin(), margins.end());
    if (margins.empty()) {
      s.min_margin = s.median_margin = kNaN;
    } else {
      const std::size_t h = margins.size() / 2;
      s.min_margin = margins.front();
      s.median_margin = margins.size() % 2 ? margins[h] : 0.5 * (margins[h - 1] + margins[h]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<InstanceSpec> verify_instances(const RunConfig& cfg) {
  std::vector<InstanceSpec> out;
  const auto selection = effective_selection(cfg);
  out.reserve(selection.size() * cfg.trials);
  for (Inequality id : selection) {
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      InstanceSpec s{id, cfg.master_seed};
      s.dim = cfg.dims[i % cfg.dims.size()];
      s.cond_cap = cfg.cond_caps[(i / cfg.dims.size()) % cfg.cond_caps.size()];
      s.trial_index = i;
      s.stream = certifier_stream(id);
      out.push_back(s);
    }
  }
  return out;
}

// ---- sweep -------------------------------------------------------------

SweepGrid load_sweep_file(RunConfig& cfg, const std::string& path) {
  SweepGrid g;
  read_key_values(path, [&](const std::string& k, const std::string& v) {
    if (k == "v") {
      g.v = parse_reals(k, v);
    } else if (k == "tau") {
      g.tau = parse_reals(k, v);
    } else if (k == "lambda") {
      g.lambda = parse_reals(k, v);
    } else if (k == "dim") {
      g.dim = parse_uints(k, v);
    } else {
      set_config_key(cfg, k, v);
    }
  });
  return g;
}

SweepPlan plan_sweep(const RunConfig& cfg, const SweepGrid& grid) {
  SweepPlan plan;
  std::vector<Inequality> selection = cfg.selection;
  if (selection.empty()) selection = {Inequality::DetRootDifference};

  using Axis = std::vector<std::optional<double>>;
  auto axis = [](bool used, const std::vector<double>& values) {
    Axis a;
    if (used) a.assign(values.begin(), values.end());
    if (a.empty()) a.push_back(std::nullopt);
    return a;
  };

  for (Inequality id : selection) {
    const ParamUse use = param_use(id);
    const Axis vs = axis(use.v, grid.v);
    const Axis taus = axis(use.tau, grid.tau);
    const Axis lambdas = axis(use.lambda, grid.lambda);
    std::vector<std::size_t> dims{1};
    if (use.dim) dims = grid.dim.empty() ? cfg.dims : grid.dim;

    std::uint64_t cell = 0;
    for (const auto& v : vs)
      for (const auto& tau : taus)
        for (const auto& lambda : lambdas)
          for (std::size_t dim : dims) {
            ++cell;
            if (auto why = cell_violation(id, v, tau, lambda)) {
              ++plan.skipped_cells;
              std::string note = std::string(tag(id)) + " dim=" + std::to_string(dim);
              if (v) note += " v=" + std::to_string(*v);
              if (tau) note += " tau=" + std::to_string(*tau);
              if (lambda) note += " lambda=" + std::to_string(*lambda);
              plan.notes.push_back(note + ": " + *why);
              continue;
            }
            if (dim < 1 || dim > 64) bad("grid dim must lie in [1, 64]");
            ++plan.cells;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
              InstanceSpec s{id, cfg.master_seed};
              s.dim = dim;
              s.cond_cap = cfg.cond_caps[t % cfg.cond_caps.size()];
              s.trial_index = t;
              s.stream = (certifier_stream(id) << 32) | cell;
              s.v = v;
              s.tau = tau;
              s.lambda = lambda;
              plan.instances.push_back(s);
            }
          }
  }
  return plan;
}

}  // namespace matmeans
