#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "matmeans/runner.hpp"

namespace matmeans {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

nlohmann::json opt_json(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(); }

}  // namespace

std::string to_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "inequality_id,dim,v,tau,lambda,cond_cap,trial_index,margin_lower,margin_upper,tol,verdict,degenerate\n";
  for (const auto& r : records) {
    out += tag(r.id);
    out += ',' + std::to_string(r.dim);
    out += ',' + num(r.v);
    out += ',' + num(r.tau);
    out += ',' + num(r.lambda);
    out += ',' + num(r.cond_cap);
    out += ',' + std::to_string(r.trial_index);
    out += ',' + num(r.margin_lower());
    out += ',' + num(r.margin_upper());
    out += ',' + num(r.report.tol_used);
    out += r.failed() ? ",fail" : ",pass";
    out += r.report.degenerate ? ",true\n" : ",false\n";
  }
  return out;
}

nlohmann::json to_json(const SuiteSummary& s) {
  return {{"inequality_id", tag(s.id)},
          {"trials", s.trials},
          {"passes", s.passes},
          {"degenerate_skipped", s.degenerate_skipped},
          {"min_margin", std::isnan(s.min_margin) ? nlohmann::json() : nlohmann::json(s.min_margin)},
          {"median_margin", std::isnan(s.median_margin) ? nlohmann::json() : nlohmann::json(s.median_margin)},
          {"failures", s.failures}};
}

nlohmann::json verify_report(const RunConfig& cfg, const std::vector<TrialRecord>& records,
                             const std::vector<SuiteSummary>& summaries) {
  nlohmann::json sums = nlohmann::json::array();
  for (const auto& s : summaries) sums.push_back(to_json(s));
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& r : records) {
    if (!r.failed()) continue;
    nlohmann::json w{{"inequality_id", tag(r.id)}, {"trial_index", r.trial_index}, {"dim", r.dim},
                     {"cond_cap", r.cond_cap},     {"v", opt_json(r.v)},          {"tau", opt_json(r.tau)},
                     {"lambda", opt_json(r.lambda)}};
    if (!r.error.empty()) {
      w["error"] = r.error;
    } else {
      w["report"] = to_json(r.report);
    }
    witnesses.push_back(std::move(w));
  }
  return {{"spec_version", kReportVersion},
          {"config", to_json(cfg)},
          {"summaries", std::move(sums)},
          {"witnesses", std::move(witnesses)}};
}

std::string summary_table(const std::vector<SuiteSummary>& summaries) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %7s %7s %7s %6s %13s %13s\n", "inequality", "trials", "passes", "fails",
                "degen", "min_margin", "median");
  os << line;
  for (const auto& s : summaries) {
    std::snprintf(line, sizeof line, "%-12s %7zu %7zu %7zu %6zu %13.4e %13.4e\n", std::string(tag(s.id)).c_str(),
                  s.trials, s.passes, s.failures.size(), s.degenerate_skipped, s.min_margin, s.median_margin);
    os << line;
  }
  return os.str();
}

// ---- probes ------------------------------------------------------------

ProbeResult run_limits_probe(double v, double tau, const std::vector<double>& lambdas, double b,
                             const std::vector<double>& eps_list) {
  ProbeResult out{Inequality::DifferenceRatioLimits};
  std::vector<double> eps(eps_list);
  std::sort(eps.begin(), eps.end(), std::greater<>());
  for (double lambda : lambdas) {
    out.reports.push_back(probe_difference_ratio_limits(v, tau, lambda, b, eps));
    out.holds = out.holds && out.reports.back().holds;
    const double low = std::pow((1.0 - v) / (1.0 - tau), lambda);
    const double high = std::pow(v / tau, lambda);
    for (double e : eps) {
      const double r = difference_ratio(v, tau, lambda, {b * e, b});
      out.rows.push_back({"low", v, lambda, e, r, low, std::abs(r - low)});
    }
    for (double e : eps) {
      const double r = difference_ratio(v, tau, lambda, {b / e, b});
      out.rows.push_back({"high", v, lambda, e, r, high, std::abs(r - high)});
    }
  }
  return out;
}

ProbeResult run_sharpness_probe(const std::vector<double>& vs, const std::vector<double>& t_list) {
  ProbeResult out{Inequality::WeightFactorSharpness};
  std::vector<double> ts(t_list);
  std::sort(ts.begin(), ts.end(), std::greater<>());
  for (double v : vs) {
    out.reports.push_back(probe_weight_factor_sharpness(v, ts));
    out.holds = out.holds && out.reports.back().holds;
    const double limit = v * (1.0 - v);
    for (double t : ts) {
      const double d = t - 1.0;
      const double g = arith_harm_gap(v, {1.0, t}) / (d * d);
      out.rows.push_back({"g", v, 1.0, t, g, limit, std::abs(g - limit)});
    }
  }
  return out;
}

std::string to_csv(const ProbeResult& p) {
  std::string out = "probe,series,v,lambda,point,value,limit,gap\n";
  for (const auto& r : p.rows) {
    out += std::string(tag(p.id)) + ',' + r.series + ',' + num(r.v) + ',' + num(r.lambda) + ',' + num(r.point) +
           ',' + num(r.value) + ',' + num(r.limit) + ',' + num(r.gap) + '\n';
  }
  return out;
}

nlohmann::json to_json(const ProbeResult& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : p.rows) {
    rows.push_back({{"series", r.series},
                    {"v", r.v},
                    {"lambda", r.lambda},
                    {"point", r.point},
                    {"value", r.value},
                    {"limit", r.limit},
                    {"gap", r.gap}});
  }
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : p.reports) reports.push_back(to_json(r));
  return {{"spec_version", kReportVersion},
          {"probe", tag(p.id)},
          {"holds", p.holds},
          {"rows", std::move(rows)},
          {"reports", std::move(reports)}};
}

}  // namespace matmeans
