#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "certify_util.hpp"

namespace matmeans {

using detail::finish;
using detail::require;
using detail::tolerance;

namespace {

nlohmann::json pair_witness(ScalarPair p, double v) { return {{"a", p.a}, {"b", p.b}, {"v", v}}; }

std::string fmt_key(const char* prefix, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s@%.3g", prefix, x);
  return buf;
}

// Sequence of gaps ordered so that the probe parameter moves toward its limit.
bool non_increasing(const std::vector<double>& gaps, double slack) {
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i] > gaps[i - 1] + slack) return false;
  return true;
}

void require_ordered_pair(ScalarPair p) {
  require(p.a > 0.0 && p.b > 0.0, ErrorKind::InvalidArgument, "arguments must be positive");
  require(p.a < p.b, ErrorKind::RequiresOrdered, "requires a < b");
}

}  // namespace

CertificateReport check_scalar_mean_chain(ScalarPair p, double v, const CheckOptions& opts) {
  const MeanSet& m = *opts.means;
  const double ar = m.arith(v, p);
  const double ge = m.geo(v, p);
  const double ha = m.harm(v, p);
  const double tol = tolerance(opts, std::max({ar, ge, ha}));
  return finish(Inequality::ScalarMeanChain, {{"geo_minus_harm", ge - ha}, {"arith_minus_geo", ar - ge}}, tol,
                [&] { return pair_witness(p, v); });
}

CertificateReport check_difference_ratio(ScalarPair p, double v, double tau, double lambda,
                                         const CheckOptions& opts) {
  detail::require_open_weight(v, "v");
  detail::require_open_weight(tau, "tau");
  require(v < tau, ErrorKind::WeightOrder, "requires v < tau");
  detail::require_lambda(lambda);
  require(p.a > 0.0 && p.b > 0.0, ErrorKind::InvalidArgument, "arguments must be positive");
  if (nearly_equal(p, detail::kDegenerateRel)) return detail::degenerate(Inequality::DifferenceRatio, "a == b");

  const MeanSet& m = *opts.means;
  const double ratio = m.power_gap(v, lambda, p) / m.power_gap(tau, lambda, p);
  const double lower = std::pow(v / tau, lambda);
  const double upper = std::pow((1.0 - v) / (1.0 - tau), lambda);
  const bool strict = std::abs(p.a - p.b) >= 0.1 * std::max(p.a, p.b) && v >= 0.1 && tau <= 0.9 &&
                      tau - v >= 0.05;
  const double tol = tolerance(opts, std::max(ratio, upper));
  auto r = finish(Inequality::DifferenceRatio, {{"ratio_minus_lower", ratio - lower}, {"upper_minus_ratio", upper - ratio}},
                  tol,
                  [&] {
                    auto w = pair_witness(p, v);
                    w["tau"] = tau;
                    w["lambda"] = lambda;
                    w["ratio"] = ratio;
                    return w;
                  },
                  strict);
  if (strict) r.note = "strict";
  return r;
}

CertificateReport probe_difference_ratio_limits(double v, double tau, double lambda, double b,
                                                std::span<const double> eps_list, const CheckOptions& opts) {
  detail::require_open_weight(v, "v");
  detail::require_open_weight(tau, "tau");
  require(v < tau, ErrorKind::WeightOrder, "requires v < tau");
  detail::require_lambda(lambda);
  require(b > 0.0 && std::isfinite(b), ErrorKind::InvalidArgument, "b must be positive");
  require(!eps_list.empty(), ErrorKind::InvalidArgument, "empty eps list");
  for (double e : eps_list) {
    require(e >= 1e-12 && e < 1.0, ErrorKind::InvalidArgument, "eps must lie in [1e-12, 1)");
  }

  std::vector<double> eps(eps_list.begin(), eps_list.end());
  std::sort(eps.begin(), eps.end(), std::greater<>());

  const double low_limit = std::pow((1.0 - v) / (1.0 - tau), lambda);
  const double high_limit = std::pow(v / tau, lambda);
  const MeanSet& m = *opts.means;
  auto ratio = [&](double a) {
    const ScalarPair p{a, b};
    return m.power_gap(v, lambda, p) / m.power_gap(tau, lambda, p);
  };

  std::vector<Margin> margins;
  std::vector<double> low_gaps, high_gaps;
  for (double e : eps) {
    low_gaps.push_back(std::abs(ratio(b * e) - low_limit));
    high_gaps.push_back(std::abs(ratio(b / e) - high_limit));
  }
  for (std::size_t i = 0; i < eps.size(); ++i) margins.push_back({fmt_key("low_gap", eps[i]), low_gaps[i]});
  for (std::size_t i = 0; i < eps.size(); ++i) margins.push_back({fmt_key("high_gap", eps[i]), high_gaps[i]});

  CertificateReport r{Inequality::DifferenceRatioLimits};
  r.margins = std::move(margins);
  r.tol_used = 4.0 * 2.220446049250313e-16 * low_limit;
  r.holds = non_increasing(low_gaps, r.tol_used) && non_increasing(high_gaps, r.tol_used);
  if (!r.holds) {
    r.note = "gap sequence not monotone";
    r.witness = nlohmann::json{{"v", v}, {"tau", tau}, {"lambda", lambda}, {"b", b}, {"eps", eps}};
  }
  return r;
}

CertificateReport check_half_weight_difference(ScalarPair p, double v, bool squared, const CheckOptions& opts) {
  detail::require_open_weight(v, "v");
  const MeanSet& m = *opts.means;
  const double lambda = squared ? 2.0 : 1.0;
  const double middle = m.power_gap(v, lambda, p);
  const double half = m.power_gap(0.5, lambda, p);
  const double lower = std::pow(2.0 * std::min(v, 1.0 - v), lambda) * half;
  const double upper = std::pow(2.0 * std::max(v, 1.0 - v), lambda) * half;
  const double tol = tolerance(opts, std::max(middle, upper));
  return finish(Inequality::HalfWeightDifference, {{"middle_minus_lower", middle - lower}, {"upper_minus_middle", upper - middle}},
                tol, [&] {
                  auto w = pair_witness(p, v);
                  w["lambda"] = lambda;
                  return w;
                });
}

CertificateReport check_reciprocal_sandwich(ScalarPair p, double v, const CheckOptions& opts) {
  detail::require_open_weight(v, "v");
  require(p.a > 0.0 && p.b > 0.0, ErrorKind::InvalidArgument, "arguments must be positive");
  if (nearly_equal(p, detail::kDegenerateRel)) return detail::degenerate(Inequality::ReciprocalSandwich, "a == b");
  require_ordered_pair(p);

  const MeanSet& m = *opts.means;
  // v/a + (1-v)/b - 1/(va + (1-v)b) = 1/H_v - 1/A_v = (A_v - H_v) / (A_v H_v)
  const double middle = m.gap(v, p) / (m.arith(v, p) * m.harm(v, p));
  const double d2 = (p.b - p.a) * (p.b - p.a);
  const double coeff = 0.5 * v * (1.0 - v) * d2;
  const double lower = coeff * 2.0 / (p.b * p.b * p.b);
  const double upper = coeff * 2.0 / (p.a * p.a * p.a);
  const double tol = tolerance(opts, std::max(middle, upper));
  return finish(Inequality::ReciprocalSandwich, {{"middle_minus_lower", middle - lower}, {"upper_minus_middle", upper - middle}},
                tol, [&] { return pair_witness(p, v); });
}

CertificateReport check_one_sided_bounds(ScalarPair p, double v, const CheckOptions& opts) {
  require(v > 0.0 && v <= 1.0, ErrorKind::InvalidArgument, "v must lie in (0,1]");
  require(p.a > 0.0 && p.b > 0.0, ErrorKind::InvalidArgument, "arguments must be positive");
  if (nearly_equal(p, detail::kDegenerateRel)) return detail::degenerate(Inequality::OneSidedBounds, "a == b");
  require_ordered_pair(p);

  const double middle = opts.means->gap(v, p);
  const double lo_f = 1.0 - p.a / p.b;
  const double hi_f = 1.0 - p.b / p.a;
  const double lower = v * (1.0 - v) * lo_f * lo_f * p.a;
  const double upper = v * (1.0 - v) * hi_f * hi_f * p.b;
  const double tol = tolerance(opts, std::max(middle, upper));
  return finish(Inequality::OneSidedBounds, {{"middle_minus_lower", middle - lower}, {"upper_minus_middle", upper - middle}},
                tol, [&] { return pair_witness(p, v); });
}

CertificateReport probe_weight_factor_sharpness(double v, std::span<const double> t_list, const CheckOptions& opts) {
  detail::require_open_weight(v, "v");
  require(!t_list.empty(), ErrorKind::InvalidArgument, "empty t list");
  for (double t : t_list) require(t > 1.0 && std::isfinite(t), ErrorKind::InvalidArgument, "t must exceed 1");

  std::vector<double> ts(t_list.begin(), t_list.end());
  std::sort(ts.begin(), ts.end(), std::greater<>());

  const double limit = v * (1.0 - v);
  const double tol = tolerance(opts, limit);
  std::vector<double> gaps;
  std::vector<Margin> margins;
  bool bracketed = true;
  for (double t : ts) {
    const double d = t - 1.0;
    const double g = opts.means->gap(v, {1.0, t}) / (d * d);
    if (!(g >= limit / t - tol && g <= limit + tol)) bracketed = false;
    gaps.push_back(std::abs(g - limit));
    margins.push_back({fmt_key("gap", t), gaps.back()});
  }

  CertificateReport r{Inequality::WeightFactorSharpness};
  r.margins = std::move(margins);
  r.tol_used = tol;
  const bool shrinking = non_increasing(gaps, 4.0 * 2.220446049250313e-16 * limit);
  r.holds = bracketed && shrinking;
  if (!r.holds) {
    r.note = bracketed ? "gaps do not shrink toward t = 1" : "g_v(t) outside [v(1-v)/t, v(1-v)]";
    r.witness = nlohmann::json{{"v", v}, {"t", ts}};
  }
  return r;
}

CertificateReport check_minkowski_product(std::span<const double> a, std::span<const double> b,
                                          const CheckOptions& opts) {
  require(!a.empty() && a.size() == b.size(), ErrorKind::DimensionMismatch, "vectors must have equal nonzero length");
  const double n = static_cast<double>(a.size());
  double la = 0.0, lb = 0.0, ls = 0.0;
  bool equal = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i] > 0.0 && b[i] > 0.0, ErrorKind::InvalidArgument, "entries must be positive");
    la += std::log(a[i]);
    lb += std::log(b[i]);
    ls += std::log(a[i] + b[i]);
    if (a[i] != b[i]) equal = false;
  }
  const double ga = std::exp(la / n);
  const double gb = std::exp(lb / n);
  const double gs = std::exp(ls / n);
  const double tol = tolerance(opts, gs);
  auto r = finish(Inequality::MinkowskiProduct, {{"sum_root_minus_roots", gs - ga - gb}}, tol, [&] {
    return nlohmann::json{{"a", std::vector<double>(a.begin(), a.end())}, {"b", std::vector<double>(b.begin(), b.end())}};
  });
  if (equal) {
    r.note = "equality (a == b)";
  } else if (std::abs(gs - ga - gb) <= tol) {
    r.note = "equality observed";
  }
  return r;
}

CertificateReport check_power_difference(double a, double b, double lambda, const CheckOptions& opts) {
  require(b > 0.0 && std::isfinite(a), ErrorKind::InvalidArgument, "arguments must be positive");
  require(a > b, ErrorKind::RequiresOrdered, "requires a > b");
  detail::require_lambda(lambda);
  const double lhs = std::pow(a, lambda) - std::pow(b, lambda);
  const double rhs = std::pow(a - b, lambda);
  const double tol = tolerance(opts, std::pow(a, lambda));
  return finish(Inequality::PowerDifference, {{"power_gap_minus_gap_power", lhs - rhs}}, tol, [&] {
    return nlohmann::json{{"a", a}, {"b", b}, {"lambda", lambda}};
  });
}

}  // namespace matmeans
