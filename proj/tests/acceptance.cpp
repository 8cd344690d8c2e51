// Acceptance gates. Prints one PASS/FAIL line per criterion and exits
// nonzero if any gate fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "matmeans/certifiers.hpp"
#include "matmeans/error.hpp"
#include "matmeans/linalg.hpp"
#include "matmeans/means.hpp"
#include "matmeans/runner.hpp"
#include "matmeans/sampling.hpp"
#include "oracles.hpp"

using namespace matmeans;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Gate {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- full suite ---------------------------------------------------------

Gate full_suite() {
  const RunConfig cfg;
  const auto records = run_instances(verify_instances(cfg), 1.0, 1);
  const auto summaries = summarize(records);

  std::size_t far_below = 0;
  for (const auto& r : records) {
    for (const auto& m : r.report.margins)
      if (m.value < -10.0 * r.report.tol_used) {
        ++far_below;
        break;
      }
  }
  std::size_t failed = 0;
  std::string failing;
  for (const auto& s : summaries) {
    failed += s.failures.size();
    if (!s.failures.empty()) failing += fmt(" %s=%zu/%zu", std::string(tag(s.id)).c_str(), s.failures.size(), s.trials);
  }

  // the smallest instance behind the failures: A = diag(1,4), B = [[5,2],[2,1]], X = [[-2,1],[-1,0]], v = 1/2
  const SpdMatrix a = SpdMatrix::diagonal(std::vector<double>{1, 4});
  const SpdMatrix b(ComplexMatrix{{5, 2}, {2, 1}});
  const ComplexMatrix x{{-2, 1}, {-1, 0}};
  const double geo = hs_norm_squared(x_geometric(a, b, x, 0.5));
  const double harm = hs_norm_squared(x_harmonic(a, b, x, 0.5));

  Gate g{"full-suite", failed == 0 && far_below == 0, ""};
  g.detail = fmt("%zu records, %zu failing, %zu with a margin below -10*tol;", records.size(), failed, far_below) +
             (failing.empty() ? std::string(" all certifiers clean")
                              : failing + fmt("; fixed instance |A^(1/2) X B^(1/2)|^2 = %.6g < |HX|^2 = %.6g", geo, harm));
  return g;
}

// ---- diagonal instances against entrywise scalar certifiers -------------

struct Agreement {
  double max_diff = 0.0;
  std::size_t compared = 0;
  std::size_t verdict_mismatch = 0;
  std::size_t skipped = 0;

  void margin(double matrix, double scalar) {
    max_diff = std::max(max_diff, std::abs(matrix - scalar));
    if (!std::isfinite(matrix) || !std::isfinite(scalar)) max_diff = INFINITY;
    ++compared;
  }
  void verdict(bool matrix, bool scalar) { verdict_mismatch += matrix != scalar; }
};

double entry_min(std::size_t n, const std::function<double(std::size_t)>& f) {
  double m = INFINITY;
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, f(i));
  return m;
}

Gate diagonal_equivalence() {
  constexpr double kTol = 1e-10;
  std::map<std::string, Agreement> agree;
  using L = long double;

  for (std::uint64_t t = 0; t < 10000; ++t) {
    Rng rng(SeedPath{kSeed, t, 0xD1A6});
    const std::size_t n = 1 + t % 8;
    std::vector<double> da(n), db(n), lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      da[i] = rng.log_uniform(0.5, 2.0);
      db[i] = rng.log_uniform(0.5, 2.0);
      lo[i] = std::min(da[i], db[i]);
      hi[i] = std::max(da[i], db[i]);
    }
    const double v = rng.uniform(0.05, 0.9);
    const double tau = rng.uniform(v + 0.05, 0.95);
    const double vh = rng.uniform(0.05, 0.5);
    const double lambda = rng.uniform(1.0, 2.0);
    const SpdMatrix A = SpdMatrix::diagonal(da), B = SpdMatrix::diagonal(db);
    const auto pair = [&](std::size_t i) { return ScalarPair{da[i], db[i]}; };

    {  // mean chain
      const auto r = check_matrix_mean_chain(A, B, v);
      std::vector<CertificateReport> s;
      for (std::size_t i = 0; i < n; ++i) s.push_back(check_scalar_mean_chain(pair(i), v));
      auto& g = agree["matrix_agh"];
      for (std::size_t k = 0; k < 2; ++k)
        g.margin(r.margins[k].value, entry_min(n, [&](std::size_t i) { return s[i].margins[k].value; }));
      g.verdict(r.holds, std::all_of(s.begin(), s.end(), [](const auto& x) { return x.holds; }));
    }
    {  // Loewner difference ratio: entry margin is gap_tau * (scalar ratio margin)
      const auto r = check_loewner_difference_ratio(A, B, v, tau);
      double m[2] = {INFINITY, INFINITY};
      bool holds = true;
      for (std::size_t i = 0; i < n; ++i) {
        const auto s = check_difference_ratio(pair(i), v, tau, 1.0);
        holds = holds && s.holds;
        const double d = arith_harm_gap(tau, pair(i));
        for (std::size_t k = 0; k < 2; ++k) m[k] = std::min(m[k], s.degenerate ? 0.0 : d * s.margins[k].value);
      }
      auto& g = agree["thm31"];
      g.margin(r.margins[0].value, m[0]);
      g.margin(r.margins[1].value, m[1]);
      g.verdict(r.holds, holds);
    }
    {  // half weight
      const auto r = check_loewner_half_weight(A, B, vh);
      std::vector<CertificateReport> s;
      for (std::size_t i = 0; i < n; ++i) s.push_back(check_half_weight_difference(pair(i), vh, false));
      auto& g = agree["cor31"];
      for (std::size_t k = 0; k < 2; ++k)
        g.margin(r.margins[k].value, entry_min(n, [&](std::size_t i) { return s[i].margins[k].value; }));
      g.verdict(r.holds, std::all_of(s.begin(), s.end(), [](const auto& x) { return x.holds; }));
    }
    {  // bounded difference on the sorted pair
      const SpdMatrix P = SpdMatrix::diagonal(lo), Q = SpdMatrix::diagonal(hi);
      const double m = *std::min_element(lo.begin(), lo.end()), M = *std::max_element(hi.begin(), hi.end());
      const auto r = check_loewner_bounded_difference(P, Q, v, {m, M});
      const L c = L(v) * (1 - L(v)) * (1 - L(M) / m) * (1 - L(M) / m);
      const double ref = entry_min(n, [&](std::size_t i) { return double(c * hi[i] - oracle::gap(v, lo[i], hi[i])); });
      auto& g = agree["thm32"];
      g.margin(r.margins[0].value, ref);
      g.verdict(r.holds, ref >= -r.tol_used);
    }
    const auto I = ComplexMatrix::identity(n);
    {  // HS ratio with X = I: the N_tau-weighted average of the squared scalar margins
      const auto r = check_hs_difference_ratio(A, B, I, v, tau);
      auto& g = agree["thm41"];
      if (r.degenerate) {
        ++g.skipped;
      } else {
        L num[2] = {0, 0}, den = 0;
        bool holds = true;
        for (std::size_t i = 0; i < n; ++i) {
          const auto s = check_difference_ratio(pair(i), v, tau, 2.0);
          holds = holds && s.holds;
          if (s.degenerate) continue;
          const L w = oracle::power_gap(tau, 2.0L, da[i], db[i]);
          den += w;
          for (std::size_t k = 0; k < 2; ++k) num[k] += w * s.margins[k].value;
        }
        g.margin(r.margins[0].value, double(num[0] / den));
        g.margin(r.margins[1].value, double(num[1] / den));
        g.verdict(r.holds, holds);
      }
    }
    {  // HS chain with X = I: |P|^2 - |Q|^2 summed as (p - q)(p + q)
      const auto r = check_hs_mean_chain(A, B, I, v);
      L m[2] = {0, 0};
      bool holds = true;
      for (std::size_t i = 0; i < n; ++i) {
        const auto s = check_scalar_mean_chain(pair(i), v);
        holds = holds && s.holds;
        const L ge = geometric_mean(v, pair(i));
        m[0] += s.margins[0].value * (ge + harmonic_mean(v, pair(i)));
        m[1] += s.margins[1].value * (arithmetic_mean(v, pair(i)) + ge);
      }
      auto& g = agree["cor41"];
      g.margin(r.margins[0].value, double(m[0]));
      g.margin(r.margins[1].value, double(m[1]));
      g.verdict(r.holds, holds);
    }
    {  // HS half weight with X = I: sums of the squared scalar margins
      const auto r = check_hs_half_weight(A, B, I, vh);
      L m[2] = {0, 0};
      bool holds = true;
      for (std::size_t i = 0; i < n; ++i) {
        const auto s = check_half_weight_difference(pair(i), vh, true);
        holds = holds && s.holds;
        for (std::size_t k = 0; k < 2; ++k) m[k] += s.margins[k].value;
      }
      auto& g = agree["cor42"];
      g.margin(r.margins[0].value, double(m[0]));
      g.margin(r.margins[1].value, double(m[1]));
      g.verdict(r.holds, holds);
    }

    // determinants factor into products of scalar means
    L pa = 1, ph = 1, pd = 1, pd_h = 1, pa_vh = 1, ph_vh = 1;
    for (std::size_t i = 0; i < n; ++i) {
      pa *= oracle::arith(v, da[i], db[i]);
      ph *= oracle::harm(v, da[i], db[i]);
      pd *= oracle::gap(tau, da[i], db[i]);
      pa_vh *= oracle::arith(vh, da[i], db[i]);
      ph_vh *= oracle::harm(vh, da[i], db[i]);
      pd_h *= oracle::gap(0.5L, da[i], db[i]);
    }
    {
      const auto r = check_det_power_order(A, B, v, lambda);
      const double ref = double(std::pow(pa, L(lambda)) - std::pow(ph, L(lambda)));
      auto& g = agree["prop51"];
      g.margin(r.margins[0].value, ref);
      g.verdict(r.holds, ref >= -r.tol_used);
    }
    {
      const auto r = check_det_root_difference(A, B, v, tau, lambda);
      auto& g = agree["thm51"];
      if (r.degenerate) {
        ++g.skipped;
      } else {
        const L k = L(lambda) / n;
        const double ref = double(std::pow(pa, k) - std::pow(ph, k) - std::pow(L(v) / tau, L(lambda)) * std::pow(pd, k));
        g.margin(r.margins[0].value, ref);
        g.verdict(r.holds, ref >= -r.tol_used);
      }
    }
    {
      const auto r = check_det_difference(A, B, v, tau);
      const double ref = double(pa - ph - std::pow(L(v) / tau, L(n)) * pd);
      auto& g = agree["cor51"];
      g.margin(r.margins[0].value, ref);
      g.verdict(r.holds, ref >= -r.tol_used);
    }
    {
      const auto r = check_det_half_weight(A, B, vh);
      const double ref = double(pa_vh - ph_vh - std::pow(2 * L(vh), L(n)) * pd_h);
      auto& g = agree["cor52"];
      g.margin(r.margins[0].value, ref);
      g.verdict(r.holds, ref >= -r.tol_used);
    }
  }

  bool pass = true;
  double worst = 0.0;
  std::string worst_id, detail;
  std::size_t mismatches = 0, skipped = 0;
  for (const auto& [id, g] : agree) {
    pass = pass && g.max_diff <= kTol && g.verdict_mismatch == 0 && g.compared > 0;
    mismatches += g.verdict_mismatch;
    skipped += g.skipped;
    if (g.max_diff >= worst) {
      worst = g.max_diff;
      worst_id = id;
    }
  }
  detail = fmt("10000 instances x %zu certifiers, max |margin diff| %.3g (%s) vs 1e-10, %zu verdict mismatches, "
               "%zu degenerate skipped",
               agree.size(), worst, worst_id.c_str(), mismatches, skipped);
  return {"diagonal-equivalence", pass, detail};
}

// ---- limit probes -------------------------------------------------------

bool non_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1]) return false;
  return true;
}

Gate ratio_limits() {
  const double v = 0.25, tau = 0.5, b = 1.0;
  const std::vector<double> eps{1e-2, 1e-4, 1e-6, 1e-8};
  bool pass = true;
  double worst = 0.0;
  for (double lambda : {1.0, 2.0}) {
    const double small_limit = std::pow((1 - v) / (1 - tau), lambda);
    const double large_limit = std::pow(v / tau, lambda);
    const double rs = difference_ratio(v, tau, lambda, {1e-8 * b, b});
    const double rl = difference_ratio(v, tau, lambda, {1e8 * b, b});
    const double es = std::abs(rs - small_limit) / small_limit, el = std::abs(rl - large_limit) / large_limit;
    worst = std::max({worst, es, el});
    pass = pass && es <= 1e-4 && el <= 1e-4;
  }
  const auto probe = run_limits_probe(v, tau, {1.0, 2.0}, b, eps);
  std::map<std::pair<std::string, double>, std::vector<double>> series;
  for (const auto& row : probe.rows) series[{row.series, row.lambda}].push_back(row.gap);
  bool monotone = series.size() == 4;
  for (const auto& [key, gaps] : series) monotone = monotone && gaps.size() == eps.size() && non_increasing(gaps);
  return {"ratio-limit-sharpness", pass && monotone && probe.holds,
          fmt("worst relative distance to the limits %.3g vs 1e-4; gap sequences %s", worst,
              monotone ? "non-increasing" : "NOT monotone")};
}

Gate weight_factor() {
  const std::vector<double> ts{1.5, 1.1, 1.01, 1.001, 1.0001, 1.00001, 1.000001};
  const auto probe = run_sharpness_probe({0.1, 0.3, 0.5}, ts);
  std::map<double, std::vector<double>> gaps;
  double near = INFINITY;
  for (const auto& row : probe.rows) {
    gaps[row.v].push_back(row.gap);
    if (row.v == 0.5 && row.point == 1.000001) near = std::abs(row.value - 0.25);
  }
  bool monotone = gaps.size() == 3;
  for (const auto& [v, g] : gaps) monotone = monotone && non_increasing(g);
  return {"weight-factor-sharpness", near <= 1e-5 && monotone && probe.holds,
          fmt("|g_0.5(1+1e-6) - 0.25| = %.3g vs 1e-5; gaps %s as t decreases to 1", near,
              monotone ? "shrink monotonically" : "NOT monotone")};
}

// ---- eigensolver --------------------------------------------------------

Gate eigensolver() {
  double worst_rec = 0.0, worst_unit = 0.0;
  bool pass = true;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    Rng rng(SeedPath{kSeed, t, 0xE16});
    const std::size_t n = 1 + t % 8;
    const double cap = rng.log_uniform(1.0, 1e6);
    std::vector<double> ev(n);
    for (auto& e : ev) {
      e = rng.log_uniform(1.0 / std::sqrt(cap), std::sqrt(cap));
      if (rng.uniform() < 0.3) e = -e;
    }
    ComplexMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = ev[i];
    const ComplexMatrix u = random_unitary(n, rng);
    const HermitianMatrix h(oracle::multiply(oracle::multiply(u, d), oracle::adjoint(u)));

    const auto e = eig_hermitian(h);
    ComplexMatrix lam(n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.eigenvalues[i];
    const ComplexMatrix back = oracle::multiply(oracle::multiply(e.unitary, lam), oracle::adjoint(e.unitary));
    const double rec = oracle::distance(h.matrix(), back) / std::max(1.0, oracle::frobenius(h.matrix()));
    const double unit = oracle::unitarity_defect(e.unitary) / n;
    worst_rec = std::max(worst_rec, rec);
    worst_unit = std::max(worst_unit, unit);
    pass = pass && rec <= 1e-10 && unit <= 1e-12;
  }
  return {"eigensolver-quality", pass,
          fmt("1000 matrices, worst reconstruction %.3g*max(1,|A|) vs 1e-10, worst unitarity defect %.3g*n vs 1e-12",
              worst_rec, worst_unit)};
}

// ---- ordered-pair sampler -----------------------------------------------

Gate ordered_pairs() {
  std::size_t bad = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    Rng rng(SeedPath{kSeed, t, 0x0BD});
    const std::size_t n = 1 + t % 8;
    const double m = rng.log_uniform(1e-3, 1e3);
    const double M = t % 50 == 0 ? m : m * rng.log_uniform(1.0, 1e6);
    const auto [a, b] = random_ordered_pair(n, m, M, rng);
    for (const auto& c : check_bounds_hypothesis(a, b, {m, M}, 0.0))
      if (!c.verdict.holds) {
        ++bad;
        break;
      }
  }
  return {"ordered-pair-sampler", bad == 0, fmt("10000 draws, %zu failing a hypothesis check at tol 0", bad)};
}

// ---- determinism --------------------------------------------------------

Gate determinism() {
  const RunConfig cfg;
  const auto inst = verify_instances(cfg);
  const std::string first = to_csv(run_instances(inst, 1.0, 1));
  const std::string second = to_csv(run_instances(inst, 1.0, 1));
  const std::string parallel = to_csv(run_instances(inst, 1.0, 4));
  const bool pass = first == second && first == parallel;
  return {"determinism", pass,
          fmt("%zu-byte CSV; repeat run %s, 4 workers %s", first.size(), first == second ? "identical" : "DIFFERS",
              first == parallel ? "identical" : "DIFFERS")};
}

// ---- negative control ---------------------------------------------------

Gate negative_control() {
  const SpdMatrix a = random_spd({4, 0.1, 10.0, SpectrumDistribution::LogUniform}, SeedPath{kSeed, 0, 0xBAD});
  const SpdMatrix b = random_spd({4, 0.1, 10.0, SpectrumDistribution::LogUniform}, SeedPath{kSeed, 1, 0xBAD});

  bool rejected = false;
  try {
    check_loewner_difference_ratio(a, b, 0.7, 0.3);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::WeightOrder;
  }

  MeanSet broken = standard_means();
  broken.mat_harm = broken.mat_arith;
  const auto r = check_matrix_mean_chain(a, b, 0.4, {1.0, &broken});
  const std::string json = to_json(r).dump();
  const bool caught = !r.holds && r.witness.has_value() && json.find("\"witness\"") != std::string::npos;
  return {"negative-control", rejected && caught,
          fmt("v > tau %s; corrupted harmonic mean %s (%zu-byte report)", rejected ? "rejected" : "NOT rejected",
              caught ? "reported holds=false with a witness" : "NOT caught", json.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Gate (*)()>> gates{
      {"full-suite", full_suite},
      {"diagonal-equivalence", diagonal_equivalence},
      {"ratio-limit-sharpness", ratio_limits},
      {"weight-factor-sharpness", weight_factor},
      {"eigensolver-quality", eigensolver},
      {"ordered-pair-sampler", ordered_pairs},
      {"determinism", determinism},
      {"negative-control", negative_control},
  };
  int failed = 0;
  for (const auto& [name, run] : gates) {
    Gate g{name, false, ""};
    try {
      g = run();
    } catch (const std::exception& e) {
      g.detail = std::string("threw: ") + e.what();
    }
    std::printf("%s  %-26s %s\n", g.pass ? "PASS" : "FAIL", g.name.c_str(), g.detail.c_str());
    std::fflush(stdout);
    failed += !g.pass;
  }
  std::printf("%d of %zu acceptance gates passed\n", static_cast<int>(gates.size()) - failed, gates.size());
  return failed == 0 ? 0 : 1;
}
