#include <algorithm>
#include <cmath>

#include "certify_util.hpp"

namespace matmeans {

using detail::finish;
using detail::require;
using detail::tolerance;

namespace {

nlohmann::json pair_witness(const SpdMatrix& a, const SpdMatrix& b, double v) {
  return {{"A", to_json(a.matrix())}, {"B", to_json(b.matrix())}, {"v", v}};
}

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b) {
  require(a.dim() == b.dim(), ErrorKind::DimensionMismatch, "operands differ in dimension");
}

void require_weight_order(double v, double tau) {
  detail::require_open_weight(v, "v");
  detail::require_open_weight(tau, "tau");
  require(v <= tau, ErrorKind::WeightOrder, "requires v <= tau");
}

double norm(const SpdMatrix& m) { return hs_norm(m.matrix()); }

HermitianMatrix arith_harm_difference(const MeanSet& m, const SpdMatrix& a, const SpdMatrix& b, double w,
                                      double& scale) {
  const SpdMatrix ar = m.mat_arith(a, b, w);
  const SpdMatrix ha = m.mat_harm(a, b, w);
  scale = norm(ar) + norm(ha);
  return ar.hermitian() - ha.hermitian();
}

// |AX_w|^2 - |HX_w|^2 and its magnitude |AX_w|^2 + |HX_w|^2.
struct HsDifference {
  double value;
  double scale;
};

HsDifference hs_difference(const MeanSet& m, const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x,
                           double w) {
  // |P|^2 - |H|^2 = Re<P - H, P + H>, with P - H taken from the cancellation-free gap
  const ComplexMatrix ar = m.x_arith(a, b, x, w);
  const ComplexMatrix ha = m.x_harm(a, b, x, w);
  const ComplexMatrix gap = m.x_gap(a, b, x, w);
  const ComplexMatrix sum = ar + ha;
  double value = 0.0;
  for (std::size_t k = 0; k < sum.entries().size(); ++k) value += std::real(std::conj(gap.entries()[k]) * sum.entries()[k]);
  return {value, hs_norm_squared(ar) + hs_norm_squared(ha)};
}

CertificateReport loewner_ratio(Inequality id, const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                const CheckOptions& opts) {
  const MeanSet& m = *opts.means;
  double scale_v = 0.0, scale_t = 0.0;
  const HermitianMatrix d_v = arith_harm_difference(m, a, b, v, scale_v);
  const HermitianMatrix d_t = arith_harm_difference(m, a, b, tau, scale_t);
  const double lo = v / tau;
  const double hi = (1.0 - v) / (1.0 - tau);
  const double lower = min_eigenvalue(d_v - lo * d_t);
  const double upper = min_eigenvalue(hi * d_t - d_v);
  const double tol = tolerance(opts, scale_v + std::max(1.0, hi) * scale_t);
  return finish(id, {{"lower", lower}, {"upper", upper}}, tol, [&] {
    auto w = pair_witness(a, b, v);
    w["tau"] = tau;
    return w;
  });
}

CertificateReport det_difference(Inequality id, const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                 const CheckOptions& opts) {
  const MeanSet& m = *opts.means;
  const SpdMatrix ar_v = m.mat_arith(a, b, v);
  const SpdMatrix ha_v = m.mat_harm(a, b, v);
  double scale_t = 0.0;
  const HermitianMatrix d_t = arith_harm_difference(m, a, b, tau, scale_t);

  const double n = static_cast<double>(a.dim());
  const double det_ar = std::exp(log_determinant_spd(ar_v));
  const double det_ha = std::exp(log_determinant_spd(ha_v));
  double det_d = 1.0;
  for (double e : eigenvalues(d_t)) det_d *= e;
  const double factor = std::pow(v / tau, n);

  const double margin = det_ar - det_ha - factor * det_d;
  const double tol = tolerance(opts, n * (det_ar + det_ha + factor * std::abs(det_d)));
  return finish(id, {{"det_margin", margin}}, tol, [&] {
    auto w = pair_witness(a, b, v);
    w["tau"] = tau;
    return w;
  });
}

}  // namespace

std::vector<HypothesisCheck> check_bounds_hypothesis(const SpdMatrix& a, const SpdMatrix& b, BoundsHypothesis h,
                                                     double tol) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  const HermitianMatrix lo = HermitianMatrix::diagonal(std::vector<double>(n, h.m));
  const HermitianMatrix hi = HermitianMatrix::diagonal(std::vector<double>(n, h.M));
  std::vector<HypothesisCheck> out;
  out.push_back({"0<mI", {h.m > 0.0, h.m, 0.0}});
  out.push_back({"mI<=A", loewner_leq(lo, a.hermitian(), tol)});
  out.push_back({"A<=B", loewner_leq(a.hermitian(), b.hermitian(), tol)});
  out.push_back({"B<=MI", loewner_leq(b.hermitian(), hi, tol)});
  return out;
}

CertificateReport check_matrix_mean_chain(const SpdMatrix& a, const SpdMatrix& b, double v,
                                          const CheckOptions& opts) {
  require_same_dim(a, b);
  const MeanSet& m = *opts.means;
  const SpdMatrix ar = m.mat_arith(a, b, v);
  const SpdMatrix ge = m.mat_geo(a, b, v);
  const SpdMatrix ha = m.mat_harm(a, b, v);
  const double lower = min_eigenvalue(ge.hermitian() - ha.hermitian());
  const double upper = min_eigenvalue(ar.hermitian() - ge.hermitian());
  const double tol = tolerance(opts, norm(ar) + norm(ge) + norm(ha));
  return finish(Inequality::MatrixMeanChain, {{"geo_minus_harm", lower}, {"arith_minus_geo", upper}}, tol,
                [&] { return pair_witness(a, b, v); });
}

CertificateReport check_loewner_difference_ratio(const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                                 const CheckOptions& opts) {
  require_same_dim(a, b);
  require_weight_order(v, tau);
  return loewner_ratio(Inequality::LoewnerDifferenceRatio, a, b, v, tau, opts);
}

CertificateReport check_loewner_half_weight(const SpdMatrix& a, const SpdMatrix& b, double v,
                                            const CheckOptions& opts) {
  require_same_dim(a, b);
  require(v > 0.0 && v <= 0.5, ErrorKind::InvalidArgument, "v must lie in (0, 1/2]");
  return loewner_ratio(Inequality::LoewnerHalfWeight, a, b, v, 0.5, opts);
}

CertificateReport check_loewner_bounded_difference(const SpdMatrix& a, const SpdMatrix& b, double v,
                                                   BoundsHypothesis h, const CheckOptions& opts) {
  require_same_dim(a, b);
  require(v >= 0.0 && v <= 1.0, ErrorKind::InvalidArgument, "v must lie in [0,1]");
  require(std::isfinite(h.m) && std::isfinite(h.M) && h.m <= h.M, ErrorKind::InvalidArgument, "requires m <= M");
  const double hyp_tol =
      opts.tolerance_scale * default_loewner_tol(a.hermitian(), b.hermitian()) + detail::tolerance(opts, h.M);
  for (const auto& c : check_bounds_hypothesis(a, b, h, hyp_tol)) {
    require(c.verdict.holds, ErrorKind::HypothesisViolated,
            c.name + " fails with margin " + std::to_string(c.verdict.margin));
  }

  const MeanSet& m = *opts.means;
  double scale = 0.0;
  const HermitianMatrix d_v = arith_harm_difference(m, a, b, v, scale);
  const double f = 1.0 - h.M / h.m;
  const double coeff = v * (1.0 - v) * f * f;
  const double margin = min_eigenvalue(coeff * b.hermitian() - d_v);
  const double tol = tolerance(opts, scale + coeff * norm(b));
  return finish(Inequality::LoewnerBoundedDifference, {{"bound_minus_difference", margin}}, tol, [&] {
    auto w = pair_witness(a, b, v);
    w["m"] = h.m;
    w["M"] = h.M;
    return w;
  });
}

CertificateReport check_hs_difference_ratio(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x,
                                            double v, double tau, const CheckOptions& opts) {
  require_same_dim(a, b);
  require(x.dim() == a.dim(), ErrorKind::DimensionMismatch, "X differs in dimension");
  require_weight_order(v, tau);
  const MeanSet& m = *opts.means;
  const HsDifference num = hs_difference(m, a, b, x, v);
  const HsDifference den = hs_difference(m, a, b, x, tau);

  if (std::abs(den.value) <= tolerance(opts, den.scale)) {
    return detail::degenerate(Inequality::HsDifferenceRatio, "denominator vanishes");
  }
  const double ratio = num.value / den.value;
  const double lower = (v / tau) * (v / tau);
  const double hi = (1.0 - v) / (1.0 - tau);
  const double upper = hi * hi;
  const double tol = tolerance(opts, (num.scale + std::abs(ratio) * den.scale) / std::abs(den.value));

  std::vector<Margin> margins{{"ratio_minus_lower", ratio - lower}, {"upper_minus_ratio", upper - ratio}};
  if (den.value < 0.0) margins.push_back({"denominator", den.value});
  auto witness = [&] {
    auto w = pair_witness(a, b, v);
    w["X"] = to_json(x);
    w["tau"] = tau;
    w["ratio"] = ratio;
    w["numerator"] = num.value;
    w["denominator"] = den.value;
    return w;
  };
  auto r = finish(Inequality::HsDifferenceRatio, std::move(margins), tol, witness);
  if (den.value < 0.0 && r.holds) {
    r.holds = false;
    r.witness = witness();
  }
  return r;
}

CertificateReport check_hs_mean_chain(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v,
                                      const CheckOptions& opts) {
  require_same_dim(a, b);
  require(x.dim() == a.dim(), ErrorKind::DimensionMismatch, "X differs in dimension");
  const MeanSet& m = *opts.means;
  const double ar = hs_norm_squared(m.x_arith(a, b, x, v));
  const double ge = hs_norm_squared(m.x_geo(a, b, x, v));
  const double ha = hs_norm_squared(m.x_harm(a, b, x, v));
  const double tol = tolerance(opts, ar + ge + ha);
  return finish(Inequality::HsMeanChain, {{"geo_minus_harm", ge - ha}, {"arith_minus_geo", ar - ge}}, tol, [&] {
    auto w = pair_witness(a, b, v);
    w["X"] = to_json(x);
    w["arith_sq"] = ar;
    w["geo_sq"] = ge;
    w["harm_sq"] = ha;
    return w;
  });
}

CertificateReport check_hs_half_weight(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v,
                                       const CheckOptions& opts) {
  require_same_dim(a, b);
  require(x.dim() == a.dim(), ErrorKind::DimensionMismatch, "X differs in dimension");
  require(v > 0.0 && v <= 0.5, ErrorKind::InvalidArgument, "v must lie in (0, 1/2]");
  const MeanSet& m = *opts.means;
  const HsDifference mid = hs_difference(m, a, b, x, v);
  const HsDifference half = hs_difference(m, a, b, x, 0.5);
  const double lower = 4.0 * v * v * half.value;
  const double upper = 4.0 * (1.0 - v) * (1.0 - v) * half.value;
  const double tol = tolerance(opts, mid.scale + 4.0 * half.scale);
  return finish(Inequality::HsHalfWeight, {{"middle_minus_lower", mid.value - lower}, {"upper_minus_middle", upper - mid.value}},
                tol, [&] {
                  auto w = pair_witness(a, b, v);
                  w["X"] = to_json(x);
                  w["middle"] = mid.value;
                  w["half"] = half.value;
                  return w;
                });
}

CertificateReport check_det_power_order(const SpdMatrix& a, const SpdMatrix& b, double v, double lambda,
                                        const CheckOptions& opts) {
  require_same_dim(a, b);
  require(v >= 0.0 && v <= 1.0, ErrorKind::InvalidArgument, "v must lie in [0,1]");
  detail::require_lambda(lambda);
  const MeanSet& m = *opts.means;
  const double la = log_determinant_spd(m.mat_arith(a, b, v));
  const double lh = log_determinant_spd(m.mat_harm(a, b, v));
  const double margin = std::exp(lambda * lh) * std::expm1(lambda * (la - lh));
  const double n = static_cast<double>(a.dim());
  const double tol = tolerance(opts, lambda * n * std::exp(lambda * la));
  return finish(Inequality::DetPowerOrder, {{"det_power_gap", margin}}, tol, [&] {
    auto w = pair_witness(a, b, v);
    w["lambda"] = lambda;
    return w;
  });
}

CertificateReport check_det_root_difference(const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                            double lambda, const CheckOptions& opts) {
  require_same_dim(a, b);
  require_weight_order(v, tau);
  detail::require_lambda(lambda);
  const MeanSet& m = *opts.means;
  const SpdMatrix ar_t = m.mat_arith(a, b, tau);
  const HermitianMatrix d_t = ar_t.hermitian() - m.mat_harm(a, b, tau).hermitian();
  const auto d_eigs = eigenvalues(d_t);
  if (!(d_eigs.back() > 1e-10 * norm(ar_t))) {
    return detail::degenerate(Inequality::DetRootDifference, "difference at tau is singular");
  }

  const double n = static_cast<double>(a.dim());
  const double k = lambda / n;
  double ld = 0.0;
  for (double e : d_eigs) ld += std::log(e);
  const double t_ar = std::exp(k * log_determinant_spd(m.mat_arith(a, b, v)));
  const double t_ha = std::exp(k * log_determinant_spd(m.mat_harm(a, b, v)));
  const double t_d = std::pow(v / tau, lambda) * std::exp(k * ld);
  const double margin = t_ar - t_ha - t_d;
  const double tol = tolerance(opts, lambda * (t_ar + t_ha + t_d));
  return finish(Inequality::DetRootDifference, {{"root_margin", margin}}, tol, [&] {
    auto w = pair_witness(a, b, v);
    w["tau"] = tau;
    w["lambda"] = lambda;
    return w;
  });
}

CertificateReport check_det_difference(const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                       const CheckOptions& opts) {
  require_same_dim(a, b);
  require_weight_order(v, tau);
  return det_difference(Inequality::DetDifference, a, b, v, tau, opts);
}

CertificateReport check_det_half_weight(const SpdMatrix& a, const SpdMatrix& b, double v,
                                        const CheckOptions& opts) {
  require_same_dim(a, b);
  require(v >= 0.0 && v <= 0.5, ErrorKind::InvalidArgument, "v must lie in [0, 1/2]");
  return det_difference(Inequality::DetHalfWeight, a, b, v, 0.5, opts);
}

}  // namespace matmeans
