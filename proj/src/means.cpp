#include "matmeans/means.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "matmeans/error.hpp"
#include "matmeans/linalg.hpp"

namespace matmeans {

namespace {

void check_weight(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::InvalidArgument, "weight outside [0,1]: " + std::to_string(v));
}

void check_pair(ScalarPair p) {
  if (!(p.a > 0.0 && p.b > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.b)) {
    throw Error(ErrorKind::InvalidArgument, "mean arguments must be positive and finite");
  }
}

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, std::to_string(a) + " vs " + std::to_string(b));
}

// Eigen-based power of a Hermitian positive definite matrix that skips the
// SpdMatrix certificate; intermediate congruences can be far worse
// conditioned than the operands.
HermitianMatrix hermitian_power(const HermitianMatrix& h, double r) {
  return spectral_apply(eig_hermitian(h), [r](double x) { return std::pow(std::max(x, 0.0), r); });
}

}  // namespace

bool nearly_equal(ScalarPair p, double rel_tol) noexcept {
  return std::abs(p.a - p.b) <= rel_tol * std::max(p.a, p.b);
}

double power_mean(double t, double v, ScalarPair p) {
  check_weight(v);
  check_pair(p);
  if (t == 0.0) return geometric_mean(v, p);
  return std::pow(v * std::pow(p.a, t) + (1.0 - v) * std::pow(p.b, t), 1.0 / t);
}

double arithmetic_mean(double v, ScalarPair p) {
  check_weight(v);
  check_pair(p);
  return v * p.a + (1.0 - v) * p.b;
}

double geometric_mean(double v, ScalarPair p) {
  check_weight(v);
  check_pair(p);
  return std::pow(p.a, v) * std::pow(p.b, 1.0 - v);
}

double harmonic_mean(double v, ScalarPair p) {
  check_weight(v);
  check_pair(p);
  return 1.0 / (v / p.a + (1.0 - v) / p.b);
}

double arith_harm_gap(double v, ScalarPair p) {
  check_weight(v);
  check_pair(p);
  const double d = p.a - p.b;
  return v * (1.0 - v) * d * d / (v * p.b + (1.0 - v) * p.a);
}

double arith_harm_power_gap(double v, double lambda, ScalarPair p) {
  const double gap = arith_harm_gap(v, p);
  if (lambda == 1.0) return gap;
  const double h = harmonic_mean(v, p);
  return std::pow(h, lambda) * std::expm1(lambda * std::log1p(gap / h));
}

double difference_ratio(double v, double tau, double lambda, ScalarPair p) {
  if (!(v > 0.0 && v < 1.0 && tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "weights must lie in (0,1)");
  }
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw Error(ErrorKind::InvalidArgument, "lambda must be >= 1");
  check_pair(p);
  if (nearly_equal(p, kDistinctTol)) throw Error(ErrorKind::DegenerateInput, "a == b gives 0/0");
  return arith_harm_power_gap(v, lambda, p) / arith_harm_power_gap(tau, lambda, p);
}

SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b, double v) {
  check_dims(a.dim(), b.dim());
  check_weight(v);
  if (v == 1.0) return a;
  if (v == 0.0) return b;
  return SpdMatrix(HermitianMatrix(combine(v, a.matrix(), 1.0 - v, b.matrix())));
}

SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b, double v) {
  check_dims(a.dim(), b.dim());
  check_weight(v);
  if (v == 1.0) return a;
  if (v == 0.0) return b;
  const HermitianMatrix root = spectral_apply(a.eig(), [](double x) { return std::sqrt(x); });
  const HermitianMatrix inv_root = spectral_apply(a.eig(), [](double x) { return 1.0 / std::sqrt(x); });
  const HermitianMatrix inner = conjugate(b.hermitian(), inv_root.matrix());
  return SpdMatrix(conjugate(hermitian_power(inner, 1.0 - v), root.matrix()));
}

SpdMatrix harmonic_mean(const SpdMatrix& a, const SpdMatrix& b, double v) {
  check_dims(a.dim(), b.dim());
  check_weight(v);
  if (v == 1.0) return a;
  if (v == 0.0) return b;
  const SpdMatrix sum(HermitianMatrix(combine(v, inverse(a).matrix(), 1.0 - v, inverse(b).matrix())));
  return inverse(sum);
}

ComplexMatrix x_arithmetic(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v) {
  check_dims(a.dim(), b.dim());
  check_dims(a.dim(), x.dim());
  check_weight(v);
  return combine(v, a.matrix() * x, 1.0 - v, x * b.matrix());
}

ComplexMatrix x_geometric(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v) {
  check_dims(a.dim(), b.dim());
  check_dims(a.dim(), x.dim());
  check_weight(v);
  return matrix_power(a, v).matrix() * x * matrix_power(b, 1.0 - v).matrix();
}

ComplexMatrix x_harmonic(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v) {
  check_dims(a.dim(), b.dim());
  check_dims(a.dim(), x.dim());
  check_weight(v);
  const ComplexMatrix x_inv = general_inverse(x);
  if (v == 1.0) return a.matrix() * x;
  if (v == 0.0) return x * b.matrix();
  const ComplexMatrix sum = combine(v, x_inv * inverse(a).matrix(), 1.0 - v, inverse(b).matrix() * x_inv);
  return general_inverse(sum);
}

ComplexMatrix x_arith_harm_gap(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v) {
  check_dims(a.dim(), b.dim());
  check_dims(a.dim(), x.dim());
  check_weight(v);
  const ComplexMatrix ax = a.matrix() * x;
  const ComplexMatrix xb = x * b.matrix();
  if (v == 0.0 || v == 1.0) return ComplexMatrix(x.dim());
  const ComplexMatrix e = ax - xb;
  return v * (1.0 - v) * (e * general_inverse(combine(1.0 - v, ax, v, xb)) * e);
}

const MeanSet& standard_means() noexcept {
  static constexpr MeanSet kStandard{
      static_cast<double (*)(double, ScalarPair)>(&arithmetic_mean),
      static_cast<double (*)(double, ScalarPair)>(&geometric_mean),
      static_cast<double (*)(double, ScalarPair)>(&harmonic_mean),
      &arith_harm_gap,
      &arith_harm_power_gap,
      static_cast<SpdMatrix (*)(const SpdMatrix&, const SpdMatrix&, double)>(&arithmetic_mean),
      static_cast<SpdMatrix (*)(const SpdMatrix&, const SpdMatrix&, double)>(&geometric_mean),
      static_cast<SpdMatrix (*)(const SpdMatrix&, const SpdMatrix&, double)>(&harmonic_mean),
      &x_arithmetic,
      &x_geometric,
      &x_harmonic,
      &x_arith_harm_gap,
  };
  return kStandard;
}

}  // namespace matmeans
