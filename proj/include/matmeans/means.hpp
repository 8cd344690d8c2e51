#pragma once
// Weighted arithmetic, geometric and harmonic means of positive scalars and
// positive definite matrices.
//
// Weight convention: v always weights the first operand. At v = 1 every mean
// returns the first operand, at v = 0 the second, and for diagonal matrices
// each mean reduces entrywise to its scalar counterpart:
//
//   arithmetic  v*a + (1-v)*b          A nabla_v B = vA + (1-v)B
//   geometric   a^v * b^(1-v)          A #_v B     = A^1/2 (A^-1/2 B A^-1/2)^(1-v) A^1/2
//   harmonic    (v/a + (1-v)/b)^-1     A !_v B     = (vA^-1 + (1-v)B^-1)^-1

#include "matmeans/matrix.hpp"

namespace matmeans {

struct ScalarPair {
  double a;
  double b;
};

/// Weights v, tau, exponent lambda and power-mean index t. Each certifier
/// validates only the fields it reads.
struct MeanParams {
  double v = 0.5;
  double tau = 0.5;
  double lambda = 1.0;
  double t = 1.0;
};

/// Relative separation below which a pair counts as a == b.
inline constexpr double kDistinctTol = 1e-12;

bool nearly_equal(ScalarPair p, double rel_tol) noexcept;

// Scalar means. Throw Error{InvalidArgument} for a, b <= 0 or v outside [0, 1].
double power_mean(double t, double v, ScalarPair p);
double arithmetic_mean(double v, ScalarPair p);
double geometric_mean(double v, ScalarPair p);
double harmonic_mean(double v, ScalarPair p);

/// A_v - H_v evaluated as v(1-v)(a-b)^2 / (v*b + (1-v)*a), free of cancellation.
double arith_harm_gap(double v, ScalarPair p);

/// A_v^lambda - H_v^lambda, built on arith_harm_gap.
double arith_harm_power_gap(double v, double lambda, ScalarPair p);

/// (A_v^l - H_v^l) / (A_tau^l - H_tau^l). Requires 0 < v, tau < 1 and
/// lambda >= 1; throws Error{DegenerateInput} when |a-b| <= kDistinctTol*max(a,b).
double difference_ratio(double v, double tau, double lambda, ScalarPair p);

// Matrix means. Throw Error{DimensionMismatch} on size mismatch.
SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b, double v);
SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b, double v);
SpdMatrix harmonic_mean(const SpdMatrix& a, const SpdMatrix& b, double v);

/// v*A*X + (1-v)*X*B
ComplexMatrix x_arithmetic(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v);
/// A^v * X * B^(1-v)
ComplexMatrix x_geometric(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v);
/// [v*X^-1*A^-1 + (1-v)*B^-1*X^-1]^-1. Throws Error{Singular} if X is singular.
ComplexMatrix x_harmonic(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v);
/// x_arithmetic - x_harmonic evaluated as v(1-v) E C^-1 E with E = AX - XB and
/// C = (1-v)AX + vXB, free of cancellation.
ComplexMatrix x_arith_harm_gap(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v);

/// The means as a swappable table. Certifiers evaluate every mean through one
/// of these, which lets tests inject a deliberately wrong mean.
struct MeanSet {
  double (*arith)(double, ScalarPair);
  double (*geo)(double, ScalarPair);
  double (*harm)(double, ScalarPair);
  double (*gap)(double, ScalarPair);
  double (*power_gap)(double, double, ScalarPair);
  SpdMatrix (*mat_arith)(const SpdMatrix&, const SpdMatrix&, double);
  SpdMatrix (*mat_geo)(const SpdMatrix&, const SpdMatrix&, double);
  SpdMatrix (*mat_harm)(const SpdMatrix&, const SpdMatrix&, double);
  ComplexMatrix (*x_arith)(const SpdMatrix&, const SpdMatrix&, const ComplexMatrix&, double);
  ComplexMatrix (*x_geo)(const SpdMatrix&, const SpdMatrix&, const ComplexMatrix&, double);
  ComplexMatrix (*x_harm)(const SpdMatrix&, const SpdMatrix&, const ComplexMatrix&, double);
  ComplexMatrix (*x_gap)(const SpdMatrix&, const SpdMatrix&, const ComplexMatrix&, double);
};

const MeanSet& standard_means() noexcept;

}  // namespace matmeans
