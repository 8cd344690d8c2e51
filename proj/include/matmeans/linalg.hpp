#pragma once
// Hermitian eigensolver and the matrix functions, norms, determinants and
// order comparisons built on it.

#include <functional>
#include <vector>

#include "matmeans/matrix.hpp"

namespace matmeans {

/// Cyclic-by-row complex Jacobi. Iterates until the off-diagonal Frobenius
/// mass is at most `off_tol * ||A||_F`.
struct JacobiOptions {
  double off_tol = 1e-13;
  int max_sweeps = 50;
};

/// Documented accuracy of eig_hermitian, checked by the test suite:
///   ||U U* - I||_F <= kUnitarityTol * n
///   ||A - U diag U*||_F <= kReconstructionTol * max(1, ||A||_F)
inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kReconstructionTol = 1e-10;

/// Cap on the 2-norm condition number accepted by inverse().
inline constexpr double kDefaultConditionCap = 1e14;

/// Relative pivot threshold used by general_inverse().
inline constexpr double kPivotThreshold = 1e-14;

/// Throws Error{ConvergenceFailure} if max_sweeps is exhausted.
EigenDecomposition eig_hermitian(const HermitianMatrix& h, const JacobiOptions& opts = {});

std::vector<double> eigenvalues(const HermitianMatrix& h);
double min_eigenvalue(const HermitianMatrix& h);

/// U diag(f(lambda_i)) U*.
HermitianMatrix spectral_apply(const EigenDecomposition& eig, const std::function<double(double)>& f);

/// P^r. r == 0 gives I exactly and r == 1 gives P.
SpdMatrix matrix_power(const SpdMatrix& p, double r);

/// Residual ||P P^-1 - I||_F stays below 10 * n * cond(P) * DBL_EPSILON.
/// Throws Error{IllConditioned} when cond(P) > cond_cap.
SpdMatrix inverse(const SpdMatrix& p, double cond_cap = kDefaultConditionCap);

/// Gauss-Jordan with partial pivoting. Throws Error{Singular} when a pivot
/// falls below kPivotThreshold times the largest entry of its row in the
/// original matrix.
ComplexMatrix general_inverse(const ComplexMatrix& m);

struct OrderVerdict {
  bool holds = false;
  double margin = 0.0;  // smallest eigenvalue of (B - A)
  double tol_used = 0.0;
};

/// 1e-9 * (||A||_F + ||B||_F + 1)
double default_loewner_tol(const HermitianMatrix& a, const HermitianMatrix& b);

/// A <= B in the Loewner order, up to `tol`.
OrderVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
OrderVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b);

double hs_norm(const ComplexMatrix& m);
double hs_norm_squared(const ComplexMatrix& m);

/// Square roots of the eigenvalues of M*M, non-increasing.
std::vector<double> singular_values(const ComplexMatrix& m);

double determinant_spd(const SpdMatrix& p);
double log_determinant_spd(const SpdMatrix& p);

/// C M C*, re-symmetrized.
HermitianMatrix conjugate(const HermitianMatrix& m, const ComplexMatrix& c);

/// ||X - Y||_F
double hs_distance(const ComplexMatrix& x, const ComplexMatrix& y);

}  // namespace matmeans
