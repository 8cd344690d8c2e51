#include "matmeans/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

#include "matmeans/error.hpp"
#include "matmeans/kernels.hpp"

namespace matmeans {

namespace {

double off_diagonal_norm(const ComplexMatrix& a, const kernels::KernelSet& k) {
  const std::size_t n = a.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* r = a.row(i).data();
    s += k.sum_abs2(r, i) + k.sum_abs2(r + i + 1, n - i - 1);
  }
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q), p < q. `w` holds the
// adjoint of the accumulated eigenvector matrix, so both updates are row
// operations on contiguous storage.
void rotate(ComplexMatrix& a, ComplexMatrix& w, std::size_t p, std::size_t q, const kernels::KernelSet& k) {
  const cplx beta = a(p, q);
  const double mag = std::abs(beta);
  if (mag == 0.0) return;
  const cplx phase = beta / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // G = J*, J = diag(1, conj(phase)) * [[c, s], [-s, c]]
  const cplx g00 = c;
  const cplx g01 = -s * phase;
  const cplx g10 = s;
  const cplx g11 = c * phase;

  const std::size_t n = a.dim();
  k.mix_rows(a.row(p).data(), a.row(q).data(), n, g00, g01, g10, g11);
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    a(r, p) = std::conj(a(p, r));
    a(r, q) = std::conj(a(q, r));
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  k.mix_rows(w.row(p).data(), w.row(q).data(), n, g00, g01, g10, g11);
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& h, const JacobiOptions& opts) {
  const auto& k = kernels::active();
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix w = ComplexMatrix::identity(n);

  const double scale = std::sqrt(k.sum_abs2(a.entries().data(), n * n));
  const double target = opts.off_tol * scale;

  int sweeps = 0;
  while (off_diagonal_norm(a, k) > target) {
    if (sweeps == opts.max_sweeps) {
      throw Error(ErrorKind::ConvergenceFailure,
                  "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, w, p, q, k);
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  EigenDecomposition out{ComplexMatrix(n), std::vector<double>(n), sweeps};
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.eigenvalues[c] = a(src, src).real();
    // column c of U is the conjugate of row src of w
    for (std::size_t r = 0; r < n; ++r) out.unitary(r, c) = std::conj(w(src, r));
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& h) { return eig_hermitian(h).eigenvalues; }

double min_eigenvalue(const HermitianMatrix& h) { return eig_hermitian(h).eigenvalues.back(); }

HermitianMatrix spectral_apply(const EigenDecomposition& eig, const std::function<double(double)>& f) {
  const std::size_t n = eig.unitary.dim();
  const auto& k = kernels::active();
  // U * (diag(f) U*), accumulated one row of the result at a time.
  ComplexMatrix scaled(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double fl = f(eig.eigenvalues[l]);
    for (std::size_t c = 0; c < n; ++c) scaled(l, c) = fl * std::conj(eig.unitary(c, l));
  }
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx* dst = out.row(i).data();
    for (std::size_t l = 0; l < n; ++l) k.caxpy(eig.unitary(i, l), scaled.row(l).data(), dst, n);
  }
  return HermitianMatrix(out);
}

SpdMatrix matrix_power(const SpdMatrix& p, double r) {
  if (!std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "power must be finite");
  if (r == 0.0) return SpdMatrix::identity(p.dim());
  if (r == 1.0) return p;
  const auto& eig = p.eig();
  std::vector<double> powered(eig.eigenvalues.size());
  std::transform(eig.eigenvalues.begin(), eig.eigenvalues.end(), powered.begin(),
                 [r](double x) { return std::pow(x, r); });
  return SpdMatrix::from_spectrum(eig.unitary, std::move(powered));
}

SpdMatrix inverse(const SpdMatrix& p, double cond_cap) {
  if (p.condition_number() > cond_cap) {
    throw Error(ErrorKind::IllConditioned, "condition number " + std::to_string(p.condition_number()) +
                                               " exceeds cap " + std::to_string(cond_cap));
  }
  return matrix_power(p, -1.0);
}

ComplexMatrix general_inverse(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  const auto& k = kernels::active();
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);

  std::vector<double> row_scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) row_scale[i] = std::max(row_scale[i], std::abs(m(i, j)));

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = -1.0;
    for (std::size_t r = col; r < n; ++r) {
      const double v = row_scale[r] > 0.0 ? std::abs(a(r, col)) / row_scale[r] : 0.0;
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > kPivotThreshold)) {
      throw Error(ErrorKind::Singular, "pivot below threshold in column " + std::to_string(col));
    }
    if (piv != col) {
      std::swap_ranges(a.row(col).begin(), a.row(col).end(), a.row(piv).begin());
      std::swap_ranges(inv.row(col).begin(), inv.row(col).end(), inv.row(piv).begin());
      std::swap(row_scale[col], row_scale[piv]);
    }
    const cplx d = 1.0 / a(col, col);
    for (auto& z : a.row(col)) z *= d;
    for (auto& z : inv.row(col)) z *= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = -a(r, col);
      if (f == cplx{}) continue;
      k.caxpy(f, a.row(col).data(), a.row(r).data(), n);
      k.caxpy(f, inv.row(col).data(), inv.row(r).data(), n);
    }
  }
  return inv;
}

double default_loewner_tol(const HermitianMatrix& a, const HermitianMatrix& b) {
  return 1e-9 * (hs_norm(a.matrix()) + hs_norm(b.matrix()) + 1.0);
}

OrderVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
  const double margin = min_eigenvalue(b - a);
  return {margin >= -tol, margin, tol};
}

OrderVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b) {
  return loewner_leq(a, b, default_loewner_tol(a, b));
}

double hs_norm_squared(const ComplexMatrix& m) {
  return kernels::active().sum_abs2(m.entries().data(), m.entries().size());
}

double hs_norm(const ComplexMatrix& m) { return std::sqrt(hs_norm_squared(m)); }

std::vector<double> singular_values(const ComplexMatrix& m) {
  auto ev = eigenvalues(HermitianMatrix(m.adjoint() * m));
  for (double& x : ev) x = std::sqrt(std::max(x, 0.0));
  return ev;
}

double log_determinant_spd(const SpdMatrix& p) {
  double s = 0.0;
  for (double x : p.eig().eigenvalues) s += std::log(x);
  return s;
}

double determinant_spd(const SpdMatrix& p) {
  double d = 1.0;
  for (double x : p.eig().eigenvalues) d *= x;
  return d;
}

HermitianMatrix conjugate(const HermitianMatrix& m, const ComplexMatrix& c) {
  if (m.dim() != c.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(m.dim()) + " vs " + std::to_string(c.dim()));
  }
  return HermitianMatrix(c * m.matrix() * c.adjoint());
}

double hs_distance(const ComplexMatrix& x, const ComplexMatrix& y) { return hs_norm(x - y); }

}  // namespace matmeans
