#include "matmeans/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "matmeans/error.hpp"
#include "matmeans/kernels.hpp"
#include "matmeans/linalg.hpp"

namespace matmeans {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
  if (a_.size() != n * n) throw Error(ErrorKind::DimensionMismatch, "entry count is not n*n");
  if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite matrix entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : n_(rows.size()), a_() {
  if (n_ == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(ErrorKind::DimensionMismatch, "matrix literal is not square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
  if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite matrix entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  if (!m.is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite matrix entry");
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

bool ComplexMatrix::is_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  kernels::active().combine(1.0, a_.data(), 1.0, rhs.a_.data(), a_.data(), a_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  kernels::active().combine(1.0, a_.data(), -1.0, rhs.a_.data(), a_.data(), a_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double s) {
  kernels::active().combine(s, a_.data(), 0.0, a_.data(), a_.data(), a_.size());
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  const auto& k = kernels::active();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx* dst = out.row(i).data();
    for (std::size_t l = 0; l < n; ++l) {
      const cplx s = lhs(i, l);
      if (s != cplx{}) k.caxpy(s, rhs.row(l).data(), dst, n);
    }
  }
  return out;
}

ComplexMatrix combine(double a, const ComplexMatrix& x, double b, const ComplexMatrix& y) {
  require_same_dim(x, y);
  ComplexMatrix out(x.dim());
  kernels::active().combine(a, x.entries().data(), b, y.entries().data(), out.entries().data(),
                            out.entries().size());
  return out;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.dim()) {
  if (!m.is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite matrix entry");
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = z;
      m_(j, i) = std::conj(z);
    }
  }
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) { return HermitianMatrix(s * a.m_); }

SpdMatrix::SpdMatrix(const HermitianMatrix& h)
    : h_(h), eig_(std::make_shared<const EigenDecomposition>(eig_hermitian(h))) {
  const double scale = hs_norm(h.matrix());
  if (!(min_eig() > kSpdThreshold * scale)) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "smallest eigenvalue " + std::to_string(min_eig()) + " at scale " + std::to_string(scale));
  }
}

SpdMatrix SpdMatrix::from_spectrum(const ComplexMatrix& unitary, std::vector<double> eigenvalues) {
  const std::size_t n = unitary.dim();
  if (eigenvalues.size() != n) throw Error(ErrorKind::DimensionMismatch, "spectrum size");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });
  EigenDecomposition eig{ComplexMatrix(n), std::vector<double>(n), 0};
  for (std::size_t c = 0; c < n; ++c) {
    eig.eigenvalues[c] = eigenvalues[order[c]];
    for (std::size_t r = 0; r < n; ++r) eig.unitary(r, c) = unitary(r, order[c]);
  }
  HermitianMatrix h = spectral_apply(eig, [](double x) { return x; });
  const double scale = hs_norm(h.matrix());
  if (!(eig.eigenvalues.back() > kSpdThreshold * scale)) {
    throw Error(ErrorKind::NotPositiveDefinite, "spectrum is not positive");
  }
  return SpdMatrix(std::move(h), std::make_shared<const EigenDecomposition>(std::move(eig)));
}

SpdMatrix SpdMatrix::identity(std::size_t n) { return SpdMatrix(HermitianMatrix::identity(n)); }

SpdMatrix SpdMatrix::diagonal(std::span<const double> d) { return SpdMatrix(HermitianMatrix::diagonal(d)); }

}  // namespace matmeans
