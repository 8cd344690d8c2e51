#pragma once
// Dense complex matrices and the Hermitian / positive definite wrappers the
// means are defined on. All types are immutable values once wrapped; the raw
// ComplexMatrix is a plain mutable container.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace matmeans {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  /// n x n zero matrix. n must be >= 1.
  explicit ComplexMatrix(std::size_t n);
  /// Row-major entries; throws on size mismatch or non-finite input.
  ComplexMatrix(std::size_t n, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t dim() const noexcept { return n_; }

  cplx operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  cplx& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }

  std::span<const cplx> row(std::size_t i) const noexcept { return {a_.data() + i * n_, n_}; }
  std::span<cplx> row(std::size_t i) noexcept { return {a_.data() + i * n_, n_}; }
  std::span<const cplx> entries() const noexcept { return a_; }
  std::span<cplx> entries() noexcept { return a_; }

  ComplexMatrix adjoint() const;
  bool is_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(double s);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t n_;
  std::vector<cplx> a_;
};

/// a*x + b*y with real weights.
ComplexMatrix combine(double a, const ComplexMatrix& x, double b, const ComplexMatrix& y);

/// Conjugate-symmetric matrix. Construction replaces the input M by (M + M*)/2,
/// so entry (i,j) is the exact conjugate of entry (j,i) and the diagonal is real.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(std::size_t n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
  static HermitianMatrix diagonal(std::span<const double> d) {
    return HermitianMatrix(ComplexMatrix::diagonal(d));
  }

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// A = U diag(eigenvalues) U*, eigenvalues sorted non-increasing.
struct EigenDecomposition {
  ComplexMatrix unitary;
  std::vector<double> eigenvalues;
  int sweeps = 0;
};

/// Hermitian matrix with smallest eigenvalue above kSpdThreshold * ||A||_F.
/// The eigendecomposition computed during certification is kept and shared
/// between copies.
class SpdMatrix {
 public:
  static constexpr double kSpdThreshold = 1e-12;

  /// Throws Error{NotPositiveDefinite} when the certificate fails.
  explicit SpdMatrix(const HermitianMatrix& h);
  explicit SpdMatrix(const ComplexMatrix& m) : SpdMatrix(HermitianMatrix(m)) {}

  /// Builds U diag(eigenvalues) U* directly; eigenvalues must be positive.
  static SpdMatrix from_spectrum(const ComplexMatrix& unitary, std::vector<double> eigenvalues);

  static SpdMatrix identity(std::size_t n);
  static SpdMatrix diagonal(std::span<const double> d);

  std::size_t dim() const noexcept { return h_.dim(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
  cplx operator()(std::size_t i, std::size_t j) const noexcept { return h_(i, j); }

  const EigenDecomposition& eig() const noexcept { return *eig_; }
  double min_eig() const noexcept { return eig_->eigenvalues.back(); }
  double max_eig() const noexcept { return eig_->eigenvalues.front(); }
  double condition_number() const noexcept { return max_eig() / min_eig(); }

  operator const HermitianMatrix&() const noexcept { return h_; }

 private:
  SpdMatrix(HermitianMatrix h, std::shared_ptr<const EigenDecomposition> eig)
      : h_(std::move(h)), eig_(std::move(eig)) {}

  HermitianMatrix h_;
  std::shared_ptr<const EigenDecomposition> eig_;
};

}  // namespace matmeans
