#include <doctest.h>

#include "matmeans/error.hpp"
#include "matmeans/linalg.hpp"
#include "matmeans/sampling.hpp"
#include "oracles.hpp"

using namespace matmeans;

namespace {

bool close(const ComplexMatrix& a, const ComplexMatrix& b, double tol) { return oracle::distance(a, b) <= tol; }

ComplexMatrix reconstruct(const EigenDecomposition& e) {
  const std::size_t n = e.unitary.dim();
  ComplexMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = e.eigenvalues[i];
  return oracle::multiply(oracle::multiply(e.unitary, d), oracle::adjoint(e.unitary));
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected matmeans::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("matrix containers") {
  CHECK(kind_of([] { ComplexMatrix m(0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ComplexMatrix m(2, std::vector<cplx>(3)); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { ComplexMatrix m{{1.0, std::nan("")}, {0.0, 1.0}}; }) == ErrorKind::InvalidArgument);

  const ComplexMatrix m{{1.0, cplx(2, 1)}, {cplx(0, 3), 4.0}};
  const HermitianMatrix h(m);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h(0, 1) == cplx(1.0, -1.0));
  CHECK(h(1, 1).imag() == 0.0);
  CHECK(close(m * ComplexMatrix::identity(2), m, 0.0));
  CHECK(close(m * m, oracle::multiply(m, m), 1e-14));
}

TEST_CASE("eigendecomposition examples") {
  SUBCASE("identity") {
    const auto e = eig_hermitian(HermitianMatrix::identity(3));
    CHECK(e.eigenvalues == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(oracle::unitarity_defect(e.unitary) <= 1e-15);
  }
  SUBCASE("diagonal gives sorted values and a permutation") {
    const std::vector<double> d{2, 5, 3};
    const auto e = eig_hermitian(HermitianMatrix::diagonal(d));
    CHECK(e.eigenvalues == std::vector<double>{5.0, 3.0, 2.0});
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        const double mag = std::abs(e.unitary(r, c));
        CHECK((mag == 0.0 || mag == 1.0));
      }
  }
  SUBCASE("2x2 closed form") {
    const auto e = eig_hermitian(HermitianMatrix(ComplexMatrix{{2.0, 1.0}, {1.0, 2.0}}));
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("complex 2x2 against the characteristic polynomial") {
    const HermitianMatrix h(ComplexMatrix{{1.5, cplx(0.3, -2.0)}, {cplx(0.3, 2.0), -4.0}});
    const auto e = eig_hermitian(h);
    const auto ref = oracle::eig2(h.matrix());
    CHECK(e.eigenvalues[0] == doctest::Approx(ref[0]).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(ref[1]).epsilon(1e-14));
    CHECK(close(reconstruct(e), h.matrix(), 1e-14));
  }
}

TEST_CASE("eigendecomposition of seeded matrices reconstructs") {
  for (std::uint64_t t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 8;
    Rng rng(SeedPath{99, t, 0});
    ComplexMatrix m(n);
    for (auto& z : m.entries()) z = rng.complex_normal();
    const HermitianMatrix h(m);
    const auto e = eig_hermitian(h);
    const double scale = std::max(1.0, oracle::frobenius(h.matrix()));
    CHECK(oracle::distance(reconstruct(e), h.matrix()) <= 1e-12 * scale);
    CHECK(oracle::unitarity_defect(e.unitary) <= 1e-13 * n);
    CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
  }
}

TEST_CASE("repeated eigenvalues") {
  const SpdMatrix p = SpdMatrix::from_spectrum(random_unitary(5, SeedPath{1, 2, 3}), {2, 2, 2, 7, 7});
  const auto e = eig_hermitian(p.hermitian());
  CHECK(e.eigenvalues[0] == doctest::Approx(7.0).epsilon(1e-13));
  CHECK(e.eigenvalues[4] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(close(reconstruct(e), p.matrix(), 1e-12));
}

TEST_CASE("sweep cap surfaces as ConvergenceFailure") {
  const HermitianMatrix h(ComplexMatrix{{1.0, 0.5}, {0.5, 2.0}});
  CHECK(kind_of([&] { eig_hermitian(h, JacobiOptions{1e-13, 0}); }) == ErrorKind::ConvergenceFailure);
}

TEST_CASE("positive definite certificate") {
  CHECK(kind_of([] { SpdMatrix p(ComplexMatrix{{1.0, 2.0}, {2.0, 1.0}}); }) == ErrorKind::NotPositiveDefinite);
  CHECK(kind_of([] { SpdMatrix p(ComplexMatrix{{0.0}}); }) == ErrorKind::NotPositiveDefinite);
  const SpdMatrix p(ComplexMatrix{{2.0, 1.0}, {1.0, 2.0}});
  CHECK(p.max_eig() == doctest::Approx(3.0));
  CHECK(p.condition_number() == doctest::Approx(3.0));
}

TEST_CASE("matrix powers") {
  CHECK(close(matrix_power(SpdMatrix::identity(3), 0.37).matrix(), ComplexMatrix::identity(3), 1e-15));
  const std::vector<double> d49{4, 9}, d23{2, 3};
  CHECK(close(matrix_power(SpdMatrix::diagonal(d49), 0.5).matrix(), oracle::diag(d23), 1e-14));
  const std::vector<double> two{2}, half{0.5};
  CHECK(close(matrix_power(SpdMatrix::diagonal(two), -1.0).matrix(), oracle::diag(half), 1e-15));

  const SpdMatrix p = random_spd({4, 0.1, 10.0, SpectrumDistribution::LogUniform}, SeedPath{3, 0, 0});
  const SpdMatrix root = matrix_power(p, 0.5);
  CHECK(close(oracle::multiply(root.matrix(), root.matrix()), p.matrix(), 1e-12 * oracle::frobenius(p.matrix())));
  CHECK(close(matrix_power(p, 0.0).matrix(), ComplexMatrix::identity(4), 0.0));
  CHECK(close(matrix_power(p, 1.0).matrix(), p.matrix(), 0.0));
}

TEST_CASE("inverses") {
  CHECK(close(inverse(SpdMatrix::identity(2)).matrix(), ComplexMatrix::identity(2), 1e-15));
  const std::vector<double> d{2, 4}, r{0.5, 0.25};
  CHECK(close(inverse(SpdMatrix::diagonal(d)).matrix(), oracle::diag(r), 1e-15));
  const SpdMatrix p(ComplexMatrix{{2.0, 1.0}, {1.0, 2.0}});
  const ComplexMatrix expect{{2.0 / 3, -1.0 / 3}, {-1.0 / 3, 2.0 / 3}};
  CHECK(close(inverse(p).matrix(), expect, 1e-14));

  const std::vector<double> bad{1.0, 1e-9};
  CHECK(kind_of([&] { inverse(SpdMatrix::diagonal(bad), 1e6); }) == ErrorKind::IllConditioned);

  CHECK(close(general_inverse(ComplexMatrix::identity(3)), ComplexMatrix::identity(3), 0.0));
  const ComplexMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
  CHECK(close(general_inverse(swap), swap, 0.0));
  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(close(general_inverse(m), ComplexMatrix{{-2.0, 1.0}, {1.5, -0.5}}, 1e-14));
  CHECK(kind_of([] { general_inverse(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}}); }) == ErrorKind::Singular);

  const ComplexMatrix x = random_invertible(6, 1e4, SeedPath{4, 0, 0});
  CHECK(close(oracle::multiply(x, general_inverse(x)), ComplexMatrix::identity(6), 1e-10));
}

TEST_CASE("Loewner order") {
  const auto i2 = HermitianMatrix::identity(2);
  const std::vector<double> two{2, 2};
  auto v = loewner_leq(i2, HermitianMatrix::diagonal(two), 0.0);
  CHECK(v.holds);
  CHECK(v.margin == doctest::Approx(1.0));

  v = loewner_leq(i2, i2, 0.0);
  CHECK(v.holds);
  CHECK(v.margin == 0.0);

  const std::vector<double> a{1, 3}, b{2, 2};
  v = loewner_leq(HermitianMatrix::diagonal(a), HermitianMatrix::diagonal(b), 0.5);
  CHECK_FALSE(v.holds);
  CHECK(v.margin == doctest::Approx(-1.0));

  CHECK(kind_of([&] { loewner_leq(i2, HermitianMatrix::identity(3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("norms, singular values and determinants") {
  CHECK(hs_norm(ComplexMatrix(3)) == 0.0);
  CHECK(hs_norm(ComplexMatrix::identity(5)) == doctest::Approx(std::sqrt(5.0)));
  CHECK(hs_norm(ComplexMatrix{{3.0, 4.0}, {0.0, 0.0}}) == doctest::Approx(5.0));

  auto s = singular_values(ComplexMatrix::identity(2));
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(1.0));
  s = singular_values(ComplexMatrix{{-3.0, 0.0}, {0.0, 2.0}});
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[1] == doctest::Approx(2.0));
  s = singular_values(ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}});
  CHECK(s[0] == doctest::Approx(2.0));
  CHECK(s[1] == doctest::Approx(0.0).epsilon(1e-7));

  const ComplexMatrix x = random_invertible(5, 100.0, SeedPath{8, 0, 0});
  double sum = 0.0;
  for (double v : singular_values(x)) sum += v * v;
  CHECK(sum == doctest::Approx(hs_norm_squared(x)).epsilon(1e-12));

  CHECK(determinant_spd(SpdMatrix::identity(3)) == doctest::Approx(1.0));
  const std::vector<double> d{2, 3};
  CHECK(determinant_spd(SpdMatrix::diagonal(d)) == doctest::Approx(6.0));
  CHECK(determinant_spd(SpdMatrix(ComplexMatrix{{2.0, 1.0}, {1.0, 2.0}})) == doctest::Approx(3.0));
  CHECK(log_determinant_spd(SpdMatrix::diagonal(d)) == doctest::Approx(std::log(6.0)));
}

TEST_CASE("congruence") {
  const HermitianMatrix m(ComplexMatrix{{1.0, cplx(0, 1)}, {cplx(0, -1), 3.0}});
  CHECK(close(conjugate(m, ComplexMatrix::identity(2)).matrix(), m.matrix(), 0.0));
  const ComplexMatrix c{{1.0, 2.0}, {cplx(0, 1), -1.0}};
  CHECK(close(conjugate(HermitianMatrix::identity(2), c).matrix(), oracle::multiply(c, oracle::adjoint(c)), 1e-14));
  const std::vector<double> d12{1, 2}, d21{2, 1}, d42{4, 2};
  CHECK(close(conjugate(HermitianMatrix::diagonal(d12), oracle::diag(d21)).matrix(), oracle::diag(d42), 0.0));
  CHECK(hs_distance(oracle::diag(d12), oracle::diag(d21)) == doctest::Approx(std::sqrt(2.0)));
}
