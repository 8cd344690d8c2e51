#include <doctest.h>

#include <random>
#include <vector>

#include "matmeans/certifiers.hpp"
#include "matmeans/kernels.hpp"
#include "matmeans/linalg.hpp"
#include "matmeans/sampling.hpp"

using namespace matmeans;
namespace k = matmeans::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(g), u(g)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Restores the process-wide selection on scope exit.
struct IsaGuard {
  k::Isa saved = k::active().isa;
  ~IsaGuard() { k::select_isa(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match textbook loops") {
  std::mt19937_64 g(7);
  const auto& s = k::scalar_kernels();
  for (std::size_t n : {0u, 1u, 2u, 5u, 16u}) {
    auto x = random_vec(n, g), y = random_vec(n, g);
    const cplx alpha{0.3, -1.2};

    auto yy = y;
    s.caxpy(alpha, x.data(), yy.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(yy[i] - (y[i] + alpha * x[i])) < 1e-14);

    std::vector<cplx> out(n);
    s.combine(0.25, x.data(), -1.5, y.data(), out.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(out[i] - (0.25 * x[i] - 1.5 * y[i])) < 1e-14);

    double ss = 0.0;
    cplx dc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ss += std::norm(x[i]);
      dc += std::conj(x[i]) * y[i];
    }
    CHECK(s.sum_abs2(x.data(), n) == doctest::Approx(ss).epsilon(1e-14));
    CHECK(std::abs(s.dotc(x.data(), y.data(), n) - dc) < 1e-13);

    auto xm = x, ym = y;
    const cplx g00{0.6, 0.1}, g01{-0.2, 0.7}, g10{0.5, -0.3}, g11{0.9, 0.0};
    s.mix_rows(xm.data(), ym.data(), n, g00, g01, g10, g11);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(xm[i] - (g00 * x[i] + g01 * y[i])) < 1e-14);
      CHECK(std::abs(ym[i] - (g10 * x[i] + g11 * y[i])) < 1e-14);
    }
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const k::KernelSet* v = k::avx2_kernels();
  if (v == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  const auto& s = k::scalar_kernels();
  std::mt19937_64 g(11);
  for (std::size_t n = 0; n <= 37; ++n) {
    CAPTURE(n);
    auto x = random_vec(n, g), y = random_vec(n, g);
    const cplx alpha{-0.7, 0.45};

    auto y1 = y, y2 = y;
    s.caxpy(alpha, x.data(), y1.data(), n);
    v->caxpy(alpha, x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) < 1e-14);

    std::vector<cplx> o1(n), o2(n);
    s.combine(0.3, x.data(), 0.7, y.data(), o1.data(), n);
    v->combine(0.3, x.data(), 0.7, y.data(), o2.data(), n);
    CHECK(max_diff(o1, o2) < 1e-14);

    // aliasing output with an input is allowed
    auto xa = x;
    v->combine(0.3, xa.data(), 0.7, y.data(), xa.data(), n);
    CHECK(max_diff(o1, xa) < 1e-14);

    CHECK(v->sum_abs2(x.data(), n) == doctest::Approx(s.sum_abs2(x.data(), n)).epsilon(1e-13));
    CHECK(std::abs(v->dotc(x.data(), y.data(), n) - s.dotc(x.data(), y.data(), n)) < 1e-12);

    auto x1 = x, x2 = x, z1 = y, z2 = y;
    const cplx g00{0.6, 0.1}, g01{-0.2, 0.7}, g10{0.5, -0.3}, g11{0.9, 0.2};
    s.mix_rows(x1.data(), z1.data(), n, g00, g01, g10, g11);
    v->mix_rows(x2.data(), z2.data(), n, g00, g01, g10, g11);
    CHECK(max_diff(x1, x2) < 1e-14);
    CHECK(max_diff(z1, z2) < 1e-14);
  }
}

TEST_CASE("isa selection") {
  IsaGuard guard;
  CHECK(k::select_isa(k::Isa::Scalar));
  CHECK(k::active().isa == k::Isa::Scalar);
  CHECK(k::to_string(k::Isa::Scalar) == "scalar");
  CHECK(k::to_string(k::Isa::Avx2) == "avx2");
  const bool have = k::avx2_kernels() != nullptr;
  CHECK(k::select_isa(k::Isa::Avx2) == have);
  if (have) CHECK(k::active().isa == k::Isa::Avx2);
}

TEST_CASE("eigensolver and certifiers agree across kernel variants") {
  if (k::avx2_kernels() == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine; full-path equivalence not exercised");
    return;
  }
  IsaGuard guard;
  for (std::uint64_t t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 8;
    const SpdMatrix a = random_spd({n, 1e-3, 1e3, SpectrumDistribution::LogUniform}, SeedPath{5, t, 1});
    const SpdMatrix b = random_spd({n, 1e-2, 1e2, SpectrumDistribution::Uniform}, SeedPath{5, t, 2});

    k::select_isa(k::Isa::Scalar);
    const auto e_s = eigenvalues(a.hermitian() - b.hermitian());
    const auto r_s = check_loewner_difference_ratio(a, b, 0.2, 0.6);
    const auto d_s = check_det_difference(a, b, 0.3, 0.7);

    k::select_isa(k::Isa::Avx2);
    const auto e_v = eigenvalues(a.hermitian() - b.hermitian());
    const auto r_v = check_loewner_difference_ratio(a, b, 0.2, 0.6);
    const auto d_v = check_det_difference(a, b, 0.3, 0.7);

    const double scale = std::max(std::abs(e_s.front()), std::abs(e_s.back()));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(e_s[i] - e_v[i]) <= 1e-11 * scale);
    CHECK(r_s.holds == r_v.holds);
    for (std::size_t i = 0; i < r_s.margins.size(); ++i)
      CHECK(std::abs(r_s.margins[i].value - r_v.margins[i].value) <= r_s.tol_used);
    CHECK(std::abs(d_s.margins[0].value - d_v.margins[0].value) <= d_s.tol_used);
  }
}
