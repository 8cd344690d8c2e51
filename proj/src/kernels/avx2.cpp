// AVX2 + FMA kernels. Built with -mavx2 -mfma; only reached after a runtime
// CPU check. One __m256d holds two interleaved complex values.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace matmeans::kernels::detail {
namespace {

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
// [re, im, re, im] -> [im, re, im, re]
inline __m256d swap_parts(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void mix_rows_avx2(cplx* x, cplx* y, std::size_t n, cplx g00, cplx g01, cplx g10, cplx g11) {
  const __m256d g00r = _mm256_set1_pd(g00.real()), g00i = _mm256_set1_pd(g00.imag());
  const __m256d g01r = _mm256_set1_pd(g01.real()), g01i = _mm256_set1_pd(g01.imag());
  const __m256d g10r = _mm256_set1_pd(g10.real()), g10i = _mm256_set1_pd(g10.imag());
  const __m256d g11r = _mm256_set1_pd(g11.real()), g11i = _mm256_set1_pd(g11.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load(x + i);
    const __m256d yv = load(y + i);
    const __m256d xs = swap_parts(xv);
    const __m256d ys = swap_parts(yv);
    const __m256d p0 = _mm256_fmadd_pd(yv, g01r, _mm256_mul_pd(xv, g00r));
    const __m256d q0 = _mm256_fmadd_pd(ys, g01i, _mm256_mul_pd(xs, g00i));
    const __m256d p1 = _mm256_fmadd_pd(yv, g11r, _mm256_mul_pd(xv, g10r));
    const __m256d q1 = _mm256_fmadd_pd(ys, g11i, _mm256_mul_pd(xs, g10i));
    store(x + i, _mm256_addsub_pd(p0, q0));
    store(y + i, _mm256_addsub_pd(p1, q1));
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = mul(g00, xi) + mul(g01, yi);
    y[i] = mul(g10, xi) + mul(g11, yi);
  }
}

void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load(x + i);
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, ar), _mm256_mul_pd(swap_parts(xv), ai));
    store(y + i, _mm256_add_pd(load(y + i), prod));
  }
  for (; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void combine_avx2(double a, const cplx* x, double b, const cplx* y, cplx* out, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  const __m256d bv = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    store(out + i, _mm256_fmadd_pd(av, load(x + i), _mm256_mul_pd(bv, load(y + i))));
  }
  for (; i < n; ++i) {
    out[i] = {a * x[i].real() + b * y[i].real(), a * x[i].imag() + b * y[i].imag()};
  }
}

double sum_abs2_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load(x + i);
    const __m256d yv = load(y + i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, swap_parts(yv), acc_im);
  }
  alignas(32) double im_parts[4];
  _mm256_store_pd(im_parts, acc_im);
  double re = hsum(acc_re);
  double im = (im_parts[0] - im_parts[1]) + (im_parts[2] - im_parts[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

constexpr KernelSet kAvx2{Isa::Avx2,    "avx2+fma",     &mix_rows_avx2, &caxpy_avx2,
                          &combine_avx2, &sum_abs2_avx2, &dotc_avx2};

}  // namespace

const KernelSet& avx2_table() noexcept { return kAvx2; }

}  // namespace matmeans::kernels::detail
