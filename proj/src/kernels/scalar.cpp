// Reference kernels. Plain loops with the complex products spelled out, so
// the results do not depend on how the standard library multiplies complex.

#include "kernels_internal.hpp"

namespace matmeans::kernels {
namespace {

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void mix_rows_scalar(cplx* x, cplx* y, std::size_t n, cplx g00, cplx g01, cplx g10, cplx g11) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = mul(g00, xi) + mul(g01, yi);
    y[i] = mul(g10, xi) + mul(g11, yi);
  }
}

void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void combine_scalar(double a, const cplx* x, double b, const cplx* y, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {a * x[i].real() + b * y[i].real(), a * x[i].imag() + b * y[i].imag()};
  }
}

double sum_abs2_scalar(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

constexpr KernelSet kScalar{Isa::Scalar,  "scalar",        &mix_rows_scalar, &caxpy_scalar,
                            &combine_scalar, &sum_abs2_scalar, &dotc_scalar};

}  // namespace

const KernelSet& scalar_kernels() noexcept { return kScalar; }

}  // namespace matmeans::kernels
