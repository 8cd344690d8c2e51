#pragma once
// Data-parallel inner loops over interleaved complex<double> arrays.
//
// Every kernel has a portable scalar reference implementation. On x86-64 an
// AVX2+FMA variant is compiled into a separate translation unit and selected
// at runtime when the CPU supports it. Variants agree to rounding, not
// bitwise: the AVX2 path uses fused multiply-add and a different reduction
// order. Set MATMEANS_SIMD=scalar to force the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace matmeans::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelSet {
  Isa isa;
  const char* name;

  // x <- g00*x + g01*y,  y <- g10*x + g11*y  (old values on the right)
  void (*mix_rows)(cplx* x, cplx* y, std::size_t n, cplx g00, cplx g01, cplx g10, cplx g11);
  // y <- y + alpha*x
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // out <- a*x + b*y, real coefficients; out may alias x or y
  void (*combine)(double a, const cplx* x, double b, const cplx* y, cplx* out, std::size_t n);
  // sum |x_i|^2
  double (*sum_abs2)(const cplx* x, std::size_t n);
  // sum conj(x_i)*y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
};

const KernelSet& scalar_kernels() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels() noexcept;

/// The set used by the library. Chosen once from MATMEANS_SIMD (auto|scalar|avx2)
/// and CPU detection; `select_isa` overrides it process-wide.
const KernelSet& active() noexcept;

/// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool select_isa(Isa isa) noexcept;

std::string_view to_string(Isa isa) noexcept;

}  // namespace matmeans::kernels
