#pragma once

#include "matmeans/kernels.hpp"

namespace matmeans::kernels::detail {

#if defined(MATMEANS_HAVE_AVX2)
const KernelSet& avx2_table() noexcept;
#endif

}  // namespace matmeans::kernels::detail
