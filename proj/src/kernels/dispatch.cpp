#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace matmeans::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(MATMEANS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet* initial_selection() noexcept {
  const KernelSet* simd = avx2_kernels();
  const char* env = std::getenv("MATMEANS_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return &scalar_kernels();
  return simd ? simd : &scalar_kernels();
}

std::atomic<const KernelSet*>& current() noexcept {
  static std::atomic<const KernelSet*> selected{initial_selection()};
  return selected;
}

}  // namespace

const KernelSet* avx2_kernels() noexcept {
#if defined(MATMEANS_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select_isa(Isa isa) noexcept {
  const KernelSet* set = isa == Isa::Scalar ? &scalar_kernels() : avx2_kernels();
  if (set == nullptr) return false;
  current().store(set, std::memory_order_release);
  return true;
}

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace matmeans::kernels
