#include <cstdlib>
#include <string_view>

#include "dncode/kernels.hpp"
#include "kernels_internal.hpp"

namespace dncode::kernels {

const KernelTable* avx2() {
#if defined(DNCODE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("DNCODE_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar();
    if (const KernelTable* wide = avx2()) return *wide;
    return scalar();
  }();
  return chosen;
}

}  // namespace dncode::kernels
