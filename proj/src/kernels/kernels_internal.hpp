#pragma once

#include "dncode/kernels.hpp"

namespace dncode::kernels {

#if defined(DNCODE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace dncode::kernels
