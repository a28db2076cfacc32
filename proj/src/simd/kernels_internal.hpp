#pragma once

#include "driftreg/simd/kernels.hpp"

namespace driftreg::simd::detail {

const KernelTable& scalar_table() noexcept;
#if defined(DRIFTREG_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(DRIFTREG_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace driftreg::simd::detail
