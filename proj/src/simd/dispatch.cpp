#include <cstdlib>
#include <string_view>

#include "wpevo/simd/kernels.hpp"

namespace wpevo::simd {

const KernelTable& active_kernels() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* forced = std::getenv("WPEVO_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* wide = avx2_kernels()) return *wide;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace wpevo::simd
