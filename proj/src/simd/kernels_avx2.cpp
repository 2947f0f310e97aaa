#include "wpevo/simd/kernels.hpp"

#if defined(WPEVO_HAVE_AVX2)
#include <immintrin.h>

namespace wpevo::simd {
namespace {

void affine_avx2(const double* columns, std::size_t stride, const double* in, std::size_t n_in,
                 const double* bias, double* out) {
  for (std::size_t r = 0; r < stride; r += kLanes) {
    __m256d acc = _mm256_loadu_pd(bias + r);
    for (std::size_t c = 0; c < n_in; ++c) {
      const __m256d column = _mm256_loadu_pd(columns + c * stride + r);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(column, _mm256_set1_pd(in[c])));
    }
    _mm256_storeu_pd(out + r, acc);
  }
}

double weighted_squared_distance_avx2(const double* x, const double* anchor, const double* coeff,
                                      std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(anchor + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(coeff + i), _mm256_mul_pd(d, d)));
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  for (std::size_t lane = 0; i < n; ++i, ++lane) {
    const double d = x[i] - anchor[i];
    lanes[lane] = lanes[lane] + coeff[i] * (d * d);
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{"avx2", &affine_avx2, &weighted_squared_distance_avx2};
  return supported ? &table : nullptr;
}

}  // namespace wpevo::simd

#else

namespace wpevo::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace wpevo::simd

#endif
