#include <array>

#include "wpevo/simd/kernels.hpp"

namespace wpevo::simd {
namespace {

void affine_scalar(const double* columns, std::size_t stride, const double* in,
                   std::size_t n_in, const double* bias, double* out) {
  for (std::size_t r = 0; r < stride; ++r) out[r] = bias[r];
  for (std::size_t c = 0; c < n_in; ++c) {
    const double value = in[c];
    const double* column = columns + c * stride;
    for (std::size_t r = 0; r < stride; ++r) out[r] = out[r] + column[r] * value;
  }
}

double weighted_squared_distance_scalar(const double* x, const double* anchor,
                                        const double* coeff, std::size_t n) {
  std::array<double, kLanes> lanes{};
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - anchor[i];
    lanes[i % kLanes] = lanes[i % kLanes] + coeff[i] * (d * d);
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &affine_scalar, &weighted_squared_distance_scalar};
  return table;
}

}  // namespace wpevo::simd
