#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the policy rollout and the weight protection
// penalty. Every variant performs the same floating-point operations in the
// same order, so results are bit-identical across variants (build with
// -ffp-contract=off).

namespace wpevo::simd {

/// Lane width shared by all variants; padded row counts are multiples of it.
inline constexpr std::size_t kLanes = 4;

constexpr std::size_t padded(std::size_t n) { return (n + kLanes - 1) / kLanes * kLanes; }

/// out[r] = bias[r] + sum_c columns[c * stride + r] * in[c], for r < stride.
/// Accumulation starts from the bias and adds columns in ascending c.
/// stride must be a multiple of kLanes.
using AffineFn = void (*)(const double* columns, std::size_t stride, const double* in,
                          std::size_t n_in, const double* bias, double* out);

/// sum_i coeff[i] * (x[i] - anchor[i])^2 with element i accumulated into
/// lane i % kLanes and lanes combined as (l0 + l1) + (l2 + l3).
using WeightedSquaredDistanceFn = double (*)(const double* x, const double* anchor,
                                             const double* coeff, std::size_t n);

struct KernelTable {
  std::string_view name;
  AffineFn affine;
  WeightedSquaredDistanceFn weighted_squared_distance;
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Chosen once per process: AVX2 when supported, else scalar. The environment
/// variable WPEVO_SIMD=scalar forces the reference kernels.
const KernelTable& active_kernels();

}  // namespace wpevo::simd
