#pragma once

// Data-parallel inner loops of the GP surrogate. Every routine has a scalar
// reference implementation; AVX2+FMA variants are compiled separately and
// picked at runtime when the CPU supports them. The equivalence suite holds
// the variants to the reference within a few ulps.

#include <cstddef>
#include <string_view>

namespace hullopt::simd {

struct KernelTable {
  std::string_view name;

  /// out[j] = sum_d ((point[d] - cols[d * stride + j]) * inv_lengthscale[d])^2, j < n.
  /// `cols` holds the reference points column-major (one contiguous run per dimension).
  void (*scaled_sqdist)(const double* cols, std::size_t stride, std::size_t dim, std::size_t n,
                        const double* point, const double* inv_lengthscale, double* out);

  /// In place: v <- s2 * (1 + sqrt5 rho + 5 rho^2 / 3) * exp(-sqrt5 rho), rho = sqrt(v).
  void (*matern52)(double* values, std::size_t n, double signal_variance);

  double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// The table used by the library: AVX2 when available, unless the
/// HULLOPT_SIMD environment variable is set to "scalar". Fixed for the
/// lifetime of the process.
const KernelTable& active_kernels();

}  // namespace hullopt::simd
