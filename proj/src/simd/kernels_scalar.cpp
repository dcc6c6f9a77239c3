#include "hullopt/simd/kernels.hpp"

#include <cmath>

namespace hullopt::simd {

namespace {

void scaled_sqdist(const double* cols, std::size_t stride, std::size_t dim, std::size_t n,
                   const double* point, const double* inv_ls, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double* col = cols + d * stride;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = (point[d] - col[j]) * inv_ls[d];
      out[j] += u * u;
    }
  }
}

void matern52(double* values, std::size_t n, double signal_variance) {
  const double sqrt5 = std::sqrt(5.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double r2 = values[j];
    const double s = sqrt5 * std::sqrt(r2);
    values[j] = signal_variance * (1.0 + s + (5.0 / 3.0) * r2) * std::exp(-s);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &scaled_sqdist, &matern52, &dot};
  return table;
}

}  // namespace hullopt::simd
