// Compiled with -mavx2 -mfma; only reached through avx2_kernels() after a
// runtime CPU check.

#include "hullopt/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace hullopt::simd {

namespace {

// exp(x) for x <= 0. Round-to-nearest reduction x = n ln2 + r with a split
// ln2, |r| <= ln2 / 2, degree-13 Taylor polynomial, then scale by 2^n built
// directly in the exponent field. Inputs below -708 flush to zero.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d lower = _mm256_set1_pd(-708.0);
  const __m256d underflow = _mm256_cmp_pd(x, lower, _CMP_LT_OQ);
  x = _mm256_max_pd(x, lower);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634074)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);

  static constexpr double kInvFact[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
      1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
      1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        1.0 / 2.0,
      1.0,                1.0};
  __m256d p = _mm256_set1_pd(kInvFact[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[i]));

  // 1.5 * 2^52 + 1023 parks (n + 1023) in the low mantissa bits.
  const __m256d biased = _mm256_add_pd(n, _mm256_set1_pd(6755399441055744.0 + 1023.0));
  const __m256i bits = _mm256_slli_epi64(_mm256_castpd_si256(biased), 52);
  const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(underflow, result);
}

void scaled_sqdist(const double* cols, std::size_t stride, std::size_t dim, std::size_t n,
                   const double* point, const double* inv_ls, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < dim; ++d) {
      const __m256d c = _mm256_loadu_pd(cols + d * stride + j);
      const __m256d u = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(point[d]), c),
                                      _mm256_set1_pd(inv_ls[d]));
      acc = _mm256_fmadd_pd(u, u, acc);
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double u = (point[d] - cols[d * stride + j]) * inv_ls[d];
      acc = std::fma(u, u, acc);
    }
    out[j] = acc;
  }
}

void matern52(double* values, std::size_t n, double signal_variance) {
  const __m256d sqrt5 = _mm256_set1_pd(2.23606797749978969641);
  const __m256d five_thirds = _mm256_set1_pd(5.0 / 3.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d s2 = _mm256_set1_pd(signal_variance);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d r2 = _mm256_loadu_pd(values + j);
    const __m256d s = _mm256_mul_pd(sqrt5, _mm256_sqrt_pd(r2));
    const __m256d poly = _mm256_fmadd_pd(five_thirds, r2, _mm256_add_pd(one, s));
    const __m256d e = exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), s));
    _mm256_storeu_pd(values + j, _mm256_mul_pd(s2, _mm256_mul_pd(poly, e)));
  }
  for (; j < n; ++j) {
    const double r2 = values[j];
    const double s = 2.23606797749978969641 * std::sqrt(r2);
    values[j] = signal_variance * (1.0 + s + (5.0 / 3.0) * r2) * std::exp(-s);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) sum = std::fma(a[i], b[i], sum);
  return sum;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", &scaled_sqdist, &matern52, &dot};
  return table;
}

}  // namespace hullopt::simd
