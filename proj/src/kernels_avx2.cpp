#include "panoslam/kernels/kernels.hpp"

#if defined(PANOSLAM_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <cmath>

namespace panoslam::kernels::detail {

void add_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void weighted_plane_sum_avx2(const double* const* planes, const double* coeffs,
                             std::size_t channels, double bias, double* out,
                             std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_set1_pd(bias);
    for (std::size_t c = 0; c < channels; ++c) {
      const __m256d w = _mm256_set1_pd(coeffs[c]);
      const __m256d f = _mm256_loadu_pd(planes[c] + i);
      acc = _mm256_fmadd_pd(w, f, acc);
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = bias;
    for (std::size_t c = 0; c < channels; ++c) acc += coeffs[c] * planes[c][i];
    out[i] = acc;
  }
}

double mean_abs_rel_error_avx2(const double* pred, const double* ref,
                               std::size_t n) {
  if (n == 0) return 0.0;
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_loadu_pd(pred + i);
    const __m256d r = _mm256_loadu_pd(ref + i);
    const __m256d diff = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(p, r));
    acc = _mm256_add_pd(acc, _mm256_div_pd(diff, r));
  }
  // Fixed lane order keeps the reduction deterministic.
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
  for (; i < n; ++i) total += std::abs(pred[i] - ref[i]) / ref[i];
  return total / static_cast<double>(n);
}

}  // namespace panoslam::kernels::detail

#endif  // PANOSLAM_HAVE_AVX2_KERNELS
