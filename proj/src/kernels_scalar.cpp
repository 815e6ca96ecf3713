#include <cmath>

#include "panoslam/kernels/kernels.hpp"

namespace panoslam::kernels::detail {

void add_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void weighted_plane_sum_scalar(const double* const* planes,
                               const double* coeffs, std::size_t channels,
                               double bias, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = bias;
  for (std::size_t c = 0; c < channels; ++c) {
    const double* plane = planes[c];
    const double w = coeffs[c];
    for (std::size_t i = 0; i < n; ++i) out[i] += w * plane[i];
  }
}

double mean_abs_rel_error_scalar(const double* pred, const double* ref,
                                 std::size_t n) {
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += std::abs(pred[i] - ref[i]) / ref[i];
  return acc / static_cast<double>(n);
}

}  // namespace panoslam::kernels::detail
