#include "panoslam/kernels/kernels.hpp"

#if defined(PANOSLAM_HAVE_AVX2_KERNELS) && !defined(_MSC_VER)
#include <cpuid.h>
#endif

namespace panoslam::kernels {

namespace {

bool cpu_has_avx2_fma() {
#if defined(PANOSLAM_HAVE_AVX2_KERNELS) && !defined(_MSC_VER)
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
  const bool avx2 = (ebx & (1u << 5)) != 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
  const bool fma = (ecx & (1u << 12)) != 0;
  return avx2 && fma;
#else
  return false;
#endif
}

Backend& backend_state() {
  static Backend backend =
      cpu_has_avx2_fma() ? Backend::kAvx2 : Backend::kScalar;
  return backend;
}

}  // namespace

Backend active_backend() { return backend_state(); }

bool force_backend(Backend backend) {
  if (backend == Backend::kAvx2 && !cpu_has_avx2_fma()) return false;
  backend_state() = backend;
  return true;
}

void add(const double* a, const double* b, double* out, std::size_t n) {
#if defined(PANOSLAM_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2)
    return detail::add_avx2(a, b, out, n);
#endif
  detail::add_scalar(a, b, out, n);
}

void weighted_plane_sum(const double* const* planes, const double* coeffs,
                        std::size_t channels, double bias, double* out,
                        std::size_t n) {
#if defined(PANOSLAM_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2)
    return detail::weighted_plane_sum_avx2(planes, coeffs, channels, bias, out,
                                           n);
#endif
  detail::weighted_plane_sum_scalar(planes, coeffs, channels, bias, out, n);
}

double mean_abs_rel_error(const double* pred, const double* ref,
                          std::size_t n) {
#if defined(PANOSLAM_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2)
    return detail::mean_abs_rel_error_avx2(pred, ref, n);
#endif
  return detail::mean_abs_rel_error_scalar(pred, ref, n);
}

}  // namespace panoslam::kernels
