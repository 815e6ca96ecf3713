#pragma once

#include <cstddef>

namespace panoslam::kernels {

// Dense per-pixel arithmetic used by the depth pipeline. Each kernel has a
// scalar reference implementation and an AVX2 variant; the active backend is
// picked once at startup from CPUID and can be forced for testing. Within one
// backend all reductions use a fixed order, so results are reproducible
// run-to-run on the same machine.

enum class Backend { kScalar, kAvx2 };

Backend active_backend();
// Returns false if the requested backend is unavailable on this CPU.
bool force_backend(Backend backend);

// out[i] = a[i] + b[i]
void add(const double* a, const double* b, double* out, std::size_t n);

// out[i] = bias + sum_c coeffs[c] * planes[c][i]
// The per-channel scale/bias feature modulation folds into (coeffs, bias),
// making this the inner loop of every depth prediction.
void weighted_plane_sum(const double* const* planes, const double* coeffs,
                        std::size_t channels, double bias, double* out,
                        std::size_t n);

// mean_i |pred[i] - ref[i]| / ref[i], ref[i] > 0. Returns 0 for n = 0.
double mean_abs_rel_error(const double* pred, const double* ref,
                          std::size_t n);

namespace detail {
void add_scalar(const double* a, const double* b, double* out, std::size_t n);
void weighted_plane_sum_scalar(const double* const* planes,
                               const double* coeffs, std::size_t channels,
                               double bias, double* out, std::size_t n);
double mean_abs_rel_error_scalar(const double* pred, const double* ref,
                                 std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define PANOSLAM_HAVE_AVX2_KERNELS 1
void add_avx2(const double* a, const double* b, double* out, std::size_t n);
void weighted_plane_sum_avx2(const double* const* planes, const double* coeffs,
                             std::size_t channels, double bias, double* out,
                             std::size_t n);
double mean_abs_rel_error_avx2(const double* pred, const double* ref,
                               std::size_t n);
#endif
}  // namespace detail

}  // namespace panoslam::kernels
