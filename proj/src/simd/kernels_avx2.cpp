// Compiled with -mavx2 only; reached exclusively through the runtime
// dispatcher after a CPU feature check.

#include <immintrin.h>

#include "simd/kernels_internal.hpp"

namespace l0lms::simd::detail {

namespace {

inline double horizontal_sum(__m256d v) {
  // Fixed reduction order: (l0 + l1) + (l2 + l3).
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const double l0 = _mm_cvtsd_f64(lo);
  const double l1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  const double l2 = _mm_cvtsd_f64(hi);
  const double l3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
  return (l0 + l1) + (l2 + l3);
}

inline __m256d sign_of(__m256d t) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(t, zero, _CMP_GT_OQ), one);
  const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(t, zero, _CMP_LT_OQ), one);
  return _mm256_sub_pd(pos, neg);
}

inline __m256d abs_of(__m256d t) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), t);
}

inline __m256d negate(__m256d t) { return _mm256_xor_pd(t, _mm256_set1_pd(-0.0)); }

}  // namespace

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(&a[i + 4]),
                                             _mm256_loadu_pd(&b[i + 4])));
  }
  if (i + 4 <= n) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
    i += 4;
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  if (i + 4 <= n) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    i += 4;
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void lms_update_avx2(std::span<double> w, std::span<const double> x, double gain) {
  const std::size_t n = w.size();
  const __m256d vg = _mm256_set1_pd(gain);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(&w[i]);
    _mm256_storeu_pd(&w[i], _mm256_add_pd(t, _mm256_mul_pd(vg, _mm256_loadu_pd(&x[i]))));
  }
  lms_update_scalar(w.subspan(i), x.subspan(i), gain);
}

void l0_update_avx2(std::span<double> w, std::span<const double> x, double gain,
                    double kappa, double alpha) {
  const std::size_t n = w.size();
  const __m256d vg = _mm256_set1_pd(gain);
  const __m256d vk = _mm256_set1_pd(kappa);
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d slope = _mm256_set1_pd(2.0 * alpha * alpha);
  const __m256d jump = _mm256_set1_pd(2.0 * alpha);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(&w[i]);
    const __m256d outside = _mm256_cmp_pd(_mm256_mul_pd(abs_of(t), va), one, _CMP_GT_OQ);
    const __m256d g = _mm256_andnot_pd(
        outside, _mm256_sub_pd(_mm256_mul_pd(slope, t), _mm256_mul_pd(jump, sign_of(t))));
    const __m256d moved = _mm256_add_pd(t, _mm256_mul_pd(vg, _mm256_loadu_pd(&x[i])));
    _mm256_storeu_pd(&w[i], _mm256_add_pd(moved, _mm256_mul_pd(vk, g)));
  }
  l0_update_scalar(w.subspan(i), x.subspan(i), gain, kappa, alpha);
}

void za_update_avx2(std::span<double> w, std::span<const double> x, double gain,
                    double rho) {
  const std::size_t n = w.size();
  const __m256d vg = _mm256_set1_pd(gain);
  const __m256d vr = _mm256_set1_pd(rho);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(&w[i]);
    const __m256d moved = _mm256_add_pd(t, _mm256_mul_pd(vg, _mm256_loadu_pd(&x[i])));
    _mm256_storeu_pd(&w[i], _mm256_add_pd(moved, _mm256_mul_pd(vr, negate(sign_of(t)))));
  }
  za_update_scalar(w.subspan(i), x.subspan(i), gain, rho);
}

void rza_update_avx2(std::span<double> w, std::span<const double> x, double gain,
                     double rho, double epsilon) {
  const std::size_t n = w.size();
  const __m256d vg = _mm256_set1_pd(gain);
  const __m256d vr = _mm256_set1_pd(rho);
  const __m256d ve = _mm256_set1_pd(epsilon);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(&w[i]);
    const __m256d g = _mm256_div_pd(negate(sign_of(t)),
                                    _mm256_add_pd(one, _mm256_mul_pd(ve, abs_of(t))));
    const __m256d moved = _mm256_add_pd(t, _mm256_mul_pd(vg, _mm256_loadu_pd(&x[i])));
    _mm256_storeu_pd(&w[i], _mm256_add_pd(moved, _mm256_mul_pd(vr, g)));
  }
  rza_update_scalar(w.subspan(i), x.subspan(i), gain, rho, epsilon);
}

}  // namespace l0lms::simd::detail
