// Compiled with -mavx2 (and without FMA) only; callers reach it through the
// runtime dispatcher after a CPU feature check.

#include <immintrin.h>

#include <array>
#include <cmath>
#include <limits>

#include "bhg/kernels.hpp"

namespace bhg::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

} // namespace

double compensated_dot(const double* a, const double* b, std::size_t n) noexcept {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(x), _CMP_GE_OQ);
    const __m256d if_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d if_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(if_x, if_sum, big_sum));
    sum = t;
  }

  alignas(32) std::array<double, 4> lane_sum;
  alignas(32) std::array<double, 4> lane_comp;
  _mm256_store_pd(lane_sum.data(), sum);
  _mm256_store_pd(lane_comp.data(), comp);

  // Fixed-order scalar fold: lanes, then the tail, then all compensations.
  double s = 0.0;
  double c = 0.0;
  auto add = [&](double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  };
  for (double v : lane_sum) add(v);
  for (; i < n; ++i) add(a[i] * b[i]);
  for (double v : lane_comp) c += v;
  return s + c;
}

void front_roots(double k0, double k3, double level_term, const double* rho, double* xi3,
                 std::size_t n) noexcept {
  const double a_s = std::abs(level_term);
  const __m256d a = _mm256_set1_pd(a_s);
  const __m256d a_sq = _mm256_set1_pd(level_term * level_term);
  const __m256d d = _mm256_set1_pd((k0 - k3) * (k0 + k3));
  const __m256d vk0 = _mm256_set1_pd(k0);
  const __m256d ak3 = _mm256_set1_pd(a_s * k3);
  const __m256d sign = _mm256_set1_pd(std::copysign(0.0, level_term));
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
  const __m256d zero = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(rho + i);
    const __m256d k0r = _mm256_mul_pd(vk0, r);
    const __m256d gap = _mm256_sub_pd(a, k0r);
    const __m256d num = _mm256_mul_pd(gap, _mm256_add_pd(a, k0r));
    const __m256d disc = _mm256_sub_pd(a_sq, _mm256_mul_pd(d, _mm256_mul_pd(r, r)));
    const __m256d den = _mm256_add_pd(ak3, _mm256_mul_pd(vk0, _mm256_sqrt_pd(disc)));
    const __m256d q = _mm256_div_pd(num, den);
    const __m256d x = _mm256_or_pd(abs_pd(q), sign); // copysign(q, level_term)
    const __m256d ok = _mm256_cmp_pd(gap, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(xi3 + i, _mm256_blendv_pd(nan, x, ok));
  }
  if (i < n) scalar::front_roots(k0, k3, level_term, rho + i, xi3 + i, n - i);
}

} // namespace bhg::kernels::avx2
