// AArch64 variant; NEON is baseline there, so no runtime check is needed.

#include <arm_neon.h>

#include <cmath>
#include <limits>

#include "bhg/kernels.hpp"

namespace bhg::kernels::neon {

double compensated_dot(const double* a, const double* b, std::size_t n) noexcept {
  float64x2_t sum = vdupq_n_f64(0.0);
  float64x2_t comp = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t t = vaddq_f64(sum, x);
    const uint64x2_t big_sum = vcgeq_f64(vabsq_f64(sum), vabsq_f64(x));
    const float64x2_t if_sum = vaddq_f64(vsubq_f64(sum, t), x);
    const float64x2_t if_x = vaddq_f64(vsubq_f64(x, t), sum);
    comp = vaddq_f64(comp, vbslq_f64(big_sum, if_sum, if_x));
    sum = t;
  }
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
  add(vgetq_lane_f64(sum, 0));
  add(vgetq_lane_f64(sum, 1));
  for (; i < n; ++i) add(a[i] * b[i]);
  c += vgetq_lane_f64(comp, 0);
  c += vgetq_lane_f64(comp, 1);
  return s + c;
}

void front_roots(double k0, double k3, double level_term, const double* rho, double* xi3,
                 std::size_t n) noexcept {
  const double a_s = std::abs(level_term);
  const float64x2_t a = vdupq_n_f64(a_s);
  const float64x2_t a_sq = vdupq_n_f64(level_term * level_term);
  const float64x2_t d = vdupq_n_f64((k0 - k3) * (k0 + k3));
  const float64x2_t vk0 = vdupq_n_f64(k0);
  const float64x2_t ak3 = vdupq_n_f64(a_s * k3);
  const float64x2_t nan = vdupq_n_f64(std::numeric_limits<double>::quiet_NaN());
  const bool negative = std::signbit(level_term);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t r = vld1q_f64(rho + i);
    const float64x2_t k0r = vmulq_f64(vk0, r);
    const float64x2_t gap = vsubq_f64(a, k0r);
    const float64x2_t num = vmulq_f64(gap, vaddq_f64(a, k0r));
    const float64x2_t disc = vsubq_f64(a_sq, vmulq_f64(d, vmulq_f64(r, r)));
    const float64x2_t den = vaddq_f64(ak3, vmulq_f64(vk0, vsqrtq_f64(disc)));
    float64x2_t x = vabsq_f64(vdivq_f64(num, den));
    if (negative) x = vnegq_f64(x);
    const uint64x2_t ok = vcgtq_f64(gap, vdupq_n_f64(0.0));
    vst1q_f64(xi3 + i, vbslq_f64(ok, x, nan));
  }
  if (i < n) scalar::front_roots(k0, k3, level_term, rho + i, xi3 + i, n - i);
}

} // namespace bhg::kernels::neon
