#include <cmath>
#include <limits>

#include "bhg/kernels.hpp"

namespace bhg::kernels::scalar {

double compensated_dot(const double* a, const double* b, std::size_t n) noexcept {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i] * b[i];
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void front_roots(double k0, double k3, double level_term, const double* rho, double* xi3,
                 std::size_t n) noexcept {
  const double a = std::abs(level_term);
  const double a_sq = level_term * level_term;
  const double d = (k0 - k3) * (k0 + k3);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rho[i];
    const double k0r = k0 * r;
    const double gap = a - k0r;
    const double num = gap * (a + k0r);
    const double den = a * k3 + k0 * std::sqrt(a_sq - d * (r * r));
    const double x = std::copysign(num / den, level_term);
    xi3[i] = gap > 0.0 ? x : nan;
  }
}

} // namespace bhg::kernels::scalar
