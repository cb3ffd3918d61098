#pragma once

// Forward-mode differentiation of complex-valued expressions along one real
// direction.  A Jet carries f and df/ds where s parametrizes a line through
// the evaluation point; the field templates in detail/field_eval.hpp are
// instantiated on Jet to obtain exact first derivatives.

#include <complex>

namespace bhg {

struct Jet {
  using cplx = std::complex<double>;
  cplx v{};
  cplx d{};

  constexpr Jet() = default;
  constexpr Jet(double x) : v(x) {}
  constexpr Jet(cplx x) : v(x) {}
  constexpr Jet(cplx x, cplx dx) : v(x), d(dx) {}

  static constexpr Jet variable(double x, double dx) { return {cplx(x), cplx(dx)}; }

  Jet& operator+=(const Jet& o) { v += o.v; d += o.d; return *this; }
  Jet& operator-=(const Jet& o) { v -= o.v; d -= o.d; return *this; }
  Jet& operator*=(const Jet& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Jet& operator/=(const Jet& o) {
    const cplx q = v / o.v;
    d = (d - q * o.d) / o.v;
    v = q;
    return *this;
  }
};

inline Jet operator-(const Jet& a) { return {-a.v, -a.d}; }
inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }

inline Jet operator*(Jet a, std::complex<double> s) { return {a.v * s, a.d * s}; }
inline Jet operator*(std::complex<double> s, Jet a) { return {a.v * s, a.d * s}; }
inline Jet operator*(Jet a, double s) { return {a.v * s, a.d * s}; }
inline Jet operator*(double s, Jet a) { return {a.v * s, a.d * s}; }
inline Jet operator/(Jet a, double s) { return {a.v / s, a.d / s}; }
inline Jet operator/(double s, const Jet& a) { return Jet(s) / a; }
inline Jet operator+(Jet a, std::complex<double> s) { return {a.v + s, a.d}; }
inline Jet operator+(std::complex<double> s, Jet a) { return {a.v + s, a.d}; }
inline Jet operator+(Jet a, double s) { return {a.v + s, a.d}; }
inline Jet operator+(double s, Jet a) { return {a.v + s, a.d}; }
inline Jet operator-(Jet a, double s) { return {a.v - s, a.d}; }
inline Jet operator-(double s, Jet a) { return {s - a.v, -a.d}; }

inline Jet exp(const Jet& a) {
  const auto e = std::exp(a.v);
  return {e, e * a.d};
}

inline Jet sqrt(const Jet& a) {
  const auto r = std::sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}

inline Jet atan(const Jet& a) { return {std::atan(a.v), a.d / (1.0 + a.v * a.v)}; }

inline std::complex<double> value_of(const Jet& a) { return a.v; }
inline std::complex<double> value_of(const std::complex<double>& a) { return a; }

} // namespace bhg
