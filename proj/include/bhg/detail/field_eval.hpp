#pragma once

// Field formulas written once over a scalar type T, which is either
// std::complex<double> (plain evaluation) or Jet (value plus an exact
// directional derivative).  Coordinates are Cartesian offsets from the waist
// (xi0..xi3) together with the lab (ct, z) that enter the plane-wave phase.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "bhg/beam_config.hpp"
#include "bhg/jet.hpp"
#include "bhg/scalar_modes.hpp"

namespace bhg::detail {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

template <class T>
struct Coords {
  T xi0, xi1, xi2, xi3;
  T ct, z; // lab time and axial position for the plane-wave factor
};

template <class T>
T laguerre_t(int p, int alpha, const T& x) {
  if (p == 0) return T(1.0);
  T prev(1.0);
  T cur = T(1.0 + alpha) - x;
  for (int k = 1; k < p; ++k) {
    T next = ((T(2.0 * k + 1.0 + alpha) - x) * cur - T(double(k + alpha)) * prev) / double(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

template <class T>
T int_pow(T base, int n) {
  T r(1.0);
  for (int i = 0; i < n; ++i) r = r * base;
  return r;
}

/// exp(-i (k0' ct - k3' z)).
template <class T>
T plane_wave(const BeamParameters& P, const T& ct, const T& z) {
  return exp((-kI) * (P.k0_prime * ct - P.k3_prime * z));
}

/// Scalar LG mode Phi_lp at Cartesian beam coordinates.
template <class T>
T lg_mode(const BeamParameters& P, ModeIndex m, const T& xi1, const T& xi2, const T& u) {
  const double w0 = P.w0;
  const double kap = P.kappa;
  const int la = std::abs(m.l);
  const T w = w0 * (1.0 + (2.0 * kap) * u * kI);
  const T absw2 = (w0 * w0) * (1.0 + (4.0 * kap * kap) * u * u);
  const T zeta = atan((2.0 * kap) * u);
  const T r2 = xi1 * xi1 + xi2 * xi2;
  const double fact_ratio = std::exp(std::lgamma(m.p + 1.0) - std::lgamma(m.p + la + 1.0));
  const T amp = sqrt((2.0 / std::numbers::pi * fact_ratio) / absw2);
  const double charge = m.l >= 0 ? 1.0 : -1.0;
  const T vortex = int_pow((xi1 + (charge * xi2) * kI) * sqrt(2.0 / absw2), la);
  const T lag = laguerre_t(m.p, la, 2.0 * r2 / absw2);
  const T gauss = exp(-r2 / (w0 * w));
  const T gouy = exp((-kI * double(1 + la + 2 * m.p)) * zeta);
  return amp * vortex * lag * gauss * gouy;
}

/// The three envelopes of the Gaussian bi-spinor in closed form, without C
/// and without the plane-wave factor.
template <class T>
struct GaussianEnvelopes {
  T f00, f01, f10;
};

template <class T>
GaussianEnvelopes<T> gaussian_envelopes(const BeamParameters& P, const T& xi1, const T& xi2,
                                        const T& u, double vortex_charge) {
  const double w0 = P.w0;
  const double kap = P.kappa;
  const T w = w0 * (1.0 + (2.0 * kap) * u * kI);
  const T wbar = w0 * (1.0 - (2.0 * kap) * u * kI); // conj(w) continued off the real axis
  const T r2 = xi1 * xi1 + xi2 * xi2;
  const T gauss = exp(-r2 / (w0 * w));
  const double a = std::sqrt(2.0 / std::numbers::pi);
  const T f00 = a * gauss / w;
  const T f01 = f00 * (wbar / w - 2.0 * r2 / (w * w));
  const T f10 = (2.0 / std::sqrt(std::numbers::pi)) * (xi1 + (vortex_charge * xi2) * kI) * gauss / (w * w);
  return {f00, f01, f10};
}

/// Bi-spinor of the Gaussian beam in the Dirac representation, built from
/// Psi = C Phi_00 exp(-i k'x) through [(p0 + m) chi; sigma.p chi] Psi with
/// p = -i grad.  Spin up fills slots (0, 2, 3); spin down fills (1, 2, 3).
template <class T>
std::array<T, 4> gaussian_bispinor(const BeamParameters& P, bool truncated, const Coords<T>& c) {
  const bool up = P.spin == Spin::up;
  const T u = c.xi3 + c.xi0;
  const auto env = gaussian_envelopes(P, c.xi1, c.xi2, u, up ? 1.0 : -1.0);
  const double kap = truncated ? 0.0 : P.kappa;
  const double norm = truncated ? P.c_truncated : P.c_norm;
  const T phase = norm * plane_wave(P, c.ct, c.z);

  const T upper = P.b * env.f00 + kap * env.f01;
  const T axial = P.k3 * env.f00 - kap * env.f01;
  const T vortex = (kI * (std::numbers::sqrt2 / P.w0)) * env.f10;
  if (up) return {upper * phase, T(0.0), axial * phase, vortex * phase};
  return {T(0.0), upper * phase, vortex * phase, -axial * phase};
}

template <class T>
T scalar_field(const BeamParameters& P, ModeIndex m, const Coords<T>& c) {
  return P.c_norm * lg_mode(P, m, c.xi1, c.xi2, c.xi3 + c.xi0) * plane_wave(P, c.ct, c.z);
}

/// Jet coordinates for a derivative along the lab direction `dir` at `lab`.
inline Coords<Jet> seeded(const FourPosition& lab, const FourPosition& waist, const FourPosition& dir) {
  return {Jet::variable(lab.ct - waist.ct, dir.ct), Jet::variable(lab.x - waist.x, dir.x),
          Jet::variable(lab.y - waist.y, dir.y),    Jet::variable(lab.z - waist.z, dir.z),
          Jet::variable(lab.ct, dir.ct),            Jet::variable(lab.z, dir.z)};
}

inline Coords<cplx> plain(const FourPosition& lab, const FourPosition& waist) {
  return {lab.ct - waist.ct, lab.x - waist.x, lab.y - waist.y, lab.z - waist.z, lab.ct, lab.z};
}

} // namespace bhg::detail
