#pragma once

#include <complex>

#include "bhg/beam_config.hpp"

namespace bhg {

struct ModeIndex {
  int l = 0; // azimuthal, any sign
  int p = 0; // radial, >= 0

  int gouy_order() const noexcept; // 1 + |l| + 2p
  friend constexpr bool operator==(ModeIndex, ModeIndex) = default;
};

/// Spacetime sample relative to the beam waist, in cylindrical beam
/// coordinates.  xi0 is c times the elapsed time since the waist event.
struct BeamPoint {
  double xi_rho = 0; // pm, >= 0
  double xi_phi = 0; // rad, [0, 2 pi)
  double xi3 = 0;    // pm
  double xi0 = 0;    // pm

  double zeta_arg() const noexcept { return xi3 + xi0; }
  double xi1() const noexcept;
  double xi2() const noexcept;
};

/// Lab 4-position (ct, x, y, z) in pm.
struct FourPosition {
  double ct = 0;
  double x = 0;
  double y = 0;
  double z = 0;
};

/// Builds a validated BeamPoint; the angle is wrapped into [0, 2 pi).
BeamPoint make_beam_point(double xi_rho, double xi_phi, double xi3, double xi0);

/// Beam coordinates of a lab event for a waist at the given 4-position.
BeamPoint to_beam_point(const FourPosition& lab, const FourPosition& waist = {});

/// Lab event for a point expressed relative to the waist.
FourPosition to_lab(const BeamPoint& point, const FourPosition& waist = {});

/// w = w0 (1 + 2 i kappa (xi3 + xi0)).
std::complex<double> complex_w(const BeamParameters& params, double zeta_arg);

/// (1+|l|+2p) arctan(2 kappa (xi3 + xi0)).
double gouy_spacetime(const BeamParameters& params, ModeIndex mode, double zeta_arg);

struct GouyValue {
  double phase = 0;
  bool far_field = false; // |xi_B| >= xi_R, where the formula is stated to hold
};

/// Gouy phase with the elapsed time eliminated through the front velocity:
/// (1+|l|+2p) arctan[(k3 xi3 + k0 xi_B) / (xi_R (k3 + k0))] with
/// xi_B = sign(xi3) sqrt(xi3^2 + xi_rho^2) and xi_B = 0 on the waist plane.
GouyValue gouy_nonparaxial(const BeamParameters& params, ModeIndex mode, double xi3, double xi_rho);

/// (1+|l|+2p) arctan(xi3 / xi_R).
double gouy_paraxial(const BeamParameters& params, ModeIndex mode, double xi3);

/// w0 sqrt(1 + (xi3/xi_R)^2).
double beam_radius(const BeamParameters& params, double xi3);

/// Generalized Laguerre polynomial L_p^alpha(x) by three-term recurrence.
double laguerre(int p, int alpha, double x);

/// Scalar LG solution Phi_lp (unit-normalized over the transverse plane).
std::complex<double> phi_lp(const BeamParameters& params, ModeIndex mode, const BeamPoint& point);

/// C Phi_lp exp(-i k'_mu x^mu): the envelope is evaluated at the beam point,
/// the plane-wave phase at the absolute lab event.
std::complex<double> psi_scalar(const BeamParameters& params, ModeIndex mode, const BeamPoint& point,
                                const FourPosition& lab);

} // namespace bhg
