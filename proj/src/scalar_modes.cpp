#include "bhg/scalar_modes.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "bhg/detail/field_eval.hpp"
#include "bhg/errors.hpp"

namespace bhg {

int ModeIndex::gouy_order() const noexcept { return 1 + std::abs(l) + 2 * p; }

double BeamPoint::xi1() const noexcept { return xi_rho * std::cos(xi_phi); }
double BeamPoint::xi2() const noexcept { return xi_rho * std::sin(xi_phi); }

BeamPoint make_beam_point(double xi_rho, double xi_phi, double xi3, double xi0) {
  if (!(xi_rho >= 0.0)) throw DomainError("xi_rho must be non-negative");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double phi = std::fmod(xi_phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return {xi_rho, phi, xi3, xi0};
}

BeamPoint to_beam_point(const FourPosition& lab, const FourPosition& waist) {
  const double x = lab.x - waist.x;
  const double y = lab.y - waist.y;
  return make_beam_point(std::hypot(x, y), std::atan2(y, x), lab.z - waist.z, lab.ct - waist.ct);
}

FourPosition to_lab(const BeamPoint& point, const FourPosition& waist) {
  return {waist.ct + point.xi0, waist.x + point.xi1(), waist.y + point.xi2(), waist.z + point.xi3};
}

std::complex<double> complex_w(const BeamParameters& params, double zeta_arg) {
  return {params.w0, 2.0 * params.w0 * params.kappa * zeta_arg};
}

double gouy_spacetime(const BeamParameters& params, ModeIndex mode, double zeta_arg) {
  return mode.gouy_order() * std::atan(2.0 * params.kappa * zeta_arg);
}

GouyValue gouy_nonparaxial(const BeamParameters& params, ModeIndex mode, double xi3, double xi_rho) {
  double xi_b = 0.0;
  if (xi3 != 0.0) xi_b = std::copysign(std::hypot(xi3, xi_rho), xi3);
  const double arg =
      (params.k3 * xi3 + params.k0 * xi_b) / (params.rayleigh_range * (params.k3 + params.k0));
  return {mode.gouy_order() * std::atan(arg), std::abs(xi_b) >= params.rayleigh_range};
}

double gouy_paraxial(const BeamParameters& params, ModeIndex mode, double xi3) {
  return mode.gouy_order() * std::atan(xi3 / params.rayleigh_range);
}

double beam_radius(const BeamParameters& params, double xi3) {
  return params.w0 * std::hypot(1.0, xi3 / params.rayleigh_range);
}

double laguerre(int p, int alpha, double x) {
  if (p < 0 || alpha < 0) throw DomainError("laguerre: p and alpha must be non-negative");
  return detail::laguerre_t(p, alpha, std::complex<double>(x)).real();
}

std::complex<double> phi_lp(const BeamParameters& params, ModeIndex mode, const BeamPoint& point) {
  if (mode.p < 0) throw DomainError("radial index p must be non-negative");
  using C = std::complex<double>;
  return detail::lg_mode(params, mode, C(point.xi1()), C(point.xi2()), C(point.zeta_arg()));
}

std::complex<double> psi_scalar(const BeamParameters& params, ModeIndex mode, const BeamPoint& point,
                                const FourPosition& lab) {
  using C = std::complex<double>;
  return params.c_norm * phi_lp(params, mode, point) * detail::plane_wave(params, C(lab.ct), C(lab.z));
}

} // namespace bhg
