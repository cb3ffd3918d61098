#include "bhg/beam_config.hpp"

#include <cmath>
#include <numbers>

#include "bhg/errors.hpp"

namespace bhg {

double BeamParameters::divergence_angle() const noexcept { return std::asin(divergence_sin); }

namespace {

struct EnergyTerms {
  double total;
  double k0;
  double mass;
  double free_momentum_sq; // k0^2 - m^2
};

EnergyTerms energy_terms(Energy kinetic) {
  if (!(kinetic.value > 0.0) || !std::isfinite(kinetic.value))
    throw DomainError("kinetic energy must be positive and finite");
  const double total = kinetic.value + constants_codata().electron_rest_energy;
  const double k0 = to_wavenumber(Energy(total)).value;
  const double m = electron_mass_wavenumber();
  // (k0 - m)(k0 + m) avoids cancellation at low kinetic energy.
  return {total, k0, m, (k0 - m) * (k0 + m)};
}

} // namespace

double critical_waist(Energy kinetic_energy) {
  return std::sqrt(2.0 / energy_terms(kinetic_energy).free_momentum_sq);
}

BeamParameters derive_parameters(const BeamInput& input) {
  const EnergyTerms e = energy_terms(input.kinetic_energy);
  const double w0 = input.waist.value;
  if (!(w0 > 0.0) || std::isnan(w0))
    throw DomainError("waist radius must be positive");

  const double transverse = 2.0 / (w0 * w0);
  const double k3_sq = e.free_momentum_sq - transverse;
  if (!(k3_sq > 0.0))
    throw WaistBelowCritical(w0, std::sqrt(2.0 / e.free_momentum_sq));

  BeamParameters p;
  p.kinetic_energy = input.kinetic_energy.value;
  p.total_energy = e.total;
  p.mass = e.mass;
  p.k0 = e.k0;
  p.k3 = std::sqrt(k3_sq);
  p.kappa = 1.0 / (w0 * w0 * (p.k0 + p.k3));
  p.k0_prime = p.k0 - p.kappa;
  p.k3_prime = p.k3 + p.kappa;
  p.rayleigh_range = 0.5 * p.k3 * w0 * w0;
  p.divergence_sin = 2.0 / (w0 * p.k3);
  p.b = p.k0 + p.mass;
  p.c_norm = 1.0 / std::sqrt(2.0 * (p.k0 * p.b + p.kappa * p.kappa));
  p.c_truncated = 1.0 / std::sqrt(2.0 * p.k0 * p.b);
  p.w0 = w0;
  p.spin = input.spin;
  return p;
}

DivergenceSolution waist_for_divergence(Energy kinetic_energy, Angle theta_d, Spin spin) {
  const double theta = theta_d.value;
  if (!(theta >= kMinDivergenceAngle) || theta > std::numbers::pi / 2)
    throw DomainError("divergence angle must lie in [1e-6, pi/2] rad");
  const EnergyTerms e = energy_terms(kinetic_energy);
  const double sin_t = std::sin(theta);
  const double k3 = std::sqrt(e.free_momentum_sq / (1.0 + 0.5 * sin_t * sin_t));
  const double w0 = 2.0 / (k3 * sin_t);
  return {w0, derive_parameters({kinetic_energy, Length(w0), spin})};
}

} // namespace bhg
