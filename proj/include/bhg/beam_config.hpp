#pragma once

#include "bhg/units.hpp"

namespace bhg {

enum class Spin { up, down };

/// +1/2 for up, -1/2 for down.
constexpr double spin_projection(Spin s) noexcept { return s == Spin::up ? 0.5 : -0.5; }

struct BeamInput {
  Energy kinetic_energy;
  Length waist;
  Spin spin = Spin::up;
};

/// Derived scalars of a configured beam.  Wavenumbers in pm^-1, lengths in pm.
///
/// (k0, k3) are the physical energy and axial momentum of the beam; the
/// plane-wave factor carries the primed vector k0' = k0 - kappa,
/// k3' = k3 + kappa, which lies on the mass shell.
struct BeamParameters {
  double kinetic_energy = 0; // keV
  double total_energy = 0;   // keV
  double mass = 0;           // m c / hbar
  double k0 = 0;
  double k3 = 0;
  double kappa = 0;
  double k0_prime = 0;
  double k3_prime = 0;
  double rayleigh_range = 0; // xi_R = k3 w0^2 / 2
  double divergence_sin = 0; // sin(theta_D) = 2 / (w0 k3)
  double b = 0;              // hbar k0 + m c
  double c_norm = 0;         // normalization of the full three-term bi-spinor
  double c_truncated = 0;    // sqrt(1 / (2 hbar k0 b)), used once the 01 term is dropped
  double w0 = 0;
  Spin spin = Spin::up;

  double s() const noexcept { return spin_projection(spin); }
  double divergence_angle() const noexcept;
};

/// Solves the dispersion relation k0^2 = m^2 + k3^2 + 2/w0^2 for k3 and
/// derives everything else.  Throws WaistBelowCritical when no real k3 exists
/// and DomainError for non-positive inputs.
BeamParameters derive_parameters(const BeamInput& input);

/// Smallest admissible waist at the given kinetic energy, sqrt(2/(k0^2 - m^2)).
double critical_waist(Energy kinetic_energy);

struct DivergenceSolution {
  double w0; // pm
  BeamParameters params;
};

/// Smallest divergence angle accepted by waist_for_divergence.
inline constexpr double kMinDivergenceAngle = 1e-6;

/// Inverts sin(theta_D) = 2/(w0 k3) together with the dispersion relation:
/// k3^2 = (k0^2 - m^2) / (1 + sin^2(theta_D)/2), w0 = 2/(k3 sin(theta_D)).
DivergenceSolution waist_for_divergence(Energy kinetic_energy, Angle theta_d, Spin spin = Spin::up);

} // namespace bhg
