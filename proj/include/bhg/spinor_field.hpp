#pragma once

#include <array>
#include <complex>
#include <functional>

#include "bhg/beam_config.hpp"
#include "bhg/scalar_modes.hpp"

namespace bhg {

/// Four complex amplitudes in the Dirac representation: upper spinor
/// (slots 0, 1) and lower spinor (slots 2, 3).
struct BiSpinorValue {
  std::array<std::complex<double>, 4> c{};

  double density() const noexcept; // Psi^dagger Psi
  double norm() const noexcept { return std::sqrt(density()); }
};

BiSpinorValue operator-(const BiSpinorValue& a, const BiSpinorValue& b);

/// The three LG terms of the Gaussian bi-spinor: (l,p) = (0,0), (0,1), (2s,0).
enum class ModeTerm { psi00, psi01, psi10 };

ModeIndex mode_of(ModeTerm term, Spin spin) noexcept;

/// Exact three-term solution, or the two-term form with the 01 term dropped
/// and C replaced by sqrt(1/(2 hbar k0 b)).
enum class FieldForm { exact, truncated };

/// Weights of |Psi_lp|^2 in the transverse-averaged density.  With C the
/// normalization constant, C^2 (w00 + w01 + w10) = 1.
struct ModeWeights {
  double w00 = 0; // b^2 + hbar^2 k3^2
  double w01 = 0; // 2 hbar^2 kappa^2
  double w10 = 0; // 2 hbar^2 / w0^2

  double total() const noexcept { return w00 + w01 + w10; }
};

ModeWeights mode_weights(const BeamParameters& params) noexcept;

/// 2 hbar^2 kappa^2 C^2: density share of the term dropped by truncation.
double truncation_share(const BeamParameters& params) noexcept;

/// Closed-form Psi_00, Psi_01 or Psi_10 including C and the plane-wave
/// factor.  Psi_10 carries the vortex exp(i 2s xi_phi).
std::complex<double> psi_component(const BeamParameters& params, ModeTerm term, const BeamPoint& point,
                                   const FourPosition& lab);

BiSpinorValue bispinor_exact(const BeamParameters& params, const BeamPoint& point, const FourPosition& lab);
BiSpinorValue bispinor_truncated(const BeamParameters& params, const BeamPoint& point,
                                 const FourPosition& lab);
BiSpinorValue bispinor(const BeamParameters& params, FieldForm form, const BeamPoint& point,
                       const FourPosition& lab);

/// Field at a lab event for a waist at `waist`.
BiSpinorValue bispinor_at(const BeamParameters& params, FieldForm form, const FourPosition& lab,
                          const FourPosition& waist = {});

/// Exact derivative of the field along the lab direction `dir` (forward-mode AD).
BiSpinorValue bispinor_derivative(const BeamParameters& params, FieldForm form, const FourPosition& lab,
                                  const FourPosition& dir, const FourPosition& waist = {});

/// Independent construction: applies [(p0 + m) chi; sigma.p chi] to the
/// scalar C Phi_00 exp(-i k'x) with exactly differentiated momenta.
BiSpinorValue bispinor_from_scalar(const BeamParameters& params, const FourPosition& lab,
                                   const FourPosition& waist = {});

/// (j0, j1, j2, j3) with j^mu = Psi^dagger gamma^0 gamma^mu Psi; spatial
/// components are the contravariant (physical) ones.
std::array<double, 4> dirac_current(const BiSpinorValue& psi) noexcept;

// ---------------------------------------------------------------------------
// Finite-difference PDE residuals.

using SpinorFieldFn = std::function<BiSpinorValue(const FourPosition&)>;
using ScalarFieldFn = std::function<std::complex<double>(const FourPosition&)>;

struct StepSizes {
  double ct = 0, x = 0, y = 0, z = 0;

  StepSizes scaled(double f) const noexcept { return {ct * f, x * f, y * f, z * f}; }
};

/// Transverse steps equal to `step`; time and axial steps use the same
/// fraction of 1/k0' that `step` is of w0.  Throws DomainError when
/// step < 1e-8 w0.
StepSizes residual_steps(const BeamParameters& params, double step);

/// ||(i gamma^mu d_mu - m) Psi|| / (m ||Psi||) by central differences.  With
/// `richardson`, the operator is extrapolated from steps h and h/2.
double dirac_residual(const SpinorFieldFn& field, const FourPosition& at, const StepSizes& steps,
                      double mass, bool richardson);

/// |(d_t^2 - laplacian + m^2) Psi| / (m^2 |Psi|) by central differences.
double klein_gordon_residual(const ScalarFieldFn& field, const FourPosition& at, const StepSizes& steps,
                             double mass, bool richardson);

enum class WaveEquation { dirac, klein_gordon };

/// Residual of the exact bi-spinor (Dirac) or of the scalar Psi_00
/// (Klein-Gordon) at a point relative to a waist at the origin.
double pde_residual(const BeamParameters& params, WaveEquation which, const BeamPoint& point, double step,
                    bool richardson = true);

} // namespace bhg
