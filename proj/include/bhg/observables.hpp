#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bhg/beam_config.hpp"
#include "bhg/spinor_field.hpp"

namespace bhg {

// ---------------------------------------------------------------------------
// Transverse-plane quadrature.
//
// Radial integrals use Gauss-Legendre on [0, cutoff_factor |w|]; every
// integrand decays like exp(-2 rho^2/|w|^2), so the truncated tail is below
// exp(-200) of the peak.  Integrands here are finite Fourier series in the
// azimuth of degree < azimuthal_points, for which the uniform azimuthal rule
// is exact.  Each integral is evaluated with N and 2N radial nodes and must
// agree to abs_tol + rel_tol |I_2N|; the 2N value is returned.

struct QuadratureSpec {
  int radial_nodes = 256;
  double cutoff_factor = 10.0; // in units of |w| at the evaluation plane
  int azimuthal_points = 8;
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;

  /// Throws DomainError unless radial_nodes >= 16, cutoff_factor >= 5 and
  /// azimuthal_points >= 4.
  void validate() const;
};

struct GaussLegendreRule {
  std::vector<double> nodes;   // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Cached n-point rule (thread-safe).
const GaussLegendreRule& gauss_legendre(int n);

/// Writes `out.size()` real integrand values at transverse offset (xi1, xi2).
using TransverseIntegrand = std::function<void(double xi1, double xi2, std::span<double> out)>;

/// Integrals of each integrand component over the transverse plane at
/// xi3 + xi0 = plane.  Deterministic for a fixed spec and ISA.  Throws
/// NumericalFailure when N and 2N disagree beyond tolerance.
std::vector<double> expect_transverse(const TransverseIntegrand& integrand, std::size_t count,
                                      const BeamParameters& params, double plane,
                                      const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Expectation values.  Wavenumber-valued results are in pm^-1 (hbar = 1);
// angular momenta in units of hbar.  Unless stated otherwise the field is
// evaluated on the plane xi3 + xi0 = plane with the waist at the origin.

/// <j^mu> = (<j0>, <j1>, <j2>, <j3>).
std::array<double, 4> current_expectation(const BeamParameters& params, FieldForm form, double plane = 0.0,
                                          const QuadratureSpec& spec = {});

struct FourMomentum {
  double p0 = 0, p1 = 0, p2 = 0, p3 = 0; // physical components, pm^-1
};

/// <Psi^dagger p_mu Psi> with p0 = i d_t and p_k = -i d_k.
FourMomentum four_momentum(const BeamParameters& params, FieldForm form = FieldForm::exact, double plane = 0.0,
                           const QuadratureSpec& spec = {});

/// <Psi^dagger (p1^2 + p2^2) Psi>, evaluated as <|d_x Psi|^2 + |d_y Psi|^2>.
double radial_momentum_sq(const BeamParameters& params, FieldForm form = FieldForm::exact, double plane = 0.0,
                          const QuadratureSpec& spec = {});

/// Same operator for the normalized scalar Klein-Gordon mode Phi_00.
double radial_momentum_sq_scalar(const BeamParameters& params, double plane = 0.0,
                                 const QuadratureSpec& spec = {});

struct AngularMomenta {
  double s3 = 0; // spin, hbar
  double l3 = 0; // orbital, hbar
  double j3 = 0; // total, hbar
};

/// S3 from (hbar/2) diag(sigma3, sigma3), L3 from -i hbar (xi1 d_2 - xi2 d_1).
AngularMomenta angular_momenta(const BeamParameters& params, FieldForm form = FieldForm::truncated,
                               double plane = 0.0, const QuadratureSpec& spec = {});

/// Routes to the spin-orbit term:
///  - divergence:        (1 - mc^2/E) sin^2(theta_D)
///  - semi_relativistic: 2 hbar^2/(m^2 c^2 w0^2) [1 + 2/(w0^2 k3^2)]
///  - quadrature:        <L3>/(s hbar) of the truncated field
enum class SoiRoute { divergence, semi_relativistic, quadrature };

double soi_term(const BeamParameters& params, SoiRoute route, const QuadratureSpec& spec = {});

/// 4 hbar^2 C^2 / w0^2 with the truncated normalization.
double soi_direct_closed_form(const BeamParameters& params) noexcept;

/// gamma_B = 2 pi Delta s with Delta from the divergence route (signed).
double berry_phase(const BeamParameters& params) noexcept;

struct GouyExpectation {
  double computed_ratio = 1;    // sum over the three terms of population x (1+|l|+2p)
  double closed_form_ratio = 1; // 1 + Delta/2 (divergence route)
};

GouyExpectation gouy_expected(const BeamParameters& params, const QuadratureSpec& spec = {});

struct GouyShift {
  double computed = 0;   // pi x computed ratio
  double from_berry = 0; // pi + |gamma_B| / 2
};

GouyShift gouy_total_shift(const BeamParameters& params, const QuadratureSpec& spec = {});

/// <|exact - truncated|^2> / <|exact|^2>.
double truncation_defect(const BeamParameters& params, double plane = 0.0, const QuadratureSpec& spec = {});

/// Every observable of one beam, with quadrature values next to their
/// closed forms.  Energies in keV, momenta in keV/c, p_rho^2 in keV^2/c^2.
struct ObservableReport {
  BeamParameters params;
  std::array<double, 4> current{};  // <j^mu>, exact field
  std::array<double, 4> p_mu{};     // quadrature, exact field
  std::array<double, 4> p_mu_closed{}; // hbar k_mu
  double energy = 0;                // p0 c
  double energy_closed = 0;         // kinetic + mc^2
  double p_rho_sq = 0;
  double p_rho_sq_closed = 0;       // 2 hbar^2 / w0^2
  double p_rho_sq_scalar = 0;       // Klein-Gordon mode
  AngularMomenta momenta{};         // truncated field
  double delta_divergence = 0;
  double delta_semi_relativistic = 0;
  double delta_direct = 0;
  double delta_direct_closed = 0;
  double berry_phase = 0;
  GouyExpectation gouy{};
  GouyShift gouy_shift{};
  double truncation_defect = 0;
  double truncation_defect_closed = 0; // 2 hbar^2 kappa^2 C^2
};

ObservableReport observe(const BeamParameters& params, const QuadratureSpec& spec = {});

} // namespace bhg
