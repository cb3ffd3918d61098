#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bhg/beam_config.hpp"

namespace bhg {

// Level sets of the Gouy phase of the (0,0) mode in the (xi_rho, xi3)
// half-plane.  The paraxial phase arctan(xi3/xi_R) gives flat fronts; the
// far-field form with xi_B = sign(xi3) sqrt(xi3^2 + xi_rho^2) bends them
// toward the waist off axis.

enum class FrontVariant { paraxial, nonparaxial };

std::string_view variant_name(FrontVariant v) noexcept;

struct FrontSample {
  double xi_rho = 0; // pm
  double xi3 = 0;    // pm
};

struct FrontContour {
  double gouy_level = 0; // rad
  FrontVariant variant = FrontVariant::paraxial;
  std::vector<FrontSample> samples; // ascending xi_rho

  // Non-paraxial only.  A front of level != 0 meets the waist plane at
  // xi_rho = |A|/k0 and has no point beyond it; grid points there are
  // omitted and counted here.
  double waist_crossing_rho = 0; // pm, +inf for paraxial fronts
  std::size_t omitted = 0;
  std::size_t bisection_fallbacks = 0;
};

/// xi3 = xi_R tan(level) for every radius.  Throws DomainError unless
/// |level| < pi/2.
FrontContour front_paraxial(const BeamParameters& params, double gouy_level, std::span<const double> rho_grid);

/// Solves k3 xi3 + k0 sign(xi3) sqrt(xi3^2 + xi_rho^2) = A with
/// A = tan(level) xi_R (k3 + k0) in closed form; samples whose
/// substituted level misses by more than 1e-9 rad are re-solved by
/// bisection.  Throws DomainError for |level| >= pi/2 or for level 0 with
/// any off-axis radius (the phase jumps across the waist plane there).
FrontContour front_nonparaxial(const BeamParameters& params, double gouy_level, std::span<const double> rho_grid);

/// Independent root by bisection on the branch sign(xi3) = sign(level),
/// where the left side is strictly monotone.  Empty when no root exists.
std::optional<double> front_root_bisection(const BeamParameters& params, double gouy_level, double xi_rho);

/// Levels inside this distance of 0 are skipped by fig1_dataset.
inline constexpr double kWaistLevelExclusion = 0.01;

/// {+-pi/3, +-pi/4, +-pi/6, +-pi/12}, descending.
std::vector<double> default_front_levels();

/// n_rho uniform radii on [0, rho_max].
std::vector<double> uniform_rho_grid(double rho_max, std::size_t n_rho);

/// Paraxial then non-paraxial contour for each admissible level, in input
/// order.
std::vector<FrontContour> fig1_dataset(const BeamParameters& params, std::span<const double> levels,
                                       double rho_max, std::size_t n_rho);

} // namespace bhg
