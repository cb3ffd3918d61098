#include "bhg/phasefronts.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bhg/errors.hpp"
#include "bhg/kernels.hpp"
#include "bhg/parallel.hpp"
#include "bhg/scalar_modes.hpp"

namespace bhg {

namespace {

void check_level(double level) {
  if (!std::isfinite(level) || !(std::abs(level) < std::numbers::pi / 2))
    throw DomainError("Gouy level must lie in (-pi/2, pi/2)");
}

double level_term(const BeamParameters& P, double level) {
  return std::tan(level) * P.rayleigh_range * (P.k3 + P.k0);
}

// Left side minus A on the branch sign(xi3) = sign(A).
double front_residual(const BeamParameters& P, double a, double xi3, double rho) {
  return P.k3 * xi3 + P.k0 * std::copysign(std::hypot(xi3, rho), xi3) - a;
}

constexpr double kLevelTolerance = 1e-9;

} // namespace

std::string_view variant_name(FrontVariant v) noexcept {
  return v == FrontVariant::paraxial ? "paraxial" : "nonparaxial";
}

FrontContour front_paraxial(const BeamParameters& params, double gouy_level, std::span<const double> rho_grid) {
  check_level(gouy_level);
  FrontContour c;
  c.gouy_level = gouy_level;
  c.variant = FrontVariant::paraxial;
  c.waist_crossing_rho = std::numeric_limits<double>::infinity();
  const double xi3 = params.rayleigh_range * std::tan(gouy_level);
  c.samples.reserve(rho_grid.size());
  for (double r : rho_grid) c.samples.push_back({r, xi3});
  return c;
}

std::optional<double> front_root_bisection(const BeamParameters& params, double gouy_level, double xi_rho) {
  check_level(gouy_level);
  const double a = level_term(params, gouy_level);
  if (a == 0.0) return xi_rho == 0.0 ? std::optional<double>(0.0) : std::nullopt;
  const double sign = a > 0 ? 1.0 : -1.0;
  // On the branch the left side runs from sign*k0*rho (xi3 -> 0) outward and
  // passes |A| before |xi3| = |A|/k3.
  if (params.k0 * xi_rho >= std::abs(a)) return std::nullopt;
  double lo = 0.0;
  double hi = std::min(std::abs(a) / params.k3, 1e3 * params.rayleigh_range);
  if (sign * front_residual(params, a, sign * hi, xi_rho) < 0) return std::nullopt;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sign * front_residual(params, a, sign * mid, xi_rho) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return sign * 0.5 * (lo + hi);
}

FrontContour front_nonparaxial(const BeamParameters& params, double gouy_level, std::span<const double> rho_grid) {
  check_level(gouy_level);
  FrontContour c;
  c.gouy_level = gouy_level;
  c.variant = FrontVariant::nonparaxial;
  const double a = level_term(params, gouy_level);
  if (a == 0.0) {
    for (double r : rho_grid)
      if (r != 0.0) throw DomainError("level 0 has no front off axis: the phase jumps across the waist plane");
    c.waist_crossing_rho = 0.0;
    for (double r : rho_grid) c.samples.push_back({r, 0.0});
    return c;
  }
  c.waist_crossing_rho = std::abs(a) / params.k0;

  std::vector<double> roots(rho_grid.size());
  kernels::front_roots(params.k0, params.k3, a, rho_grid, roots);
  const ModeIndex base{0, 0};
  c.samples.reserve(rho_grid.size());
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    const double r = rho_grid[i];
    double x = roots[i];
    if (std::isnan(x)) {
      ++c.omitted;
      continue;
    }
    const double back = gouy_nonparaxial(params, base, x, r).phase;
    if (!(std::abs(back - gouy_level) <= kLevelTolerance)) {
      const auto b = front_root_bisection(params, gouy_level, r);
      if (!b) throw NumericalFailure("no admissible front root at xi_rho = " + std::to_string(r) + " pm");
      x = *b;
      ++c.bisection_fallbacks;
    }
    c.samples.push_back({r, x});
  }
  return c;
}

std::vector<double> default_front_levels() {
  constexpr double pi = std::numbers::pi;
  return {pi / 3, pi / 4, pi / 6, pi / 12, -pi / 12, -pi / 6, -pi / 4, -pi / 3};
}

std::vector<double> uniform_rho_grid(double rho_max, std::size_t n_rho) {
  if (!(rho_max >= 0.0) || !std::isfinite(rho_max)) throw DomainError("rho_max must be finite and >= 0");
  std::vector<double> grid(n_rho);
  for (std::size_t i = 0; i < n_rho; ++i)
    grid[i] = n_rho == 1 ? 0.0 : rho_max * static_cast<double>(i) / static_cast<double>(n_rho - 1);
  return grid;
}

std::vector<FrontContour> fig1_dataset(const BeamParameters& params, std::span<const double> levels,
                                       double rho_max, std::size_t n_rho) {
  std::vector<double> kept;
  for (double level : levels) {
    check_level(level);
    if (std::abs(level) >= kWaistLevelExclusion) kept.push_back(level);
  }
  const auto grid = uniform_rho_grid(rho_max, n_rho);
  std::vector<FrontContour> out(2 * kept.size());
  parallel_for(kept.size(), [&](std::size_t i) {
    out[2 * i] = front_paraxial(params, kept[i], grid);
    out[2 * i + 1] = front_nonparaxial(params, kept[i], grid);
  });
  return out;
}

} // namespace bhg
