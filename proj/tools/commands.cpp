#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "CLI11.hpp"
#include "bhg/detail/field_eval.hpp"
#include "bhg/errors.hpp"
#include "bhg/parallel.hpp"
#include "bhg/phasefronts.hpp"
#include "bhg/spinor_field.hpp"

namespace bhg::cli {

namespace {

using cplx = std::complex<double>;

std::string_view spin_name(Spin s) { return s == Spin::up ? "up" : "down"; }

// Residual checks use this step (in units of w0) with one Richardson level;
// the convergence-order probe uses plain central differences at h and h/2.
constexpr double kResidualStep = 1e-3;
constexpr double kOrderStep = 2e-2;

} // namespace

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec q;
  q.radial_nodes = quad_nodes;
  q.validate();
  return q;
}

BeamParameters RunConfig::beam() const {
  return derive_parameters({Energy(kinetic_energy), Length(waist), spin});
}

void write_provenance(std::ostream& os, const RunConfig& cfg, const std::string& command) {
  const auto k = constants_codata();
  const auto q = cfg.quadrature();
  os << fmt::format("# bhg {}\n", kVersion);
  os << fmt::format("# command = {}\n", command);
  os << fmt::format("# spin = {}\n", spin_name(cfg.spin));
  os << fmt::format("# electron_rest_energy_keV = {}\n", k.electron_rest_energy);
  os << fmt::format("# hbar_c_keV_pm = {}\n", k.hbar_c);
  os << fmt::format("# reduced_compton_wavelength_pm = {}\n", k.reduced_compton_wavelength);
  os << fmt::format(
      "# quadrature = gauss-legendre radial_nodes {} (checked against {}), cutoff {} |w}}, azimuthal_points {}, "
      "abs_tol {}, rel_tol {}\n",
      q.radial_nodes, 2 * q.radial_nodes, q.cutoff_factor, q.azimuthal_points, q.abs_tol, q.rel_tol);
  os << fmt::format("# seed = {}\n", cfg.seed);
}

// ---------------------------------------------------------------------------

void write_fig1(std::ostream& os, const RunConfig& cfg) {
  const auto P = cfg.beam();
  const auto levels = cfg.levels.empty() ? default_front_levels() : cfg.levels;
  const double rho_max = cfg.rho_max > 0 ? cfg.rho_max : 6.0 * P.w0;
  const auto contours = fig1_dataset(P, levels, rho_max, static_cast<std::size_t>(cfg.n_rho));

  write_provenance(os, cfg, "fig1");
  os << fmt::format("# kinetic_energy_keV = {}\n# waist_pm = {}\n", P.kinetic_energy, P.w0);
  os << fmt::format("# rayleigh_range_pm = {}\n", P.rayleigh_range);
  os << "# levels_rad =";
  for (double l : levels) os << fmt::format(" {}", l);
  os << fmt::format("\n# excluded: |level| < {} rad\n", kWaistLevelExclusion);
  os << fmt::format("# rho grid = uniform [0, {}] pm, {} points\n", rho_max, cfg.n_rho);
  for (const auto& c : contours) {
    if (c.variant != FrontVariant::nonparaxial || c.omitted == 0) continue;
    os << fmt::format("# level {}: front meets the waist plane at xi_rho = {} pm; {} grid points beyond omitted\n",
                      c.gouy_level, c.waist_crossing_rho, c.omitted);
  }
  os << "variant,gouy_level_rad,xi_rho_pm,xi3_pm\n";
  for (const auto& c : contours)
    for (const auto& s : c.samples)
      os << fmt::format("{},{},{},{}\n", variant_name(c.variant), c.gouy_level, s.xi_rho, s.xi3);
}

void write_fig2(std::ostream& os, const RunConfig& cfg, double kinetic_energy) {
  if (cfg.theta_grid < 1) throw DomainError("theta grid needs at least one point");
  const auto q = cfg.quadrature();
  write_provenance(os, cfg, "fig2");
  os << fmt::format("# kinetic_energy_keV = {}\n", kinetic_energy);
  os << fmt::format("# theta_D grid = (0, pi/2], {} points, theta_i = (i+1)/n * pi/2\n", cfg.theta_grid);
  os << "# S3/L3/J3 and Delta_direct from the two-term field; Delta_eq16 is the divergence route (1 - mc^2/E) sin^2(theta_D)\n";
  os << "theta_D_rad,w0_pm,S3_hbar,L3_hbar,J3_hbar,Delta_eq16,Delta_direct,berry_phase_rad,"
        "gouy_shift_paper_rad,gouy_shift_computed_rad\n";
  for (int i = 0; i < cfg.theta_grid; ++i) {
    const double theta = (i + 1.0) / cfg.theta_grid * (std::numbers::pi / 2);
    const auto sol = waist_for_divergence(Energy(kinetic_energy), Angle(theta), cfg.spin);
    const auto& P = sol.params;
    const auto am = angular_momenta(P, FieldForm::truncated, 0.0, q);
    const auto shift = gouy_total_shift(P, q);
    os << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", theta, sol.w0, am.s3, am.l3, am.j3,
                      soi_term(P, SoiRoute::divergence), am.l3 / P.s(), berry_phase(P), shift.from_berry,
                      shift.computed);
  }
}

void write_observables(std::ostream& csv, std::ostream& text, const RunConfig& cfg) {
  const auto P = cfg.beam();
  const auto r = observe(P, cfg.quadrature());
  const double mc2 = constants_codata().electron_rest_energy;
  const double e2 = r.energy * r.energy;
  const double e2_pieces = r.p_rho_sq + r.p_mu[3] * r.p_mu[3] + mc2 * mc2;

  write_provenance(csv, cfg, "observables");
  csv << fmt::format("# kinetic_energy_keV = {}\n# waist_pm = {}\n", P.kinetic_energy, P.w0);
  csv << "# p_mu, E, p_rho_sq, j_mu, gouy ratio from the three-term field; S3/L3/J3, Delta_direct from the "
         "two-term field\n";
  const bool semi_rel_outside = 1.0 / (P.mass * P.w0) > 0.1;
  if (semi_rel_outside) csv << "# warning: hbar/(m c w0) > 0.1, Delta_eq17 is outside its semi-relativistic regime\n";
  csv << "kinetic_energy_keV,waist_pm,spin,j0,j3,p0_keV,p1_keV,p2_keV,p3_keV,E_total_keV,p_rho_sq_keV2,"
         "p_rho_sq_closed_keV2,S3_hbar,L3_hbar,J3_hbar,Delta_eq16,Delta_eq17,Delta_direct,Delta_direct_closed,"
         "berry_phase_rad,gouy_expected_ratio,gouy_expected_ratio_closed,gouy_total_shift_rad,"
         "gouy_total_shift_closed_rad,truncation_defect,truncation_defect_closed\n";
  csv << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                     P.kinetic_energy, P.w0, spin_name(P.spin), r.current[0], r.current[3], r.p_mu[0], r.p_mu[1],
                     r.p_mu[2], r.p_mu[3], r.energy, r.p_rho_sq, r.p_rho_sq_closed, r.momenta.s3, r.momenta.l3,
                     r.momenta.j3, r.delta_divergence, r.delta_semi_relativistic, r.delta_direct,
                     r.delta_direct_closed, r.berry_phase, r.gouy.computed_ratio, r.gouy.closed_form_ratio,
                     r.gouy_shift.computed, r.gouy_shift.from_berry, r.truncation_defect,
                     r.truncation_defect_closed);

  auto row = [&](std::string_view name, double quad, double closed) {
    const double ratio = closed != 0.0 ? quad / closed : std::nan("");
    text << fmt::format("{:<28} {:>22.15g} {:>22.15g} {:>18.12g}\n", name, quad, closed, ratio);
  };
  text << fmt::format("beam: {} keV, w0 = {} pm, spin {}\n", P.kinetic_energy, P.w0, spin_name(P.spin));
  text << fmt::format("{:<28} {:>22} {:>22} {:>18}\n", "quantity", "computed", "closed form", "ratio");
  row("<j0>", r.current[0], 1.0);
  row("<j3>", r.current[3], P.k3 / P.k0);
  row("p0 c [keV]", r.p_mu[0], r.p_mu_closed[0]);
  row("p3 c [keV]", r.p_mu[3], r.p_mu_closed[3]);
  row("E^2 [keV^2]", e2, e2_pieces);
  row("p_rho^2 c^2 [keV^2]", r.p_rho_sq, r.p_rho_sq_closed);
  row("p_rho^2 scalar mode", r.p_rho_sq_scalar, r.p_rho_sq_closed);
  row("S3 [hbar]", r.momenta.s3, P.s() * (1.0 - r.delta_direct_closed));
  row("L3 [hbar]", r.momenta.l3, P.s() * r.delta_direct_closed);
  row("J3 [hbar]", r.momenta.j3, P.s());
  row("Delta_direct", r.delta_direct, r.delta_direct_closed);
  row("Delta divergence / direct", r.delta_divergence / r.delta_direct,
      2.0 * (1.0 + 2.0 / (P.w0 * P.w0 * P.k3 * P.k3)));
  row("Delta semi-rel vs divergence", r.delta_semi_relativistic, r.delta_divergence);
  row("gouy ratio", r.gouy.computed_ratio, r.gouy.closed_form_ratio);
  row("gouy total shift [rad]", r.gouy_shift.computed, r.gouy_shift.from_berry);
  row("berry phase [rad]", r.berry_phase, 2.0 * std::numbers::pi * r.delta_divergence * P.s());
  row("truncation defect", r.truncation_defect, r.truncation_defect_closed);
  if (semi_rel_outside) text << "warning: hbar/(m c w0) > 0.1, Delta_eq17 is outside its semi-relativistic regime\n";
}

void write_field(std::ostream& os, const RunConfig& cfg) {
  const auto P = cfg.beam();
  if (cfg.n_rho < 0 || cfg.n_xi3 < 0) throw DomainError("grid point counts must be non-negative");
  const double rho_max = cfg.rho_max > 0 ? cfg.rho_max : 3.0 * P.w0;
  double lo = cfg.xi3_min;
  double hi = cfg.xi3_max;
  if (lo == hi && lo == 0.0) {
    lo = -2.0 * P.rayleigh_range;
    hi = 2.0 * P.rayleigh_range;
  }
  const auto rho = uniform_rho_grid(rho_max, static_cast<std::size_t>(cfg.n_rho));
  std::vector<double> xi3(static_cast<std::size_t>(cfg.n_xi3));
  for (std::size_t i = 0; i < xi3.size(); ++i)
    xi3[i] = xi3.size() == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(xi3.size() - 1);

  write_provenance(os, cfg, "field");
  os << fmt::format("# kinetic_energy_keV = {}\n# waist_pm = {}\n", P.kinetic_energy, P.w0);
  os << fmt::format("# grid: xi_rho uniform [0, {}] pm x {}, xi3 uniform [{}, {}] pm x {}, xi_phi = {} rad, "
                    "xi0 = 0\n",
                    rho_max, rho.size(), lo, hi, xi3.size(), cfg.phi);
  os << "# components in the Dirac representation, pm^-1; j0 in pm^-2\n";
  os << "xi_rho_pm,xi3_pm,re_psi1,im_psi1,re_psi2,im_psi2,re_psi3,im_psi3,re_psi4,im_psi4,j0\n";

  std::vector<std::string> rows(xi3.size());
  parallel_for(xi3.size(), [&](std::size_t i) {
    std::string block;
    for (double r : rho) {
      const auto point = make_beam_point(r, cfg.phi, xi3[i], 0.0);
      const auto psi = bispinor_exact(P, point, to_lab(point));
      block += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r, xi3[i], psi.c[0].real(), psi.c[0].imag(),
                           psi.c[1].real(), psi.c[1].imag(), psi.c[2].real(), psi.c[2].imag(), psi.c[3].real(),
                           psi.c[3].imag(), psi.density());
    }
    rows[i] = std::move(block);
  });
  for (const auto& b : rows) os << b;
}

// ---------------------------------------------------------------------------
// verify

namespace {

std::vector<BeamPoint> seeded_points(const BeamParameters& P, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rho(0.0, 2.0 * P.w0);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> axial(-2.0 * P.rayleigh_range, 2.0 * P.rayleigh_range);
  std::uniform_real_distribution<double> time(-P.rayleigh_range, P.rayleigh_range);
  std::vector<BeamPoint> pts;
  for (int i = 0; i < count; ++i) {
    const double r = rho(rng), f = phi(rng), z = axial(rng), t = time(rng);
    pts.push_back(make_beam_point(r, f, z, t));
  }
  return pts;
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string sci(double v) { return fmt::format("{:.3e}", v); }

} // namespace

std::vector<CheckResult> run_verify(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  const auto q = cfg.quadrature();
  const auto P = cfg.beam();
  RunConfig other_cfg = cfg;
  other_cfg.spin = cfg.spin == Spin::up ? Spin::down : Spin::up;
  const auto P_other = other_cfg.beam();
  const auto points = seeded_points(P, cfg.seed, cfg.verify_points);
  const double w0 = P.w0;

  auto perturbed = [&](BeamParameters p) {
    // Mutation self-test: move the plane-wave four-vector off the mass shell.
    if (cfg.inject_off_shell) p.k0_prime *= 1.01;
    return p;
  };

  for (const auto& beam : {P, P_other}) {
    const auto Pd = perturbed(beam);
    double worst = 0;
    for (const auto& pt : points)
      worst = std::max(worst, pde_residual(Pd, WaveEquation::dirac, pt, kResidualStep * w0));
    out.push_back({fmt::format("dirac residual, spin {}", spin_name(beam.spin)), worst < 1e-6,
                   fmt::format("max {} over {} points (limit 1e-6)", sci(worst), points.size())});
  }
  {
    const auto Pd = perturbed(P);
    double worst = 0;
    for (const auto& pt : points)
      worst = std::max(worst, pde_residual(Pd, WaveEquation::klein_gordon, pt, kResidualStep * w0));
    out.push_back({"klein-gordon residual, (0,0) mode", worst < 1e-6,
                   fmt::format("max {} over {} points (limit 1e-6)", sci(worst), points.size())});
  }
  {
    const auto Pd = perturbed(P);
    double lo = 1e300, hi = -1e300;
    const std::size_t probes = std::min<std::size_t>(points.size(), 3);
    for (std::size_t i = 0; i < probes; ++i) {
      for (auto eq : {WaveEquation::dirac, WaveEquation::klein_gordon}) {
        const double r1 = pde_residual(Pd, eq, points[i], kOrderStep * w0, false);
        const double r2 = pde_residual(Pd, eq, points[i], 0.5 * kOrderStep * w0, false);
        const double order = std::log2(r1 / r2);
        lo = std::min(lo, order);
        hi = std::max(hi, order);
      }
    }
    out.push_back({"finite-difference convergence order", probes > 0 && lo >= 1.9 && hi <= 2.1,
                   fmt::format("observed orders in [{:.4f}, {:.4f}] (expected 2 +- 0.1)", lo, hi)});
  }
  {
    // Gram matrix of the three Laguerre-Gauss modes the bi-spinor is built from.
    const ModeIndex modes[3] = {mode_of(ModeTerm::psi00, P.spin), mode_of(ModeTerm::psi01, P.spin),
                                mode_of(ModeTerm::psi10, P.spin)};
    const auto g = expect_transverse(
        [&](double x, double y, std::span<double> o) {
          cplx f[3];
          for (int k = 0; k < 3; ++k) f[k] = detail::lg_mode<cplx>(P, modes[k], x, y, 0.0);
          int n = 0;
          for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) {
              const cplx v = std::conj(f[a]) * f[b];
              o[n++] = v.real();
              o[n++] = v.imag();
            }
        },
        12, P, 0.0, q);
    double worst = 0;
    int n = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b, n += 2)
        worst = std::max(worst, std::hypot(g[n] - (a == b ? 1.0 : 0.0), g[n + 1]));
    out.push_back({"mode orthonormality", worst < 1e-10, fmt::format("max |G - I| = {}", sci(worst))});
  }

  const double planes[3] = {-5.0 * P.rayleigh_range, 0.0, 5.0 * P.rayleigh_range};
  {
    double worst_j0 = 0, worst_j3t = 0, worst_j3e = 0;
    const double j3_exact = 2.0 * P.c_norm * P.c_norm * (P.b * P.k3 - P.kappa * P.kappa);
    for (double u : planes) {
      const auto je = current_expectation(P, FieldForm::exact, u, q);
      const auto jt = current_expectation(P, FieldForm::truncated, u, q);
      worst_j0 = std::max({worst_j0, std::abs(je[0] - 1.0), std::abs(jt[0] - 1.0)});
      worst_j3t = std::max(worst_j3t, rel_gap(jt[3], P.k3 / P.k0));
      worst_j3e = std::max(worst_j3e, rel_gap(je[3], j3_exact));
    }
    out.push_back({"normalization <j0> = 1", worst_j0 < 1e-8, fmt::format("max |<j0> - 1| = {}", sci(worst_j0))});
    out.push_back({"two-term field <j3> = k3/k0", worst_j3t < 1e-8,
                   fmt::format("max relative gap {}", sci(worst_j3t))});
    out.push_back({"three-term field <j3> = 2C^2(b k3 - kappa^2)", worst_j3e < 1e-8,
                   fmt::format("max relative gap {}", sci(worst_j3e))});
  }
  {
    double worst = 0;
    for (const auto& beam : {P, P_other})
      for (auto form : {FieldForm::truncated, FieldForm::exact})
        worst = std::max(worst, std::abs(angular_momenta(beam, form, 0.0, q).j3 - beam.s()));
    out.push_back({"total angular momentum S3 + L3 = s", worst < 1e-10,
                   fmt::format("max |J3 - s| = {} (both spins, both field forms)", sci(worst))});
  }
  {
    std::vector<std::array<double, 4>> rows;
    for (double u : planes) {
      const auto am = angular_momenta(P, FieldForm::truncated, u, q);
      rows.push_back({current_expectation(P, FieldForm::exact, u, q)[0], am.s3, am.l3,
                      radial_momentum_sq(P, FieldForm::exact, u, q)});
    }
    double worst = 0;
    for (int k = 0; k < 4; ++k)
      for (const auto& r : rows) worst = std::max(worst, rel_gap(r[k], rows[1][k]));
    out.push_back({"plane independence", worst < 1e-8,
                   fmt::format("max relative spread {} over xi3+xi0 in {{-5, 0, 5}} xi_R", sci(worst))});
  }
  {
    const auto p = four_momentum(P, FieldForm::exact, 0.0, q);
    const double prho = radial_momentum_sq(P, FieldForm::exact, 0.0, q);
    const double gap = rel_gap(p.p0 * p.p0, prho + p.p3 * p.p3 + P.mass * P.mass);
    out.push_back({"energy relation E^2 = p_rho^2 + p3^2 + m^2", gap < 1e-8, fmt::format("relative gap {}", sci(gap))});
  }
  {
    const double quad = soi_term(P, SoiRoute::quadrature, q);
    const double gap = rel_gap(quad, soi_direct_closed_form(P));
    out.push_back({"<L3>/s against 4 C^2 / w0^2", gap < 1e-8, fmt::format("relative gap {}", sci(gap))});
  }
  {
    const double defect = truncation_defect(P, 0.0, q);
    const double gap = rel_gap(defect, truncation_share(P));
    out.push_back({"truncation defect against 2 kappa^2 C^2", gap < 0.05,
                   fmt::format("quadrature {} closed {} (relative gap {})", sci(defect), sci(truncation_share(P)),
                               sci(gap))});
  }
  {
    const auto levels = cfg.levels.empty() ? default_front_levels() : cfg.levels;
    const auto grid = uniform_rho_grid(6.0 * P.w0, 512);
    double worst_root = 0, worst_axis = 0, worst_level = 0;
    for (double level : levels) {
      if (std::abs(level) < kWaistLevelExclusion) continue;
      const auto c = front_nonparaxial(P, level, grid);
      for (const auto& s : c.samples) {
        const auto b = front_root_bisection(P, level, s.xi_rho);
        worst_root = std::max(worst_root, b ? std::abs(*b - s.xi3) / P.rayleigh_range : INFINITY);
        worst_level = std::max(worst_level, std::abs(gouy_nonparaxial(P, {0, 0}, s.xi3, s.xi_rho).phase - level));
      }
      if (!c.samples.empty())
        worst_axis = std::max(worst_axis,
                              std::abs(c.samples.front().xi3 - P.rayleigh_range * std::tan(level)) / P.rayleigh_range);
    }
    out.push_back({"front roots: closed form against bisection", worst_root < 1e-10,
                   fmt::format("max gap {} xi_R", sci(worst_root))});
    out.push_back({"front on axis equals paraxial", worst_axis < 1e-12, fmt::format("max gap {} xi_R", sci(worst_axis))});
    out.push_back({"front level by substitution", worst_level < 1e-9,
                   fmt::format("max level error {} rad", sci(worst_level))});
  }
  return out;
}

bool print_verify(std::ostream& os, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    os << fmt::format("[{}] {:<46} {}\n", c.pass ? "PASS" : "FAIL", c.name, c.detail);
    all = all && c.pass;
  }
  os << fmt::format("{} of {} checks passed\n",
                    std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.pass; }),
                    checks.size());
  return all;
}

// ---------------------------------------------------------------------------

namespace {

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open output file " + path);
  return file;
}

std::string energy_suffixed(const std::string& path, double energy) {
  std::filesystem::path p(path);
  const std::string name = fmt::format("{}_{}keV{}", p.stem().string(), energy, p.extension().string());
  return (p.parent_path() / name).string();
}

} // namespace

int run(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Gaussian Dirac electron beams: figure data, observables and self-verification", "bhg"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "plain 'key = value' file mirroring the long flags");
  std::string spin = "up";
  app.add_option("--kinetic-energy", cfg.kinetic_energy, "kinetic energy [keV]");
  app.add_option("--waist", cfg.waist, "beam waist w0 [pm]");
  app.add_option("--spin", spin, "spin projection")->check(CLI::IsMember({"up", "down"}));
  app.add_option("--levels", cfg.levels, "Gouy levels [rad], comma separated")->delimiter(',');
  app.add_option("--theta-grid", cfg.theta_grid, "divergence-angle samples on (0, pi/2]");
  app.add_option("--rho-max", cfg.rho_max, "largest xi_rho [pm] (default 6 w0 for fig1, 3 w0 for field)");
  app.add_option("--n-rho", cfg.n_rho, "xi_rho grid points");
  app.add_option("--n-xi3", cfg.n_xi3, "xi3 grid points (field)");
  app.add_option("--xi3-min", cfg.xi3_min, "smallest xi3 [pm] (field; default -2 xi_R)");
  app.add_option("--xi3-max", cfg.xi3_max, "largest xi3 [pm] (field; default +2 xi_R)");
  app.add_option("--phi", cfg.phi, "azimuth of the field plane [rad]");
  app.add_option("--out", cfg.out, "output path, '-' for stdout");
  app.add_option("--seed", cfg.seed, "seed for verification points");
  app.add_option("--verify-points", cfg.verify_points, "number of seeded residual points");
  app.add_option("--quad-nodes", cfg.quad_nodes, "radial Gauss-Legendre nodes");
  app.add_flag("--inject-off-shell", cfg.inject_off_shell, "verify: inflate k0' by 1% (self-test)");

  struct Sub {
    const char* name;
    const char* help;
    Command cmd;
  };
  const Sub subs[] = {{"fig1", "Gouy phase-front contours", Command::fig1},
                      {"fig2", "angular momenta and phases over the divergence angle", Command::fig2},
                      {"observables", "expectation values of one beam", Command::observables},
                      {"field", "bi-spinor samples on a (xi_rho, xi3) grid", Command::field},
                      {"verify", "run the self-verification suite", Command::verify}};
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->callback([&cfg, c = s.cmd] { cfg.command = c; });
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.spin = spin == "down" ? Spin::down : Spin::up;
  cfg.kinetic_energy_set = app.count("--kinetic-energy") > 0;
  cfg.out_set = app.count("--out") > 0;

  try {
    cfg.quadrature();
    if (cfg.verify_points < 1) throw DomainError("--verify-points must be at least 1");
    if (cfg.n_rho < 0 || cfg.n_xi3 < 0) throw DomainError("grid point counts must be non-negative");
    if (cfg.command != Command::fig2 && cfg.command != Command::verify) cfg.beam();

    std::ofstream file;
    switch (cfg.command) {
      case Command::fig1: write_fig1(open_output(cfg.out, file), cfg); break;
      case Command::fig2: {
        const std::vector<double> energies =
            cfg.kinetic_energy_set ? std::vector<double>{cfg.kinetic_energy} : cfg.fig2_energies;
        const std::string out = cfg.out_set ? cfg.out : "fig2.csv";
        if (energies.size() > 1 && out == "-") throw DomainError("fig2 over several energies needs --out <file>");
        for (double e : energies) {
          std::ofstream f;
          write_fig2(open_output(energies.size() > 1 ? energy_suffixed(out, e) : out, f), cfg, e);
        }
        break;
      }
      case Command::observables: {
        auto& os = open_output(cfg.out, file);
        write_observables(os, cfg.out == "-" ? std::cerr : std::cout, cfg);
        break;
      }
      case Command::field: write_field(open_output(cfg.out, file), cfg); break;
      case Command::verify: {
        cfg.beam();
        auto& os = open_output(cfg.out, file);
        return print_verify(os, run_verify(cfg)) ? 0 : 1;
      }
    }
    if (file.is_open()) {
      file.flush();
      if (!file) throw NumericalFailure("failed writing " + cfg.out);
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "bhg: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    // DomainError, WaistBelowCritical and I/O problems are configuration errors.
    std::cerr << "bhg: invalid configuration: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

} // namespace bhg::cli
