#include "bhg/observables.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "bhg/detail/field_eval.hpp"
#include "bhg/errors.hpp"
#include "bhg/kernels.hpp"
#include "bhg/parallel.hpp"

namespace bhg {

using cplx = std::complex<double>;

void QuadratureSpec::validate() const {
  if (radial_nodes < 16) throw DomainError("quadrature needs at least 16 radial nodes");
  if (!(cutoff_factor >= 5.0)) throw DomainError("quadrature cutoff must be at least 5 |w|");
  if (azimuthal_points < 4) throw DomainError("quadrature needs at least 4 azimuthal points");
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) throw DomainError("quadrature tolerances must be non-negative");
}

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double abs_w(const BeamParameters& P, double plane) {
  return P.w0 * std::sqrt(1.0 + 4.0 * P.kappa * P.kappa * plane * plane);
}

std::vector<double> integrate_once(const TransverseIntegrand& integrand, std::size_t count, double radius,
                                   int nodes, int azimuths) {
  const auto& rule = gauss_legendre(nodes);
  const std::size_t total = static_cast<std::size_t>(nodes) * azimuths;
  std::vector<double> weights(total);
  std::vector<std::vector<double>> values(count, std::vector<double>(total));
  const double dphi = 2.0 * std::numbers::pi / azimuths;

  parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t i) {
    const double rho = 0.5 * radius * (rule.nodes[i] + 1.0);
    const double wr = 0.5 * radius * rule.weights[i] * rho * dphi;
    std::vector<double> out(count);
    for (int j = 0; j < azimuths; ++j) {
      const double phi = dphi * j;
      const std::size_t at = i * azimuths + j;
      integrand(rho * std::cos(phi), rho * std::sin(phi), out);
      weights[at] = wr;
      for (std::size_t c = 0; c < count; ++c) values[c][at] = out[c];
    }
  });

  std::vector<double> result(count);
  for (std::size_t c = 0; c < count; ++c) result[c] = kernels::compensated_dot(weights, values[c]);
  return result;
}

cplx inner(const BiSpinorValue& a, const BiSpinorValue& b) {
  cplx s{};
  for (int k = 0; k < 4; ++k) s += std::conj(a.c[k]) * b.c[k];
  return s;
}

FourPosition plane_event(double xi1, double xi2, double plane) { return {0.0, xi1, xi2, plane}; }

} // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

std::vector<double> expect_transverse(const TransverseIntegrand& integrand, std::size_t count,
                                      const BeamParameters& params, double plane, const QuadratureSpec& spec) {
  spec.validate();
  const double radius = spec.cutoff_factor * abs_w(params, plane);
  const auto coarse = integrate_once(integrand, count, radius, spec.radial_nodes, spec.azimuthal_points);
  const auto fine = integrate_once(integrand, count, radius, 2 * spec.radial_nodes, spec.azimuthal_points);
  for (std::size_t c = 0; c < count; ++c) {
    const double diff = std::abs(fine[c] - coarse[c]);
    if (!(diff <= spec.abs_tol + spec.rel_tol * std::abs(fine[c]))) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "transverse quadrature did not converge: component " << c << ", N=" << spec.radial_nodes
          << " gives " << coarse[c] << ", 2N gives " << fine[c] << " (|diff| " << diff << ")";
      throw NumericalFailure(msg.str());
    }
  }
  return fine;
}

// ---------------------------------------------------------------------------

std::array<double, 4> current_expectation(const BeamParameters& params, FieldForm form, double plane,
                                          const QuadratureSpec& spec) {
  const auto v = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const auto j = dirac_current(bispinor_at(params, form, plane_event(x, y, plane)));
        for (int k = 0; k < 4; ++k) out[k] = j[k];
      },
      4, params, plane, spec);
  return {v[0], v[1], v[2], v[3]};
}

FourMomentum four_momentum(const BeamParameters& params, FieldForm form, double plane, const QuadratureSpec& spec) {
  const auto v = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const FourPosition at = plane_event(x, y, plane);
        const auto psi = bispinor_at(params, form, at);
        const FourPosition dirs[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
        for (int k = 0; k < 4; ++k) {
          const cplx d = inner(psi, bispinor_derivative(params, form, at, dirs[k]));
          // i d_t for the energy, -i d_k for the spatial components.
          out[k] = k == 0 ? -d.imag() : d.imag();
        }
      },
      4, params, plane, spec);
  return {v[0], v[1], v[2], v[3]};
}

double radial_momentum_sq(const BeamParameters& params, FieldForm form, double plane, const QuadratureSpec& spec) {
  const auto v = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const FourPosition at = plane_event(x, y, plane);
        out[0] = bispinor_derivative(params, form, at, {0, 1, 0, 0}).density() +
                 bispinor_derivative(params, form, at, {0, 0, 1, 0}).density();
      },
      1, params, plane, spec);
  return v[0];
}

double radial_momentum_sq_scalar(const BeamParameters& params, double plane, const QuadratureSpec& spec) {
  const auto v = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const detail::Coords<Jet> cx{Jet::variable(0, 0), Jet::variable(x, 1), Jet::variable(y, 0),
                                     Jet::variable(plane, 0), Jet::variable(0, 0), Jet::variable(plane, 0)};
        const detail::Coords<Jet> cy{Jet::variable(0, 0), Jet::variable(x, 0), Jet::variable(y, 1),
                                     Jet::variable(plane, 0), Jet::variable(0, 0), Jet::variable(plane, 0)};
        const Jet fx = detail::lg_mode(params, {0, 0}, cx.xi1, cx.xi2, cx.xi3 + cx.xi0);
        const Jet fy = detail::lg_mode(params, {0, 0}, cy.xi1, cy.xi2, cy.xi3 + cy.xi0);
        out[0] = std::norm(fx.d) + std::norm(fy.d);
      },
      1, params, plane, spec);
  return v[0];
}

AngularMomenta angular_momenta(const BeamParameters& params, FieldForm form, double plane,
                               const QuadratureSpec& spec) {
  const auto v = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const FourPosition at = plane_event(x, y, plane);
        const auto psi = bispinor_at(params, form, at);
        out[0] = 0.5 * (std::norm(psi.c[0]) - std::norm(psi.c[1]) + std::norm(psi.c[2]) - std::norm(psi.c[3]));
        // -i (x d_y - y d_x): one directional derivative along the azimuth.
        const auto d = bispinor_derivative(params, form, at, {0, -y, x, 0});
        out[1] = inner(psi, d).imag();
      },
      2, params, plane, spec);
  return {v[0], v[1], v[0] + v[1]};
}

double soi_direct_closed_form(const BeamParameters& params) noexcept {
  return 4.0 * params.c_truncated * params.c_truncated / (params.w0 * params.w0);
}

double soi_term(const BeamParameters& params, SoiRoute route, const QuadratureSpec& spec) {
  switch (route) {
    case SoiRoute::divergence:
      return (1.0 - params.mass / params.k0) * params.divergence_sin * params.divergence_sin;
    case SoiRoute::semi_relativistic: {
      const double mw = params.mass * params.w0;
      const double kw = params.k3 * params.w0;
      return 2.0 / (mw * mw) * (1.0 + 2.0 / (kw * kw));
    }
    case SoiRoute::quadrature:
      return angular_momenta(params, FieldForm::truncated, 0.0, spec).l3 / params.s();
  }
  return 0.0;
}

double berry_phase(const BeamParameters& params) noexcept {
  return 2.0 * std::numbers::pi * soi_term(params, SoiRoute::divergence) * params.s();
}

GouyExpectation gouy_expected(const BeamParameters& params, const QuadratureSpec& spec) {
  const double charge = params.spin == Spin::up ? 1.0 : -1.0;
  const auto pop = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const auto env = detail::gaussian_envelopes<cplx>(params, x, y, 0.0, charge);
        out[0] = std::norm(env.f00);
        out[1] = std::norm(env.f01);
        out[2] = std::norm(env.f10);
      },
      3, params, 0.0, spec);
  const auto w = mode_weights(params);
  const double c2 = params.c_norm * params.c_norm;
  GouyExpectation g;
  g.computed_ratio = c2 * (w.w00 * pop[0] * mode_of(ModeTerm::psi00, params.spin).gouy_order() +
                           w.w01 * pop[1] * mode_of(ModeTerm::psi01, params.spin).gouy_order() +
                           w.w10 * pop[2] * mode_of(ModeTerm::psi10, params.spin).gouy_order());
  g.closed_form_ratio = 1.0 + 0.5 * soi_term(params, SoiRoute::divergence);
  return g;
}

GouyShift gouy_total_shift(const BeamParameters& params, const QuadratureSpec& spec) {
  return {std::numbers::pi * gouy_expected(params, spec).computed_ratio,
          std::numbers::pi + 0.5 * std::abs(berry_phase(params))};
}

double truncation_defect(const BeamParameters& params, double plane, const QuadratureSpec& spec) {
  const auto v = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const FourPosition at = plane_event(x, y, plane);
        const auto exact = bispinor_at(params, FieldForm::exact, at);
        out[0] = (exact - bispinor_at(params, FieldForm::truncated, at)).density();
        out[1] = exact.density();
      },
      2, params, plane, spec);
  return v[0] / v[1];
}

ObservableReport observe(const BeamParameters& params, const QuadratureSpec& spec) {
  const double hc = constants_codata().hbar_c;
  ObservableReport r;
  r.params = params;
  r.current = current_expectation(params, FieldForm::exact, 0.0, spec);
  const auto p = four_momentum(params, FieldForm::exact, 0.0, spec);
  r.p_mu = {p.p0 * hc, p.p1 * hc, p.p2 * hc, p.p3 * hc};
  r.p_mu_closed = {params.k0 * hc, 0.0, 0.0, params.k3 * hc};
  r.energy = r.p_mu[0];
  r.energy_closed = params.total_energy;
  r.p_rho_sq = radial_momentum_sq(params, FieldForm::exact, 0.0, spec) * hc * hc;
  r.p_rho_sq_closed = 2.0 / (params.w0 * params.w0) * hc * hc;
  r.p_rho_sq_scalar = radial_momentum_sq_scalar(params, 0.0, spec) * hc * hc;
  r.momenta = angular_momenta(params, FieldForm::truncated, 0.0, spec);
  r.delta_divergence = soi_term(params, SoiRoute::divergence);
  r.delta_semi_relativistic = soi_term(params, SoiRoute::semi_relativistic);
  r.delta_direct = r.momenta.l3 / params.s();
  r.delta_direct_closed = soi_direct_closed_form(params);
  r.berry_phase = berry_phase(params);
  r.gouy = gouy_expected(params, spec);
  r.gouy_shift = {std::numbers::pi * r.gouy.computed_ratio, std::numbers::pi + 0.5 * std::abs(r.berry_phase)};
  r.truncation_defect = truncation_defect(params, 0.0, spec);
  r.truncation_defect_closed = truncation_share(params);
  return r;
}

} // namespace bhg
