#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>

#include "bhg/errors.hpp"
#include "bhg/observables.hpp"

using namespace bhg;
using doctest::Approx;

namespace {

const double pi = std::numbers::pi;

BeamParameters beam(double t, double w, Spin s = Spin::up) { return derive_parameters({Energy(t), Length(w), s}); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("Gauss-Legendre rule") {
  const auto& r5 = gauss_legendre(5);
  CHECK(r5.nodes[4] == Approx(0.9061798459386640).epsilon(1e-15));
  CHECK(r5.nodes[3] == Approx(0.5384693101056831).epsilon(1e-15));
  CHECK(r5.nodes[2] == 0.0);
  CHECK(r5.weights[4] == Approx(0.2369268850561891).epsilon(1e-15));
  CHECK(r5.weights[3] == Approx(0.4786286704993665).epsilon(1e-15));
  CHECK(r5.weights[2] == Approx(0.5688888888888889).epsilon(1e-15));
  for (int n : {16, 64, 512}) {
    const auto& r = gauss_legendre(n);
    double w = 0, m = 0;
    for (int i = 0; i < n; ++i) {
      w += r.weights[i];
      m += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
    }
    CHECK(w == Approx(2.0).epsilon(1e-13));
    CHECK(m == Approx(2.0 / (2 * n - 1)).epsilon(1e-11)); // exact through degree 2n-1
  }
  CHECK(&gauss_legendre(64) == &gauss_legendre(64));
}

TEST_CASE("transverse quadrature of analytic integrands") {
  const auto p = beam(100, 5);
  const double s = 3.0;
  const auto v = expect_transverse(
      [&](double x, double y, std::span<double> out) {
        const double r2 = x * x + y * y;
        out[0] = std::exp(-r2 / (s * s));
        out[1] = x * x * std::exp(-r2 / (s * s));
        out[2] = x * y * std::exp(-r2 / (s * s));
      },
      3, p, 0.0);
  CHECK(v[0] == Approx(pi * s * s).epsilon(1e-13));
  CHECK(v[1] == Approx(pi * s * s * s * s / 2).epsilon(1e-13));
  CHECK(std::abs(v[2]) < 1e-13);
}

TEST_CASE("quadrature reports non-convergence") {
  const auto p = beam(100, 5);
  auto step = [&](double x, double y, std::span<double> out) { out[0] = std::hypot(x, y) < 1.2345 * p.w0 ? 1.0 : 0.0; };
  CHECK_THROWS_AS(expect_transverse(step, 1, p, 0.0), NumericalFailure);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.radial_nodes = 15;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q = {};
  q.cutoff_factor = 4.9;
  CHECK_THROWS_AS(q.validate(), DomainError);
}

TEST_CASE("current normalization") {
  for (double t : {1.0, 100.0, 500.0})
    for (double w : {2.0, 5.0, 50.0, 200.0}) {
      if (w <= critical_waist(Energy(t))) continue; // no real k3
      const auto p = beam(t, w);
      for (double u : {-5 * p.rayleigh_range, 0.0, 5 * p.rayleigh_range}) {
        const auto je = current_expectation(p, FieldForm::exact, u);
        const auto jt = current_expectation(p, FieldForm::truncated, u);
        CHECK(je[0] == Approx(1.0).epsilon(1e-12));
        CHECK(jt[0] == Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(je[1]) < 1e-13);
        CHECK(std::abs(je[2]) < 1e-13);
        CHECK(jt[3] == Approx(p.k3 / p.k0).epsilon(1e-12));
        // Mode-weight algebra: the dropped term pulls the axial current down.
        const double c2 = p.c_norm * p.c_norm;
        CHECK(je[3] == Approx(2 * c2 * (p.b * p.k3 - p.kappa * p.kappa)).epsilon(1e-12));
      }
    }
}

TEST_CASE("four-momentum") {
  const auto p = beam(100, 5);
  const double hc = constants_codata().hbar_c;
  const auto m = four_momentum(p);
  CHECK(std::abs(m.p1) < 1e-13);
  CHECK(std::abs(m.p2) < 1e-13);
  CHECK(m.p0 * hc == Approx(611.0).epsilon(1e-4));
  CHECK(m.p3 * hc == Approx(330.3).epsilon(2e-4));
  // Paraxial structure: p0 = k0' + T/(2K), p3 = k3' - T/(2K), T = <p_rho^2>.
  const double t = radial_momentum_sq(p);
  const double k = p.k0_prime + p.k3_prime;
  CHECK(m.p0 == Approx(p.k0_prime + t / (2 * k)).epsilon(1e-13));
  CHECK(m.p3 == Approx(p.k3_prime - t / (2 * k)).epsilon(1e-13));
  CHECK(rel(m.p0 * m.p0, t + m.p3 * m.p3 + p.mass * p.mass) < 1e-13);
  // The scalar mode reproduces k0 and k3 exactly.
  CHECK(p.k0_prime + radial_momentum_sq_scalar(p) / (2 * k) == Approx(p.k0).epsilon(1e-13));
}

TEST_CASE("radial momentum") {
  for (double w : {2.0, 5.0, 50.0}) {
    const auto p = beam(100, w);
    const double w2 = w * w;
    CHECK(radial_momentum_sq_scalar(p) == Approx(2 / w2).epsilon(1e-12));
    const double c2 = p.c_norm * p.c_norm;
    const double k = p.kappa;
    const double exact = c2 * (2 / w2) * (2 * p.k0 * p.b + 2 / w2 + 6 * k * k + 2 * k * (p.b - p.k3));
    const double truncated = (2 / w2) * (1 + 1 / (w2 * p.k0 * p.b));
    CHECK(radial_momentum_sq(p, FieldForm::exact) == Approx(exact).epsilon(1e-12));
    CHECK(radial_momentum_sq(p, FieldForm::truncated) == Approx(truncated).epsilon(1e-12));
    for (double u : {-5 * p.rayleigh_range, 5 * p.rayleigh_range})
      CHECK(radial_momentum_sq(p, FieldForm::exact, u) == Approx(exact).epsilon(1e-12));
  }
  CHECK(radial_momentum_sq(beam(100, 1e6)) < 1e-11);
}

TEST_CASE("angular momenta") {
  const auto up = beam(100, 5);
  const auto am = angular_momenta(up);
  CHECK(am.l3 == Approx(0.002272).epsilon(2e-4));
  CHECK(am.l3 == Approx(2 * up.c_truncated * up.c_truncated / 25.0).epsilon(1e-12));
  CHECK(am.j3 == Approx(0.5).epsilon(1e-14));
  const auto dn = angular_momenta(beam(100, 5, Spin::down));
  CHECK(dn.s3 == Approx(-am.s3).epsilon(1e-14));
  CHECK(dn.l3 == Approx(-am.l3).epsilon(1e-14));
  CHECK(dn.j3 == Approx(-0.5).epsilon(1e-14));
  const auto ex = angular_momenta(up, FieldForm::exact);
  CHECK(ex.l3 == Approx(2 * up.c_norm * up.c_norm / 25.0).epsilon(1e-12));
  CHECK(std::abs(ex.j3 - 0.5) < 1e-12);
  const auto wide = angular_momenta(beam(100, 1e5));
  CHECK(wide.s3 == Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(wide.l3) < 1e-9);
}

TEST_CASE("spin-orbit routes") {
  const auto p = beam(100, 5);
  CHECK(soi_term(p, SoiRoute::divergence) == Approx(0.009349).epsilon(3e-4));
  CHECK(soi_term(p, SoiRoute::quadrature) == Approx(0.004544).epsilon(1e-4));
  CHECK(soi_term(p, SoiRoute::quadrature) == Approx(soi_direct_closed_form(p)).epsilon(1e-12));
  const double ratio = soi_term(p, SoiRoute::divergence) / soi_term(p, SoiRoute::quadrature);
  CHECK(ratio == Approx(2.057).epsilon(1e-3));
  CHECK(ratio == Approx(2 * (1 + 2 / (25 * p.k3 * p.k3))).epsilon(1e-12));

  const auto low = beam(1, 50);
  CHECK(soi_term(low, SoiRoute::divergence) == Approx(1.2268e-4).epsilon(1e-4));
  CHECK(soi_term(low, SoiRoute::semi_relativistic) == Approx(1.2304e-4).epsilon(1e-4));
  CHECK(soi_term(p, SoiRoute::semi_relativistic) / soi_term(p, SoiRoute::divergence) == Approx(1.31).epsilon(5e-3));

  const auto wide = beam(100, 1e5);
  for (auto r : {SoiRoute::divergence, SoiRoute::semi_relativistic, SoiRoute::quadrature})
    CHECK(soi_term(wide, r) < 1e-8);
}

TEST_CASE("divergence-route term is monotone") {
  double last = 0;
  for (int i = 1; i <= 20; ++i) {
    const auto sol = waist_for_divergence(Energy(100), Angle(i * pi / 40));
    const double d = soi_term(sol.params, SoiRoute::divergence);
    CHECK(d > last);
    last = d;
  }
  last = 0;
  for (double t : {1.0, 10.0, 100.0, 500.0, 2000.0}) {
    const double d = soi_term(waist_for_divergence(Energy(t), Angle(0.3)).params, SoiRoute::divergence);
    CHECK(d > last);
    last = d;
  }
}

TEST_CASE("Berry phase and total Gouy shift") {
  const auto e500 = waist_for_divergence(Energy(500), Angle(pi / 2)).params;
  const auto e100 = waist_for_divergence(Energy(100), Angle(pi / 2)).params;
  CHECK(soi_term(e500, SoiRoute::divergence) == Approx(0.49456).epsilon(1e-5));
  CHECK(soi_term(e100, SoiRoute::divergence) == Approx(0.16367).epsilon(3e-5));
  CHECK(berry_phase(e500) == Approx(1.5537).epsilon(5e-5));
  CHECK(berry_phase(e100) == Approx(0.5142).epsilon(1e-4));
  CHECK(gouy_total_shift(e500).from_berry == Approx(3.918).epsilon(1e-4));
  CHECK(gouy_total_shift(e100).from_berry == Approx(3.399).epsilon(1e-4));
  const auto down = waist_for_divergence(Energy(500), Angle(pi / 2), Spin::down).params;
  CHECK(berry_phase(down) == Approx(-berry_phase(e500)));
  CHECK(gouy_total_shift(down).from_berry == Approx(gouy_total_shift(e500).from_berry));
  const auto wide = beam(100, 1e6);
  CHECK(std::abs(berry_phase(wide)) < 1e-12);
  CHECK(gouy_total_shift(wide).from_berry == Approx(pi));
  CHECK(gouy_total_shift(wide).computed == Approx(pi));
}

TEST_CASE("expected Gouy ratio") {
  const auto p = beam(100, 5);
  const auto g = gouy_expected(p);
  const double c2 = p.c_norm * p.c_norm;
  CHECK(g.computed_ratio == Approx(1 + 4 * p.kappa * p.kappa * c2 + 2 * c2 / 25.0).epsilon(1e-13));
  CHECK(g.computed_ratio == Approx(1.00228).epsilon(1e-5));
  CHECK(g.closed_form_ratio == Approx(1.00467).epsilon(1e-5));
  CHECK(gouy_expected(beam(100, 1e6)).computed_ratio == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("truncation defect") {
  for (double t : {100.0, 500.0}) {
    const auto p = beam(t, 50);
    CHECK(truncation_share(p) < 1e-8);
    CHECK(truncation_defect(p) < 1e-8);
  }
  const auto s1 = beam(100, 5);
  CHECK(truncation_defect(s1) == Approx(truncation_share(s1)).epsilon(0.05));
  CHECK(truncation_share(s1) == Approx(4.0e-6).epsilon(0.01));
}

TEST_CASE("observable report is independent of the worker count") {
  const auto p = beam(100, 5);
  const char* old = std::getenv("BHG_THREADS");
  const std::string saved = old ? old : "";
  setenv("BHG_THREADS", "1", 1);
  const auto a = observe(p);
  setenv("BHG_THREADS", "4", 1);
  const auto b = observe(p);
  if (old) setenv("BHG_THREADS", saved.c_str(), 1); else unsetenv("BHG_THREADS");
  CHECK(std::memcmp(&a.current, &b.current, sizeof a.current) == 0);
  CHECK(std::memcmp(&a.p_mu, &b.p_mu, sizeof a.p_mu) == 0);
  CHECK(a.p_rho_sq == b.p_rho_sq);
  CHECK(a.momenta.l3 == b.momenta.l3);
  CHECK(a.gouy.computed_ratio == b.gouy.computed_ratio);
  CHECK(a.truncation_defect == b.truncation_defect);
}
