#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "bhg/errors.hpp"
#include "bhg/scalar_modes.hpp"

using namespace bhg;
using doctest::Approx;
using cplx = std::complex<double>;

namespace {

const double pi = std::numbers::pi;

BeamParameters s1(Spin s = Spin::up) { return derive_parameters({Energy(100), Length(5), s}); }

cplx phi_at(const BeamParameters& p, ModeIndex m, double x, double y, double u) {
  return phi_lp(p, m, make_beam_point(std::hypot(x, y), std::atan2(y, x), u, 0.0));
}

// Plain trapezoid sum on a square grid; spectrally accurate for Gaussians.
template <class F>
cplx grid_integral(double half_width, int n, F f) {
  const double h = 2.0 * half_width / (n - 1);
  cplx sum{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum += f(-half_width + i * h, -half_width + j * h);
  return sum * h * h;
}

} // namespace

TEST_CASE("complex beam parameter") {
  const auto p = s1();
  CHECK(complex_w(p, 0.0) == cplx(p.w0, 0.0));
  CHECK(std::abs(complex_w(p, 1.0 / (2.0 * p.kappa))) == Approx(p.w0 * std::sqrt(2.0)).epsilon(1e-14));
  // Hand value: 5 sqrt(1 + (2 * 0.0083856 * 100)^2) = 9.7630 pm.
  CHECK(std::abs(complex_w(p, 100.0)) == Approx(9.7630).epsilon(1e-4));
}

TEST_CASE("space-time Gouy phase") {
  const auto p = s1();
  const double u = 1.0 / (2.0 * p.kappa);
  CHECK(gouy_spacetime(p, {0, 0}, 0.0) == 0.0);
  CHECK(gouy_spacetime(p, {0, 0}, u) == Approx(pi / 4).epsilon(1e-14));
  CHECK(gouy_spacetime(p, {1, 1}, u) == Approx(pi).epsilon(1e-14));
  CHECK(ModeIndex{-2, 1}.gouy_order() == 5);
}

TEST_CASE("non-paraxial Gouy phase") {
  const auto p = s1();
  CHECK(gouy_nonparaxial(p, {0, 0}, 0.0, 0.0).phase == 0.0);
  for (double z : {0.3, 5.0, 20.0, 400.0, -60.0})
    CHECK(gouy_nonparaxial(p, {0, 0}, z, 0.0).phase == Approx(gouy_paraxial(p, {0, 0}, z)).epsilon(1e-13));
  const auto g = gouy_nonparaxial(p, {0, 0}, p.rayleigh_range, 20.0);
  CHECK(g.phase > pi / 4);
  CHECK(g.far_field);
  // Brute-force evaluation of the defining expression.
  const double xi_b = std::hypot(p.rayleigh_range, 20.0);
  CHECK(g.phase ==
        Approx(std::atan((p.k3 * p.rayleigh_range + p.k0 * xi_b) / (p.rayleigh_range * (p.k3 + p.k0))))
            .epsilon(1e-14));
  CHECK_FALSE(gouy_nonparaxial(p, {0, 0}, 1.0, 1.0).far_field);
  // Odd in xi3 at fixed radius.
  CHECK(gouy_nonparaxial(p, {0, 0}, -7.0, 3.0).phase == Approx(-gouy_nonparaxial(p, {0, 0}, 7.0, 3.0).phase));
}

TEST_CASE("paraxial Gouy phase and beam radius") {
  const auto p = s1();
  CHECK(gouy_paraxial(p, {0, 0}, 0.0) == 0.0);
  CHECK(gouy_paraxial(p, {0, 0}, p.rayleigh_range) == Approx(pi / 4).epsilon(1e-15));
  const double far = gouy_paraxial(p, {0, 0}, 1e12) - gouy_paraxial(p, {0, 0}, -1e12);
  CHECK(far == Approx(pi).epsilon(1e-10));
  CHECK(beam_radius(p, 0.0) == p.w0);
  CHECK(beam_radius(p, p.rayleigh_range) == Approx(p.w0 * std::sqrt(2.0)).epsilon(1e-15));
  // Hand value: 5 sqrt(1 + (1000 / 20.922)^2) / 1000 = 0.23903.
  CHECK(beam_radius(p, 1000.0) / 1000.0 == Approx(0.23903).epsilon(1e-4));
  CHECK(beam_radius(p, 1000.0) / 1000.0 == Approx(p.divergence_sin).epsilon(2e-3));
}

TEST_CASE("generalized Laguerre polynomials") {
  for (int a = 0; a < 4; ++a) CHECK(laguerre(0, a, 3.7) == 1.0);
  CHECK(laguerre(1, 0, 2.0) == Approx(-1.0));
  CHECK(laguerre(2, 1, 2.0) == Approx(-1.0));
  for (double x : {0.0, 0.4, 1.5, 6.0}) {
    CHECK(laguerre(2, 1, x) == Approx(x * x / 2 - 3 * x + 3).epsilon(1e-14));
    CHECK(laguerre(3, 0, x) == Approx((-x * x * x + 9 * x * x - 18 * x + 6) / 6).epsilon(1e-13));
    CHECK(laguerre(1, 2, x) == Approx(3 - x).epsilon(1e-14));
  }
  CHECK_THROWS_AS(laguerre(-1, 0, 1.0), DomainError);
  CHECK_THROWS_AS(laguerre(1, -1, 1.0), DomainError);
}

TEST_CASE("Laguerre-Gauss mode values") {
  const auto p = s1();
  const cplx on_axis = phi_lp(p, {0, 0}, make_beam_point(0, 0, 0, 0));
  CHECK(on_axis.real() == Approx(std::sqrt(2.0 / pi) / p.w0).epsilon(1e-15));
  CHECK(on_axis.imag() == 0.0);
  for (int l : {1, 2, -1, -3}) CHECK(std::abs(phi_lp(p, {l, 0}, make_beam_point(0, 0, 4.0, 1.0))) == 0.0);
  CHECK_THROWS_AS(phi_lp(p, {0, -1}, make_beam_point(0, 0, 0, 0)), DomainError);
}

TEST_CASE("modes are orthonormal over the transverse plane") {
  const auto p = s1();
  for (double u : {-30.0, 0.0, 45.0}) {
    const double half = 7.0 * std::abs(complex_w(p, u));
    const ModeIndex modes[] = {{0, 0}, {0, 1}, {1, 0}, {-1, 0}};
    for (auto a : modes)
      for (auto b : modes) {
        const cplx g = grid_integral(half, 241, [&](double x, double y) {
          return std::conj(phi_at(p, a, x, y, u)) * phi_at(p, b, x, y, u);
        });
        CHECK(std::abs(g - cplx(a == b ? 1.0 : 0.0)) < 1e-9);
      }
  }
}

TEST_CASE("modes solve the paraxial equation in u = xi3 + xi0") {
  // laplacian_perp Phi + 2 i (k0' + k3') dPhi/du = 0, by central differences.
  const auto p = s1();
  const double k = p.k0_prime + p.k3_prime;
  const double h = 1e-3 * p.w0;
  const double hu = 1e-2 * p.w0;
  const ModeIndex modes[] = {{0, 0}, {0, 1}, {1, 0}, {-1, 0}, {2, 1}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.5 * p.w0, 1.5 * p.w0);
  for (auto m : modes)
    for (int i = 0; i < 5; ++i) {
      const double x = d(rng), y = d(rng), u = 10 * d(rng);
      auto f = [&](double a, double b, double c) { return phi_at(p, m, a, b, c); };
      const cplx lap = (f(x + h, y, u) + f(x - h, y, u) + f(x, y + h, u) + f(x, y - h, u) - 4.0 * f(x, y, u)) / (h * h);
      const cplx du = (f(x, y, u + hu) - f(x, y, u - hu)) / (2 * hu);
      const double scale = std::abs(2.0 * k * du) + std::abs(lap) + 1e-3 * std::abs(f(x, y, u)) / (p.w0 * p.w0);
      CHECK(std::abs(lap + cplx(0, 2.0 * k) * du) / scale < 1e-5);
    }
}

TEST_CASE("scalar solution is C Phi times a pure phase") {
  const auto p = s1();
  const auto pt = make_beam_point(3.0, 1.1, 12.0, -4.0);
  const FourPosition lab = to_lab(pt, {2.0, 0.5, -1.0, 30.0});
  for (ModeIndex m : {ModeIndex{0, 0}, ModeIndex{0, 1}, ModeIndex{1, 0}})
    CHECK(std::abs(psi_scalar(p, m, pt, lab)) == Approx(p.c_norm * std::abs(phi_lp(p, m, pt))).epsilon(1e-14));
  CHECK(std::abs(psi_scalar(p, {0, 0}, make_beam_point(0, 0, 0, 0), {})) ==
        Approx(p.c_norm * std::sqrt(2.0 / pi) / p.w0).epsilon(1e-15));
}

TEST_CASE("beam points") {
  const auto pt = make_beam_point(2.0, -pi / 2, 1.0, 0.5);
  CHECK(pt.xi_phi == Approx(1.5 * pi).epsilon(1e-15));
  CHECK(pt.zeta_arg() == 1.5);
  CHECK(make_beam_point(1, 4 * pi, 0, 0).xi_phi == Approx(0.0));
  CHECK_THROWS_AS(make_beam_point(-1e-9, 0, 0, 0), DomainError);
  const FourPosition waist{1, 2, 3, 4};
  const auto back = to_beam_point(to_lab(make_beam_point(2.5, 0.7, -3, 6), waist), waist);
  CHECK(back.xi_rho == Approx(2.5).epsilon(1e-14));
  CHECK(back.xi_phi == Approx(0.7).epsilon(1e-14));
  CHECK(back.xi3 == Approx(-3));
  CHECK(back.xi0 == Approx(6));
}
