#include "bhg/spinor_field.hpp"

#include <cmath>

#include "bhg/detail/field_eval.hpp"
#include "bhg/errors.hpp"

namespace bhg {

using cplx = std::complex<double>;

double BiSpinorValue::density() const noexcept {
  return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]) + std::norm(c[3]);
}

BiSpinorValue operator-(const BiSpinorValue& a, const BiSpinorValue& b) {
  BiSpinorValue r;
  for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

ModeIndex mode_of(ModeTerm term, Spin spin) noexcept {
  switch (term) {
    case ModeTerm::psi00: return {0, 0};
    case ModeTerm::psi01: return {0, 1};
    case ModeTerm::psi10: return {spin == Spin::up ? 1 : -1, 0};
  }
  return {0, 0};
}

ModeWeights mode_weights(const BeamParameters& p) noexcept {
  return {p.b * p.b + p.k3 * p.k3, 2.0 * p.kappa * p.kappa, 2.0 / (p.w0 * p.w0)};
}

double truncation_share(const BeamParameters& p) noexcept {
  return 2.0 * p.kappa * p.kappa * p.c_norm * p.c_norm;
}

namespace {

detail::Coords<cplx> coords(const BeamPoint& point, const FourPosition& lab) {
  return {point.xi0, point.xi1(), point.xi2(), point.xi3, lab.ct, lab.z};
}

BiSpinorValue from_array(const std::array<cplx, 4>& a) { return {a}; }

BiSpinorValue derivative_of(const std::array<Jet, 4>& a) {
  return {{a[0].d, a[1].d, a[2].d, a[3].d}};
}

} // namespace

std::complex<double> psi_component(const BeamParameters& params, ModeTerm term, const BeamPoint& point,
                                   const FourPosition& lab) {
  const double charge = params.spin == Spin::up ? 1.0 : -1.0;
  const auto env = detail::gaussian_envelopes(params, cplx(point.xi1()), cplx(point.xi2()),
                                              cplx(point.zeta_arg()), charge);
  const cplx phase = params.c_norm * detail::plane_wave(params, cplx(lab.ct), cplx(lab.z));
  switch (term) {
    case ModeTerm::psi00: return env.f00 * phase;
    case ModeTerm::psi01: return env.f01 * phase;
    case ModeTerm::psi10: return env.f10 * phase;
  }
  return {};
}

BiSpinorValue bispinor_exact(const BeamParameters& params, const BeamPoint& point, const FourPosition& lab) {
  return from_array(detail::gaussian_bispinor(params, false, coords(point, lab)));
}

BiSpinorValue bispinor_truncated(const BeamParameters& params, const BeamPoint& point,
                                 const FourPosition& lab) {
  return from_array(detail::gaussian_bispinor(params, true, coords(point, lab)));
}

BiSpinorValue bispinor(const BeamParameters& params, FieldForm form, const BeamPoint& point,
                       const FourPosition& lab) {
  return form == FieldForm::exact ? bispinor_exact(params, point, lab) : bispinor_truncated(params, point, lab);
}

BiSpinorValue bispinor_at(const BeamParameters& params, FieldForm form, const FourPosition& lab,
                          const FourPosition& waist) {
  return from_array(detail::gaussian_bispinor(params, form == FieldForm::truncated, detail::plain(lab, waist)));
}

BiSpinorValue bispinor_derivative(const BeamParameters& params, FieldForm form, const FourPosition& lab,
                                  const FourPosition& dir, const FourPosition& waist) {
  const auto c = detail::seeded(lab, waist, dir);
  return derivative_of(detail::gaussian_bispinor(params, form == FieldForm::truncated, c));
}

BiSpinorValue bispinor_from_scalar(const BeamParameters& params, const FourPosition& lab,
                                   const FourPosition& waist) {
  const ModeIndex gaussian{0, 0};
  auto partial = [&](const FourPosition& dir) {
    return detail::scalar_field(params, gaussian, detail::seeded(lab, waist, dir));
  };
  const Jet along_t = partial({1, 0, 0, 0});
  const cplx psi = along_t.v;
  const cplx dt = along_t.d;
  const cplx dx = partial({0, 1, 0, 0}).d;
  const cplx dy = partial({0, 0, 1, 0}).d;
  const cplx dz = partial({0, 0, 0, 1}).d;
  const cplx i = detail::kI;

  // Upper: (i d_t + m) Psi.  Lower: -i sigma.grad Psi applied to chi.
  const cplx upper = i * dt + params.mass * psi;
  const cplx lower_axial = -i * dz;
  const cplx raise = -i * (dx + i * dy); // -i (d_x + i d_y)
  const cplx lower_op = -i * (dx - i * dy);
  if (params.spin == Spin::up) return {{upper, 0.0, lower_axial, raise}};
  return {{0.0, upper, lower_op, -lower_axial}};
}

std::array<double, 4> dirac_current(const BiSpinorValue& psi) noexcept {
  const auto& c = psi.c;
  // alpha_k = [[0, sigma_k], [sigma_k, 0]]
  const cplx a1 = std::conj(c[0]) * c[3] + std::conj(c[1]) * c[2];
  const cplx a2 = std::conj(c[0]) * (cplx(0, -1) * c[3]) + std::conj(c[1]) * (cplx(0, 1) * c[2]);
  const cplx a3 = std::conj(c[0]) * c[2] - std::conj(c[1]) * c[3];
  return {psi.density(), 2.0 * a1.real(), 2.0 * a2.real(), 2.0 * a3.real()};
}

// ---------------------------------------------------------------------------

StepSizes residual_steps(const BeamParameters& params, double step) {
  if (!(step >= 1e-8 * params.w0))
    throw DomainError("residual step too small: must be at least 1e-8 w0");
  const double fraction = step / params.w0;
  const double axial = fraction / params.k0_prime;
  return {axial, step, step, axial};
}

namespace {

using Spinor = std::array<cplx, 4>;

FourPosition shifted(const FourPosition& p, int axis, double h) {
  FourPosition q = p;
  switch (axis) {
    case 0: q.ct += h; break;
    case 1: q.x += h; break;
    case 2: q.y += h; break;
    default: q.z += h; break;
  }
  return q;
}

double step_of(const StepSizes& s, int axis) {
  switch (axis) {
    case 0: return s.ct;
    case 1: return s.x;
    case 2: return s.y;
    default: return s.z;
  }
}

Spinor dirac_operator(const SpinorFieldFn& field, const FourPosition& at, const StepSizes& steps,
                      double mass) {
  std::array<Spinor, 4> d{};
  for (int axis = 0; axis < 4; ++axis) {
    const double h = step_of(steps, axis);
    const auto plus = field(shifted(at, axis, h)).c;
    const auto minus = field(shifted(at, axis, -h)).c;
    for (int k = 0; k < 4; ++k) d[axis][k] = (plus[k] - minus[k]) / (2.0 * h);
  }
  const auto psi = field(at).c;
  const cplx i(0, 1);
  const auto& t = d[0];
  const auto& x = d[1];
  const auto& y = d[2];
  const auto& z = d[3];
  // gamma^0 = diag(1, 1, -1, -1); gamma^k = [[0, sigma_k], [-sigma_k, 0]]
  Spinor gd;
  gd[0] = t[0] + (x[3] - i * y[3] + z[2]);
  gd[1] = t[1] + (x[2] + i * y[2] - z[3]);
  gd[2] = -t[2] - (x[1] - i * y[1] + z[0]);
  gd[3] = -t[3] - (x[0] + i * y[0] - z[1]);
  Spinor r;
  for (int k = 0; k < 4; ++k) r[k] = i * gd[k] - mass * psi[k];
  return r;
}

cplx kg_operator(const ScalarFieldFn& field, const FourPosition& at, const StepSizes& steps, double mass) {
  const cplx center = field(at);
  cplx result = mass * mass * center;
  for (int axis = 0; axis < 4; ++axis) {
    const double h = step_of(steps, axis);
    const cplx second = (field(shifted(at, axis, h)) - 2.0 * center + field(shifted(at, axis, -h))) / (h * h);
    result += axis == 0 ? second : -second;
  }
  return result;
}

double spinor_norm(const Spinor& s) {
  return std::sqrt(std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]) + std::norm(s[3]));
}

} // namespace

double dirac_residual(const SpinorFieldFn& field, const FourPosition& at, const StepSizes& steps,
                      double mass, bool richardson) {
  Spinor r = dirac_operator(field, at, steps, mass);
  if (richardson) {
    const Spinor half = dirac_operator(field, at, steps.scaled(0.5), mass);
    for (int k = 0; k < 4; ++k) r[k] = (4.0 * half[k] - r[k]) / 3.0;
  }
  return spinor_norm(r) / (mass * field(at).norm());
}

double klein_gordon_residual(const ScalarFieldFn& field, const FourPosition& at, const StepSizes& steps,
                             double mass, bool richardson) {
  cplx r = kg_operator(field, at, steps, mass);
  if (richardson) r = (4.0 * kg_operator(field, at, steps.scaled(0.5), mass) - r) / 3.0;
  return std::abs(r) / (mass * mass * std::abs(field(at)));
}

double pde_residual(const BeamParameters& params, WaveEquation which, const BeamPoint& point, double step,
                    bool richardson) {
  const StepSizes steps = residual_steps(params, step);
  const FourPosition at = to_lab(point);
  // The carrier phase is taken relative to `at`: far from the waist the
  // absolute phase is thousands of radians, and its rounding would swamp
  // the second differences.  The dropped factor is a constant phase.
  auto local = [&](const FourPosition& x) {
    return FourPosition{x.ct - at.ct, x.x - at.x, x.y - at.y, x.z - at.z};
  };
  if (which == WaveEquation::dirac) {
    auto field = [&](const FourPosition& x) { return bispinor_exact(params, to_beam_point(x), local(x)); };
    return dirac_residual(field, at, steps, params.mass, richardson);
  }
  auto field = [&](const FourPosition& x) {
    return psi_scalar(params, {0, 0}, to_beam_point(x), local(x));
  };
  return klein_gordon_residual(field, at, steps, params.mass, richardson);
}

} // namespace bhg
