#include "bhg/units.hpp"

#include <cmath>
#include <string>

#include "bhg/errors.hpp"

namespace bhg {

WaistBelowCritical::WaistBelowCritical(double waist_pm, double critical_waist_pm)
    : DomainError("waist below critical: w0 = " + std::to_string(waist_pm) +
                  " pm, minimum admissible w0 = " + std::to_string(critical_waist_pm) + " pm"),
      waist_(waist_pm), critical_waist_(critical_waist_pm) {}

Wavenumber to_wavenumber(Energy energy) {
  if (!(energy.value > 0.0) || !std::isfinite(energy.value))
    throw DomainError("energy must be positive and finite");
  return Wavenumber(energy.value / constants_codata().hbar_c);
}

Energy to_energy(Wavenumber k) noexcept { return Energy(k.value * constants_codata().hbar_c); }

double electron_mass_wavenumber() noexcept {
  constexpr auto c = constants_codata();
  return c.electron_rest_energy / c.hbar_c;
}

} // namespace bhg
