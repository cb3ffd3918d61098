#pragma once

// Internal unit system: hbar = c = 1, lengths in pm, energies in keV,
// wavenumbers (and therefore momenta and masses) in pm^-1.  Lab-facing code
// uses the tagged quantities below; physics kernels work on plain doubles in
// the internal system.

namespace bhg {

struct PhysicalConstants {
  double electron_rest_energy; // keV
  double hbar_c;               // keV pm
  double reduced_compton_wavelength; // pm
};

/// CODATA 2018, frozen in source.
constexpr PhysicalConstants constants_codata() noexcept {
  constexpr double rest = 510.99895000;
  constexpr double hbar_c = 197.3269804;
  return {rest, hbar_c, hbar_c / rest};
}

namespace units {

template <class Tag>
struct Quantity {
  double value = 0.0;
  constexpr explicit Quantity(double v = 0.0) noexcept : value(v) {}
  friend constexpr bool operator==(Quantity, Quantity) = default;
};

struct EnergyTag {};
struct LengthTag {};
struct WavenumberTag {};
struct AngleTag {};

using Energy = Quantity<EnergyTag>;         // keV
using Length = Quantity<LengthTag>;         // pm
using Wavenumber = Quantity<WavenumberTag>; // pm^-1
using Angle = Quantity<AngleTag>;           // rad

constexpr Energy operator""_keV(long double v) { return Energy(static_cast<double>(v)); }
constexpr Length operator""_pm(long double v) { return Length(static_cast<double>(v)); }

} // namespace units

using units::Angle;
using units::Energy;
using units::Length;
using units::Wavenumber;

/// k = E / (hbar c).  Throws DomainError for non-positive energy.
Wavenumber to_wavenumber(Energy energy);

/// Inverse of to_wavenumber; accepts any finite value (momenta may be signed).
Energy to_energy(Wavenumber k) noexcept;

/// Electron mass as a wavenumber, m c / hbar.
double electron_mass_wavenumber() noexcept;

} // namespace bhg
