#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// The scalar functions are the definition; the AVX2 (x86-64) and NEON
// (AArch64) variants must agree with them: bit-for-bit for front_roots, and
// to a few ulp of the summed magnitude for compensated_dot, whose lane-wise
// accumulation order differs.  The variant used by the dispatched entry
// points is chosen once per process: the best ISA the CPU supports, unless
// the BHG_SIMD environment variable names another available one
// ("scalar", "avx2", "neon").

#include <span>
#include <string_view>
#include <vector>

namespace bhg::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// ISAs compiled into this build and supported by the running CPU.
std::vector<Isa> available_isas();

/// ISA used by the dispatched entry points.
Isa active_isa();

/// Neumaier-compensated sum of a[i] * b[i].  Sizes must match.
double compensated_dot(std::span<const double> a, std::span<const double> b);
double compensated_dot(Isa isa, std::span<const double> a, std::span<const double> b);

/// Positive-side root of k3 x + k0 sqrt(x^2 + rho^2) = |level_term|, signed
/// like level_term:
///   x = sign(A) (A^2 - k0^2 rho^2) / (|A| k3 + k0 sqrt(A^2 - (k0^2 - k3^2) rho^2)).
/// Writes NaN where no root with x != 0 exists (k0 rho >= |A|).
void front_roots(double k0, double k3, double level_term, std::span<const double> rho, std::span<double> xi3);
void front_roots(Isa isa, double k0, double k3, double level_term, std::span<const double> rho,
                 std::span<double> xi3);

namespace scalar {
double compensated_dot(const double* a, const double* b, std::size_t n) noexcept;
void front_roots(double k0, double k3, double level_term, const double* rho, double* xi3, std::size_t n) noexcept;
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double compensated_dot(const double* a, const double* b, std::size_t n) noexcept;
void front_roots(double k0, double k3, double level_term, const double* rho, double* xi3, std::size_t n) noexcept;
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double compensated_dot(const double* a, const double* b, std::size_t n) noexcept;
void front_roots(double k0, double k3, double level_term, const double* rho, double* xi3, std::size_t n) noexcept;
} // namespace neon
#endif

} // namespace bhg::kernels
