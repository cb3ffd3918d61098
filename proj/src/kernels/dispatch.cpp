#include <cstdlib>
#include <stdexcept>
#include <string>

#include "bhg/kernels.hpp"

namespace bhg::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> isas{Isa::scalar};
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) isas.push_back(Isa::avx2);
#endif
#if defined(__aarch64__)
  isas.push_back(Isa::neon);
#endif
  return isas;
}

namespace {

Isa choose_isa() {
  const auto isas = available_isas();
  if (const char* forced = std::getenv("BHG_SIMD"); forced != nullptr && *forced != '\0') {
    for (Isa isa : isas)
      if (isa_name(isa) == forced) return isa;
    // Unknown or unsupported request: stay on the reference path.
    return Isa::scalar;
  }
  return isas.back();
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel span sizes differ");
}

} // namespace

Isa active_isa() {
  static const Isa isa = choose_isa();
  return isa;
}

double compensated_dot(Isa isa, std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return avx2::compensated_dot(a.data(), b.data(), a.size());
#endif
#if defined(__aarch64__)
    case Isa::neon: return neon::compensated_dot(a.data(), b.data(), a.size());
#endif
    default: return scalar::compensated_dot(a.data(), b.data(), a.size());
  }
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
  return compensated_dot(active_isa(), a, b);
}

void front_roots(Isa isa, double k0, double k3, double level_term, std::span<const double> rho,
                 std::span<double> xi3) {
  check_sizes(rho.size(), xi3.size());
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: avx2::front_roots(k0, k3, level_term, rho.data(), xi3.data(), rho.size()); return;
#endif
#if defined(__aarch64__)
    case Isa::neon: neon::front_roots(k0, k3, level_term, rho.data(), xi3.data(), rho.size()); return;
#endif
    default: scalar::front_roots(k0, k3, level_term, rho.data(), xi3.data(), rho.size()); return;
  }
}

void front_roots(double k0, double k3, double level_term, std::span<const double> rho, std::span<double> xi3) {
  front_roots(active_isa(), k0, k3, level_term, rho, xi3);
}

} // namespace bhg::kernels
