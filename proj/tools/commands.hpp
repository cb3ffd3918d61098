#pragma once

// Command implementations behind the `bhg` executable.  Each writer takes
// an already validated RunConfig and an output stream, so tests can drive
// them without a process boundary.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bhg/beam_config.hpp"
#include "bhg/observables.hpp"

namespace bhg::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { fig1, fig2, observables, field, verify };

struct RunConfig {
  Command command = Command::observables;
  double kinetic_energy = 100.0; // keV
  bool kinetic_energy_set = false;
  std::vector<double> fig2_energies{100.0, 500.0};
  double waist = 5.0; // pm
  Spin spin = Spin::up;
  std::string out = "-";
  bool out_set = false;

  int quad_nodes = 256;
  std::vector<double> levels; // empty: default set
  int theta_grid = 256;
  double rho_max = 0.0;       // pm; 0 selects a per-command default
  int n_rho = 512;
  int n_xi3 = 64;
  double xi3_min = 0.0, xi3_max = 0.0; // pm; equal values select +-2 xi_R
  double phi = 0.0;                    // rad
  std::uint64_t seed = 42;
  int verify_points = 10;
  bool inject_off_shell = false;

  QuadratureSpec quadrature() const;
  BeamParameters beam() const; // at kinetic_energy, waist, spin
};

/// '#'-prefixed provenance block common to every CSV.
void write_provenance(std::ostream& os, const RunConfig& cfg, const std::string& command);

void write_fig1(std::ostream& os, const RunConfig& cfg);

/// One divergence sweep at the given kinetic energy.
void write_fig2(std::ostream& os, const RunConfig& cfg, double kinetic_energy);

/// CSV record to `csv`, aligned side-by-side table to `text`.
void write_observables(std::ostream& csv, std::ostream& text, const RunConfig& cfg);

void write_field(std::ostream& os, const RunConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> run_verify(const RunConfig& cfg);

/// Prints the pass/fail table; returns true when every check passed.
bool print_verify(std::ostream& os, const std::vector<CheckResult>& checks);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

} // namespace bhg::cli
