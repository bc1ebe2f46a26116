// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "umat/parameter_table.hpp"

namespace umat {

struct CheckEntry {
  std::string name;
  int samples = 0;
  int skipped = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  /// Short note on a failure or on what was compared.
  std::string detail;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  bool passed() const;
  void append(const CheckReport& other);
  /// One line per check: status, name, samples, skipped, max error, tolerance.
  std::string to_text() const;
};

/// UI1 and UI2 against central differences of UA at random invariant states
/// (I1, I2 in [3, 5], J in [0.9, 1.1], diagonal fiber invariants in [0.8, 1.5],
/// coupling invariants within 0.3 of their offsets). Samples within 1e-3 of a
/// Macauley/absolute-value kink or near a logarithmic singularity are replaced.
/// Entries: energy_first_derivatives (1e-8), energy_second_derivatives_diagonal
/// (1e-6), energy_second_derivatives_mixed (1e-6).
CheckReport check_energy_derivatives(const ParameterTable& table, int samples, std::uint64_t seed);

/// Assembled Cauchy stress against (1/J) dpsi/dF F^T by central differences
/// at random F = I + H with det F in [0.8, 1.25]. Incompressible tables are
/// compared without the pressure term. Entry: stress_fd (1e-6).
CheckReport check_stress_fd(const ParameterTable& table, const FiberSet& fibers, int samples, std::uint64_t seed);

/// Table-built textbook models against hand-coded energies and stresses, the
/// dispersion-model limits kappa = 0 and kappa = 1/3, and the three-row
/// volumetric identity.
CheckReport check_closed_forms(std::uint64_t seed = 7);

/// Objectivity of energy and stress under random rotations, and coaxiality of
/// sigma with b for tables that only use slots 1 to 3.
CheckReport check_symmetries(const ParameterTable& table, const FiberSet& fibers, std::uint64_t seed,
                             int samples = 100);

/// psi(I) = 0 and sigma(I) = 0 with the given fibers and randomly rotated copies.
CheckReport check_reference_state(const ParameterTable& table, const FiberSet& fibers, std::uint64_t seed);

/// Every per-material check above for one material.
CheckReport run_material_checks(const MaterialSpec& spec, std::uint64_t seed = 42);

}  // namespace umat
