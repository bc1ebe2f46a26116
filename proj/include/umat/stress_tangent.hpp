// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "umat/energy_net.hpp"
#include "umat/kinematics.hpp"
#include "umat/parameter_table.hpp"
#include "umat/types.hpp"

namespace umat {

struct StressState {
  Mat3 sigma = Mat3::Zero();
  /// Isochoric fiber vectors Fbar n_a in the current configuration.
  std::vector<Vec3> fibers_current;
};

struct TangentState {
  /// d sigma_ij / d F_kl by central differences.
  Tensor4 dsigma_dF;
};

/// Free energy psi(F) of the table.
double strain_energy(const ParameterTable& table, const Mat3& F, const FiberSet& fibers);

/// sigma = (1/J) sum_i dpsi/dI_i (dI_i/dF) F^T without any incompressibility
/// bookkeeping: no pressure term and no det F = 1 check.
Mat3 constitutive_stress(const ParameterTable& table, const DeformationState& state, const FiberSet& fibers);

/// Cauchy stress. Incompressible tables need the hydrostatic pressure `p`
/// (sigma -= p I) and det F = 1 within 1e-8; compressible tables reject a
/// pressure argument.
StressState cauchy_stress(const ParameterTable& table, const Mat3& F, const FiberSet& fibers,
                          std::optional<double> pressure = std::nullopt);

/// Central differences of the Cauchy stress with respect to each entry of F.
/// Preconditions are validated at F; perturbed states of incompressible tables
/// are evaluated with the same pressure and without the det F = 1 check.
TangentState tangent_fd(const ParameterTable& table, const Mat3& F, const FiberSet& fibers,
                        std::optional<double> pressure = std::nullopt, double step = 1e-6);

}  // namespace umat
