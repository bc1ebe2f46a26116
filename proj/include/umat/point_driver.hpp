// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "umat/parameter_table.hpp"
#include "umat/types.hpp"

namespace umat {

enum class LoadMode { Uniaxial, Equibiaxial, SimpleShear, Volumetric };

/// A homogeneous deformation history. Controls are stretches (uniaxial,
/// equibiaxial), shear amounts (simple shear) or volume ratios (volumetric);
/// the first control is the reference state and the sequence is strictly monotone.
struct LoadPath {
  LoadMode mode = LoadMode::Uniaxial;
  std::vector<double> control;
  /// Simple shear F = I + gamma e_a (x) e_b, 1-based axes, a != b.
  int shear_a = 1;
  int shear_b = 2;
  /// Rotation from the load frame to the material frame: F = R F_load R^T.
  Mat3 frame = Mat3::Identity();
};

struct DriverOptions {
  double tol = 1e-10;
  int max_iter = 50;
};

struct CurvePoint {
  double control = 0.0;
  /// Cauchy stress in the load frame.
  Mat3 sigma = Mat3::Zero();
  /// Deformation gradient in the load frame.
  Mat3 F = Mat3::Identity();
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  /// Hydrostatic pressure of incompressible tables.
  std::optional<double> pressure;
  std::array<double, 15> invariants{};
  int iterations = 0;
};

/// Drives `path` through the material. Unknown lateral stretches and the
/// pressure of incompressible tables are solved per point by Newton iteration:
///
///   uniaxial     F = diag(l, l2, l3): sigma_22 = sigma_33 = 0
///   equibiaxial  F = diag(l, l, l3): sigma_33 = 0
///   shear        F = I + g e_a (x) e_b: J = 1, pressure from the out-of-plane normal stress
///   volumetric   F = J^(1/3) I, compressible tables only
///
/// Incompressible uniaxial paths solve for l2 with l3 = 1/(l l2); isotropic
/// tables give l2 = l3 = l^(-1/2).
///
/// Throws InvalidArgument for malformed paths, NoConvergence when the residual
/// stays above tol (1 + |sigma|_inf), and StepFailure when the energy leaves
/// the domain of a logarithmic term.
std::vector<CurvePoint> run_path(const MaterialSpec& spec, const LoadPath& path, const DriverOptions& options = {});

/// Evenly spaced controls from a to b inclusive; n >= 2.
std::vector<double> linear_range(double a, double b, int n);

/// CSV with one header row and one row per point:
/// control, sigma_11, sigma_22, sigma_33, sigma_23, sigma_13, sigma_12, I1..I15,
/// lambda_2, lambda_3, pressure. Stress headers carry the unit, e.g. sigma_11[kPa].
/// Values use 10 significant digits.
std::string emit_csv(std::span<const CurvePoint> curve, std::string_view units);

}  // namespace umat
