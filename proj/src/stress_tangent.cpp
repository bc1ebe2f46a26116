// SPDX-License-Identifier: Apache-2.0
#include "umat/stress_tangent.hpp"

#include <cmath>
#include <string>

#include "umat/errors.hpp"

namespace umat {

namespace {

constexpr double kIncompressibleTolerance = 1e-8;
constexpr double kAsymmetryTolerance = 1e-8;

InvariantState invariants_for(const ParameterTable& table, const DeformationState& state,
                              const FiberSet& fibers) {
  return compute_invariants(state, fibers, table.mixed);
}

void check_pressure(const ParameterTable& table, const DeformationState& state,
                    std::optional<double> pressure) {
  if (table.material_type == MaterialType::Incompressible) {
    if (!pressure) {
      throw Error(ErrorCode::MissingPressure, "incompressible table requires a hydrostatic pressure");
    }
    if (std::abs(state.J - 1.0) > kIncompressibleTolerance) {
      throw Error(ErrorCode::IncompressibilityViolated,
                  "incompressible table evaluated at det F = " + std::to_string(state.J));
    }
  } else if (pressure) {
    throw Error(ErrorCode::InvalidArgument, "pressure applies only to incompressible tables");
  }
}

Mat3 stress_with_pressure(const ParameterTable& table, const DeformationState& state, const FiberSet& fibers,
                          std::optional<double> pressure) {
  Mat3 sigma = constitutive_stress(table, state, fibers);
  if (pressure) sigma -= *pressure * Mat3::Identity();
  return sigma;
}

}  // namespace

double strain_energy(const ParameterTable& table, const Mat3& F, const FiberSet& fibers) {
  const DeformationState state = make_deformation_state(F);
  return evaluate_energy(table, invariants_for(table, state, fibers)).UA;
}

Mat3 constitutive_stress(const ParameterTable& table, const DeformationState& state, const FiberSet& fibers) {
  const EnergyEvaluation e = evaluate_energy(table, invariants_for(table, state, fibers));
  const auto grads = invariant_gradients(state, fibers);

  Mat3 dpsi_dF = Mat3::Zero();
  for (std::size_t i = 0; i < kNumInvariants; ++i) {
    if (e.UI1[i] != 0.0) dpsi_dF += e.UI1[i] * grads[i];
  }
  const Mat3 raw = dpsi_dF * state.F.transpose() / state.J;
  const Mat3 sym = 0.5 * (raw + raw.transpose());

  const double scale = sym.cwiseAbs().maxCoeff();
  const double skew = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (skew > kAsymmetryTolerance * scale && skew > 0.0) {
    throw Error(ErrorCode::Internal, "assembled Cauchy stress is not symmetric");
  }
  return sym;
}

StressState cauchy_stress(const ParameterTable& table, const Mat3& F, const FiberSet& fibers,
                          std::optional<double> pressure) {
  const DeformationState state = make_deformation_state(F);
  check_pressure(table, state, pressure);

  StressState out;
  out.sigma = stress_with_pressure(table, state, fibers, pressure);
  for (const auto& n : fibers.directions()) out.fibers_current.push_back(state.Fbar * n);
  return out;
}

TangentState tangent_fd(const ParameterTable& table, const Mat3& F, const FiberSet& fibers,
                        std::optional<double> pressure, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  check_pressure(table, make_deformation_state(F), pressure);

  TangentState out;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      Mat3 Fp = F;
      Mat3 Fm = F;
      Fp(k, l) += step;
      Fm(k, l) -= step;
      const Mat3 sp = stress_with_pressure(table, make_deformation_state(Fp), fibers, pressure);
      const Mat3 sm = stress_with_pressure(table, make_deformation_state(Fm), fibers, pressure);
      const Mat3 d = (sp - sm) / (2.0 * step);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) out.dsigma_dF(i, j, k, l) = d(i, j);
      }
    }
  }
  return out;
}

}  // namespace umat
