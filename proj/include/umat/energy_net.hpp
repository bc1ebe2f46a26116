// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "umat/kinematics.hpp"
#include "umat/parameter_table.hpp"

namespace umat {

/// Value, first and second derivative of one activation layer.
struct Activation {
  double f = 0.0;
  double df = 0.0;
  double ddf = 0.0;
};

/// Zeroth layer. The derivative at the kink x = 0 is taken as 0 for both the
/// Macauley bracket and the absolute value.
Activation eval_f0(ZerothActivation kind, double x);

/// First layer: (w0 x)^m for 1 <= m <= kMaxPower.
Activation eval_f1(int power, double w0, double x);

/// Second layer. NegativeLog throws ErrorCode::LogDomain when w1 x >= 1.
Activation eval_f2(SecondActivation kind, double w1, double x);

/// Contribution of one row to the energy and its first/second derivative with
/// respect to the row's own invariant.
struct NeuronContribution {
  double energy = 0.0;
  double first = 0.0;
  double second = 0.0;
};

/// `x_inv` is the offset-corrected invariant I - I0.
NeuronContribution ucann_neuron(double x_inv, const NeuronRow& row);

/// Number of packed entries of the symmetric second-derivative array.
inline constexpr int kPackedSize = kNumInvariants * (kNumInvariants + 1) / 2;

/// Packed upper-triangle position for 1-based slots i <= j: i + j(j-1)/2 (1-based).
constexpr int packed_index(int i, int j) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return i + j * (j - 1) / 2;
}

/// Energy and its derivatives with respect to the 15 base invariants. Mixed
/// slots are already folded into the base slots.
struct EnergyEvaluation {
  double UA = 0.0;
  std::array<double, kNumInvariants> UI1{};
  std::array<double, kPackedSize> UI2{};

  /// dpsi/dI_i, 1-based.
  double first(int i) const { return UI1[static_cast<std::size_t>(i - 1)]; }
  /// d2psi/dI_i dI_j, 1-based, either order.
  double second(int i, int j) const { return UI2[static_cast<std::size_t>(packed_index(i, j) - 1)]; }
};

/// Sums every row of the table. Rows addressing a mixed slot distribute their
/// derivatives through the mixing coefficients: kappa_j for UI1 and
/// kappa_i kappa_j for UI2.
///
/// Throws UnknownInvariantSlot for rows whose slot is missing from `inv`,
/// VolumetricInIncompressible for slot-3 rows of incompressible tables, and
/// LogDomain from the second layer.
EnergyEvaluation evaluate_energy(const ParameterTable& table, const InvariantState& inv);

}  // namespace umat
