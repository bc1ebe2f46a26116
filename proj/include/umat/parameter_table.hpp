// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umat/kinematics.hpp"

namespace umat {

/// Zeroth-layer activation: identity, Macauley bracket, absolute value.
enum class ZerothActivation : int { Identity = 1, Macauley = 2, Absolute = 3 };

/// Second-layer activation: w1*x, exp(w1*x)-1, -ln(1-w1*x).
enum class SecondActivation : int { Linear = 1, Exponential = 2, NegativeLog = 3 };

/// Highest power accepted for the first-layer activation.
inline constexpr int kMaxPower = 12;

/// One constitutive neuron: w2 * f2(f1(f0(I - I0); w0); w1).
struct NeuronRow {
  int kfinv = 1;
  ZerothActivation kf0 = ZerothActivation::Identity;
  int kf1 = 1;
  SecondActivation kf2 = SecondActivation::Linear;
  double w0 = 1.0;
  double w1 = 1.0;
  double w2 = 0.0;

  bool operator==(const NeuronRow&) const = default;
};

enum class MaterialType { Incompressible, Compressible };

struct ParameterTable {
  MaterialType material_type = MaterialType::Incompressible;
  int ndir = 0;
  std::vector<NeuronRow> rows;
  std::vector<MixedInvariantRow> mixed;

  bool operator==(const ParameterTable&) const = default;
};

/// A named material: the parameter table plus authoring metadata.
struct MaterialSpec {
  std::string name;
  ParameterTable table;
  std::optional<FiberSet> fibers;
  std::string units;

  /// The explicit fibers, or the Cartesian frame of size ndir when none are given.
  FiberSet fiber_set() const;

  bool operator==(const MaterialSpec&) const = default;
};

}  // namespace umat
