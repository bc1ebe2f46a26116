// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "umat/parameter_table.hpp"

namespace umat {

/// Named model parameters, e.g. {"C10", 0.5}. Angles are in degrees.
using PresetParams = std::map<std::string, double, std::less<>>;

struct PresetParameter {
  std::string name;
  double default_value = 0.0;
  std::string description;
};

struct PresetInfo {
  std::string name;
  std::string description;
  std::string units;
  std::vector<PresetParameter> parameters;
  /// Parameters that must be supplied explicitly.
  std::vector<std::string> required;
};

/// All preset names in catalog order.
std::vector<std::string> preset_names();

/// Throws UnknownPreset.
const PresetInfo& preset_info(std::string_view name);

/// Builds the parameter table of a named model. `params` overrides defaults.
/// Rows with a zero weight are left out; compressible textbook models become
/// incompressible when every volumetric row is left out (D = 0).
///
/// Throws UnknownPreset, UnknownParameter, MissingParameter and
/// NonPositiveModulus (exponential or logarithmic rate <= 0 on a non-zero term).
MaterialSpec build_preset(std::string_view name, const PresetParams& params = {});

}  // namespace umat
