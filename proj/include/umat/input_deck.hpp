// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "umat/parameter_table.hpp"

namespace umat {

/// Non-fatal observation made while parsing (e.g. a row that addresses a fiber
/// pair the header does not declare).
struct Diagnostic {
  int line = 0;
  std::string message;
};

/// Parses the material-definition subset of a keyword deck:
///
///   *MATERIAL, NAME=..., UNITS=...
///   *PARAMETER TABLE TYPE, NAME="UNIVERSAL_TAB"|"MIXED_INV"|..., PARAMETERS=n
///   *ANISOTROPIC HYPERELASTIC, USER, FORMULATION=INVARIANT, TYPE=..., LOCAL DIRECTIONS=n
///   *FIBER DIRECTIONS               (one "x, y, z" row per direction)
///   *PARAMETER TABLE, TYPE="MIXED_INV"      (16 fields, may wrap lines)
///   *PARAMETER TABLE, TYPE="UNIVERSAL_TAB"  (7 fields, one line each)
///
/// Keywords and option names are case-insensitive; `**` starts a comment line;
/// a keyword line ending in a comma continues on the next line. Any failure
/// throws ParseError and no partial result escapes.
MaterialSpec parse_deck(std::string_view text, std::vector<Diagnostic>* warnings = nullptr);

/// Canonical text: uppercase keywords, one row per line, every number in the
/// shortest form that parses back to the same double.
std::string serialize_deck(const MaterialSpec& spec);

}  // namespace umat
