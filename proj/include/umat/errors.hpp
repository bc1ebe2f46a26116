// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace umat {

enum class ErrorCode {
  NonPositiveJacobian,
  InvalidPair,
  LogDomain,
  UnknownInvariantSlot,
  VolumetricInIncompressible,
  MissingPressure,
  IncompressibilityViolated,
  ParseError,
  UnknownPreset,
  MissingParameter,
  UnknownParameter,
  NonPositiveModulus,
  NoConvergence,
  StepFailure,
  InvalidArgument,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the kernel. The code maps one-to-one onto
/// the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Deck syntax or validation failure; message is formatted as `line:col: reason`.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& reason);
  int line() const noexcept { return line_; }
  int column() const noexcept { return col_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  int line_;
  int col_;
  std::string reason_;
};

/// Newton iteration of the point driver did not reach the residual tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(double control, double residual);
  double control() const noexcept { return control_; }
  double residual() const noexcept { return residual_; }

 private:
  double control_;
  double residual_;
};

/// Kernel failure (e.g. log-domain blow-up) at a particular control value of a load path.
class StepFailure : public Error {
 public:
  StepFailure(double control, const std::string& cause);
  double control() const noexcept { return control_; }

 private:
  double control_;
};

}  // namespace umat
