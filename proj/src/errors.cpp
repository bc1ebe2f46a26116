// SPDX-License-Identifier: Apache-2.0
#include "umat/errors.hpp"

#include <cstdio>

namespace umat {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveJacobian: return "NonPositiveJacobian";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::LogDomain: return "LogDomain";
    case ErrorCode::UnknownInvariantSlot: return "UnknownInvariantSlot";
    case ErrorCode::VolumetricInIncompressible: return "VolumetricInIncompressible";
    case ErrorCode::MissingPressure: return "MissingPressure";
    case ErrorCode::IncompressibilityViolated: return "IncompressibilityViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::UnknownParameter: return "UnknownParameter";
    case ErrorCode::NonPositiveModulus: return "NonPositiveModulus";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {
std::string with_location(int line, int col, const std::string& reason) {
  return std::to_string(line) + ":" + std::to_string(col) + ": " + reason;
}

std::string format_control(const char* prefix, double control, const std::string& tail) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", control);
  return std::string(prefix) + buf + tail;
}
}  // namespace

ParseError::ParseError(int line, int col, const std::string& reason)
    : Error(ErrorCode::ParseError, with_location(line, col, reason)),
      line_(line),
      col_(col),
      reason_(reason) {}

NoConvergence::NoConvergence(double control, double residual)
    : Error(ErrorCode::NoConvergence,
            format_control("no convergence at control value ", control,
                           ", last residual " + std::to_string(residual))),
      control_(control),
      residual_(residual) {}

StepFailure::StepFailure(double control, const std::string& cause)
    : Error(ErrorCode::StepFailure, format_control("step failure at control value ", control, ": " + cause)),
      control_(control) {}

}  // namespace umat
