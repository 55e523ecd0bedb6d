// Copyright 2026 The kellyq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kellyq {

enum class ErrorCode {
  NotHermitian,
  TraceNotOne,
  NotPSD,
  NoConvergence,
  DimensionMismatch,
  LengthMismatch,
  InvalidProbability,
  InvalidOdds,
  InvalidArgument,
  WrongRegime,
  NonUniformOdds,
  CompletenessViolated,
  OptimizerFailed,
  ZeroPriorWithSupport,
  ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::InvalidOdds: return "InvalidOdds";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::NonUniformOdds: return "NonUniformOdds";
    case ErrorCode::CompletenessViolated: return "CompletenessViolated";
    case ErrorCode::OptimizerFailed: return "OptimizerFailed";
    case ErrorCode::ZeroPriorWithSupport: return "ZeroPriorWithSupport";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace kellyq
