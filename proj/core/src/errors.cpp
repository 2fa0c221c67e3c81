// Copyright 2026 The subtde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subtde/errors.hpp"

namespace subtde {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateDelay: return "DegenerateDelay";
    case ErrorCode::kInvalidCutoff: return "InvalidCutoff";
    case ErrorCode::kZeroSignal: return "ZeroSignal";
    case ErrorCode::kPulseOutOfRange: return "PulseOutOfRange";
    case ErrorCode::kEdgePeak: return "EdgePeak";
    case ErrorCode::kDegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::kEmptyKernel: return "EmptyKernel";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kZeroSlowness: return "ZeroSlowness";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kGeometryMismatch: return "GeometryMismatch";
    case ErrorCode::kNoPeak: return "NoPeak";
    case ErrorCode::kInsufficientPeaks: return "InsufficientPeaks";
    case ErrorCode::kInvalidFactor: return "InvalidFactor";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code) {}

}  // namespace subtde
