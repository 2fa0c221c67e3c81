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

#ifndef SUBTDE_ERRORS_HPP_
#define SUBTDE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace subtde {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateDelay,
  kInvalidCutoff,
  kZeroSignal,
  kPulseOutOfRange,
  kEdgePeak,
  kDegenerateSpectrum,
  kEmptyKernel,
  kRankDeficient,
  kZeroSlowness,
  kEmptySet,
  kFormatError,
  kGeometryMismatch,
  kNoPeak,
  kInsufficientPeaks,
  kInvalidFactor,
  kConfigError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception; `code()` lets
// callers (and tests) discriminate without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace subtde

#endif  // SUBTDE_ERRORS_HPP_
