// Copyright 2026 The sparseconv Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparseconv {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyPattern,
  kDomainMismatch,
  kOracleTooLarge,
  kInfeasibleInstance,
  kParseError,
  kIoError,
  kFieldMismatch,
  kNoNttPrime,
  kOverflow,
  kLengthMismatch,
  kReductionTooLarge,
  kMaskInapplicable,
  kDomainTooLargeForPoly,
  kAssignmentPoolExhausted,
  kStaleTable,
  kPoolTooSmall,
  kInternal,
};

// Stable upper-case name, e.g. "EMPTY_PATTERN".
std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception type. The code is
// the machine-readable part; what() carries "<NAME>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Throws Error(kInternal) when `cond` is false. Used for invariants that the
// algorithms guarantee; a failure means a bug, not bad input.
void check_internal(bool cond, std::string_view what);

}  // namespace sparseconv
