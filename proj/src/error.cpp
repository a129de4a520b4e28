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

#include "sparseconv/error.hpp"

namespace sparseconv {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kEmptyPattern: return "EMPTY_PATTERN";
    case ErrorCode::kDomainMismatch: return "DOMAIN_MISMATCH";
    case ErrorCode::kOracleTooLarge: return "ORACLE_TOO_LARGE";
    case ErrorCode::kInfeasibleInstance: return "INFEASIBLE_INSTANCE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kIoError: return "IO_ERROR";
    case ErrorCode::kFieldMismatch: return "FIELD_MISMATCH";
    case ErrorCode::kNoNttPrime: return "NO_NTT_PRIME";
    case ErrorCode::kOverflow: return "OVERFLOW";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kReductionTooLarge: return "REDUCTION_TOO_LARGE";
    case ErrorCode::kMaskInapplicable: return "MASK_INAPPLICABLE";
    case ErrorCode::kDomainTooLargeForPoly: return "DOMAIN_TOO_LARGE_FOR_POLY";
    case ErrorCode::kAssignmentPoolExhausted: return "ASSIGNMENT_POOL_EXHAUSTED";
    case ErrorCode::kStaleTable: return "STALE_TABLE";
    case ErrorCode::kPoolTooSmall: return "POOL_TOO_SMALL";
    case ErrorCode::kInternal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

void check_internal(bool cond, std::string_view what) {
  if (!cond) throw Error(ErrorCode::kInternal, std::string(what));
}

}  // namespace sparseconv
