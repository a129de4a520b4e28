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

#include "sparseconv/oracle.hpp"

#include <algorithm>

#include "sparseconv/error.hpp"

namespace sparseconv {
namespace {

void require_pattern(const SparseBinaryVector& pattern) {
  if (pattern.empty()) throw Error(ErrorCode::kEmptyPattern, "pattern has no nonzeros");
}

}  // namespace

MatchResult oracle_match_shift(const SparseBinaryVector& text,
                               const SparseBinaryVector& pattern) {
  require_pattern(pattern);
  make_family(Family::kShift, text, pattern);
  const Index last = text.domain_size() - pattern.domain_size();
  const Index p0 = pattern.support().front();
  const std::size_t m = pattern.count();
  const MembershipIndex members(text.support());

  MatchResult result;
  for (Index t : text.support()) {
    if (t < p0 || t - p0 > last) continue;
    const Index i = t - p0;
    ++result.counts_checked;
    std::size_t hits = 0;
    for (Index j : pattern.support()) hits += members.contains(i + j) ? 1 : 0;
    if (hits == m) result.positions.push_back(i);
  }
  return result;
}

MatchResult oracle_match_xor(const SparseBinaryVector& text,
                             const SparseBinaryVector& pattern) {
  make_family(Family::kXor, text, pattern);
  require_pattern(pattern);
  const Index p0 = pattern.support().front();
  const std::size_t m = pattern.count();
  const MembershipIndex members(text.support());

  MatchResult result;
  for (Index t : text.support()) {
    const Index i = t ^ p0;
    ++result.counts_checked;
    std::size_t hits = 0;
    for (Index j : pattern.support()) hits += members.contains(i ^ j) ? 1 : 0;
    if (hits == m) result.positions.push_back(i);
  }
  std::sort(result.positions.begin(), result.positions.end());
  return result;
}

DenseIntVector oracle_dot_convolution(const DenseIntVector& v1,
                                      const DenseIntVector& v2, Family family) {
  if (v1.size() > kOracleMaxLength || v2.size() > kOracleMaxLength) {
    throw Error(ErrorCode::kOracleTooLarge, "dense oracle limited to 2^16 entries");
  }
  std::size_t out_len = 0;
  if (family == Family::kXor) {
    if (v1.size() != v2.size() || !is_power_of_two(v1.size())) {
      throw Error(ErrorCode::kDomainMismatch, "XOR oracle needs equal power-of-two lengths");
    }
    out_len = v1.size();
  } else {
    if (v2.empty() || v2.size() > v1.size()) {
      throw Error(ErrorCode::kDomainMismatch, "SHIFT oracle needs 0 < M <= N");
    }
    out_len = v1.size() - v2.size() + 1;
  }

  DenseIntVector out(out_len, 0);
  for (std::size_t j = 0; j < out_len; ++j) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < v2.size(); ++i) {
      const std::size_t src = family == Family::kXor ? (i ^ j) : (i + j);
      std::int64_t prod = 0;
      if (__builtin_mul_overflow(v1[src], v2[i], &prod) ||
          __builtin_add_overflow(acc, prod, &acc)) {
        throw Error(ErrorCode::kOverflow, "dense oracle accumulation overflow");
      }
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace sparseconv
