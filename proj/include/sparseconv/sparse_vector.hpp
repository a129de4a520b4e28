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

#include <cstdint>
#include <span>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/numeric/int128.h"
#include "sparseconv/index.hpp"

namespace sparseconv {

// A binary vector of length domain_size given by the ascending list of its
// nonzero positions.
class SparseBinaryVector {
 public:
  SparseBinaryVector() = default;

  // Throws INVALID_ARGUMENT unless `support` is strictly ascending and every
  // entry is < domain_size.
  SparseBinaryVector(Index domain_size, std::vector<Index> support);

  // Sorts and removes duplicates first; bounds are still checked.
  static SparseBinaryVector from_unsorted(Index domain_size,
                                          std::vector<Index> indices);

  Index domain_size() const { return domain_size_; }
  const std::vector<Index>& support() const { return support_; }
  std::size_t count() const { return support_.size(); }
  bool empty() const { return support_.empty(); }

  bool contains(Index i) const;  // binary search

  friend bool operator==(const SparseBinaryVector&,
                         const SparseBinaryVector&) = default;

 private:
  Index domain_size_ = 0;
  std::vector<Index> support_;
};

enum class Family { kXor, kShift };

std::string_view family_name(Family f);

struct ConvolutionFamily {
  Family kind;
  Index output_length;  // N for XOR, N - M + 1 for SHIFT
};

// Validates the pairing rules for `kind` and returns the output length.
// XOR: equal power-of-two domains. SHIFT: pattern domain <= text domain.
// Throws DOMAIN_MISMATCH.
ConvolutionFamily make_family(Family kind, const SparseBinaryVector& text,
                              const SparseBinaryVector& pattern);

struct MatchResult {
  std::vector<Index> positions;       // ascending, duplicate-free
  std::uint64_t counts_checked = 0;   // candidate verifications performed
  std::uint32_t rounds_used = 0;      // randomized rounds (0 for oracles)
  bool used_fallback = false;         // exhaustive candidate fallback taken
};

// Hash-based membership index over a support list, built once per matcher
// call.
class MembershipIndex {
 public:
  explicit MembershipIndex(std::span<const Index> support);

  bool contains(Index i) const { return set_.contains(absl::uint128(i)); }

 private:
  absl::flat_hash_set<absl::uint128> set_;
};

// Exact check of the match predicate at one output index. Stops at the first
// missing pattern point.
bool verify_shift_match(const MembershipIndex& text, Index text_domain,
                        const SparseBinaryVector& pattern, Index position);
bool verify_xor_match(const MembershipIndex& text,
                      const SparseBinaryVector& pattern, Index position);

}  // namespace sparseconv
