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
#include <vector>

#include "sparseconv/sparse_vector.hpp"

namespace sparseconv {

// Brute-force references. They evaluate the full convolution count at every
// candidate offset (no early exit), so their cost is Theta(n * m); the sparse
// matchers are measured against them.

// All i in [0, N-M] with i + j in text for every pattern point j.
// Throws EMPTY_PATTERN, DOMAIN_MISMATCH.
MatchResult oracle_match_shift(const SparseBinaryVector& text,
                               const SparseBinaryVector& pattern);

// All i in [0, N) with i ^ j in text for every pattern point j.
// Throws EMPTY_PATTERN, DOMAIN_MISMATCH.
MatchResult oracle_match_xor(const SparseBinaryVector& text,
                             const SparseBinaryVector& pattern);

using DenseIntVector = std::vector<std::int64_t>;

inline constexpr std::size_t kOracleMaxLength = std::size_t{1} << 16;

// Dense dot-product convolution out[j] = sum_i v1[beta_j(i)] * v2[i] with
// beta_j(i) = i ^ j (XOR, output length N) or i + j (SHIFT, output length
// N - M + 1). Throws ORACLE_TOO_LARGE, DOMAIN_MISMATCH, OVERFLOW.
DenseIntVector oracle_dot_convolution(const DenseIntVector& v1,
                                      const DenseIntVector& v2, Family family);

}  // namespace sparseconv
