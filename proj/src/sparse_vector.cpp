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

#include "sparseconv/sparse_vector.hpp"

#include <algorithm>

#include "sparseconv/error.hpp"

namespace sparseconv {

SparseBinaryVector::SparseBinaryVector(Index domain_size,
                                       std::vector<Index> support)
    : domain_size_(domain_size), support_(std::move(support)) {
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (support_[k] >= domain_size_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "index " + to_string(support_[k]) + " out of range for N=" +
                      to_string(domain_size_));
    }
    if (k > 0 && support_[k] <= support_[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "support not strictly ascending at " + to_string(support_[k]));
    }
  }
}

SparseBinaryVector SparseBinaryVector::from_unsorted(Index domain_size,
                                                     std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return SparseBinaryVector(domain_size, std::move(indices));
}

bool SparseBinaryVector::contains(Index i) const {
  return std::binary_search(support_.begin(), support_.end(), i);
}

std::string_view family_name(Family f) {
  return f == Family::kXor ? "xor" : "shift";
}

ConvolutionFamily make_family(Family kind, const SparseBinaryVector& text,
                              const SparseBinaryVector& pattern) {
  if (kind == Family::kXor) {
    if (text.domain_size() != pattern.domain_size() ||
        !is_power_of_two(text.domain_size())) {
      throw Error(ErrorCode::kDomainMismatch,
                  "XOR needs equal power-of-two domains, got " +
                      to_string(text.domain_size()) + " and " +
                      to_string(pattern.domain_size()));
    }
    return {kind, text.domain_size()};
  }
  if (pattern.domain_size() > text.domain_size() || pattern.domain_size() == 0) {
    throw Error(ErrorCode::kDomainMismatch,
                "SHIFT needs 0 < M <= N, got M=" + to_string(pattern.domain_size()) +
                    " N=" + to_string(text.domain_size()));
  }
  return {kind, text.domain_size() - pattern.domain_size() + 1};
}

MembershipIndex::MembershipIndex(std::span<const Index> support) {
  set_.reserve(support.size());
  for (Index i : support) set_.insert(absl::uint128(i));
}

bool verify_shift_match(const MembershipIndex& text, Index text_domain,
                        const SparseBinaryVector& pattern, Index position) {
  if (pattern.domain_size() > text_domain ||
      position > text_domain - pattern.domain_size()) {
    return false;
  }
  for (Index j : pattern.support()) {
    if (!text.contains(position + j)) return false;
  }
  return true;
}

bool verify_xor_match(const MembershipIndex& text,
                      const SparseBinaryVector& pattern, Index position) {
  for (Index j : pattern.support()) {
    if (!text.contains(position ^ j)) return false;
  }
  return true;
}

}  // namespace sparseconv
