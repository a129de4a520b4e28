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

#include <array>
#include <cstdint>
#include <vector>

#include "sparseconv/prime.hpp"
#include "sparseconv/shift_matcher.hpp"

namespace sparseconv::detail {

// Evaluates base polynomials and their carry variants at one assignment
// without materialising digit vectors. Variant `mask` evaluates to
//   f(base) + sum_{k in mask} (base * a^k - a^(k+1))  (mod q).
class AssignmentEvaluator {
 public:
  AssignmentEvaluator(const ShiftReductionParams& params, std::uint64_t a)
      : q_(params.q), base_(params.digit_base), c_(params.c), a_(a % params.q) {
    std::vector<std::uint64_t> pw(static_cast<std::size_t>(c_) + 2, 1);
    for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = mul_mod(pw[k - 1], a_, q_);
    offsets_.assign(std::size_t{1} << c_, 0);
    for (std::uint32_t mask = 1; mask < offsets_.size(); ++mask) {
      const int k = __builtin_ctz(mask);
      const std::uint64_t step =
          (mul_mod(base_ % q_, pw[static_cast<std::size_t>(k)], q_) + q_ - pw[static_cast<std::size_t>(k) + 1]) % q_;
      const std::uint64_t prev = offsets_[mask & (mask - 1)];
      offsets_[mask] = (prev + step) % q_;
    }
  }

  std::uint64_t base_eval(Index i) const {
    std::array<std::uint64_t, 40> d{};
    if (i >> 64 == 0) {
      auto v = static_cast<std::uint64_t>(i);
      for (int k = 0; k <= c_; ++k) {
        d[static_cast<std::size_t>(k)] = v % base_;
        v /= base_;
      }
    } else {
      Index v = i;
      for (int k = 0; k <= c_; ++k) {
        d[static_cast<std::size_t>(k)] = static_cast<std::uint64_t>(v % base_);
        v /= base_;
      }
    }
    std::uint64_t acc = 0;
    for (int k = c_; k >= 0; --k) {
      acc = mul_mod(acc, a_, q_) + d[static_cast<std::size_t>(k)];
      if (acc >= q_) acc -= q_;
    }
    return acc;
  }

  std::uint64_t variant_eval(std::uint64_t base_value, std::uint32_t mask) const {
    const std::uint64_t v = base_value + offsets_[mask];
    return v >= q_ ? v - q_ : v;
  }

  std::uint32_t variant_count() const { return static_cast<std::uint32_t>(offsets_.size()); }

 private:
  std::uint64_t q_;
  std::uint64_t base_;
  int c_;
  std::uint64_t a_;
  std::vector<std::uint64_t> offsets_;
};

}  // namespace sparseconv::detail
