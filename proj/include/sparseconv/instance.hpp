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

struct InstanceSpec {
  Family family = Family::kShift;
  Index text_domain = 0;     // N
  Index pattern_domain = 0;  // M; 0 selects the default (N for XOR, max(m, N/4) for SHIFT)
  std::size_t noise = 0;     // n: uniform noise nonzeros in the text
  std::size_t pattern_count = 0;  // m
  std::size_t planted = 0;
  std::uint64_t seed = 0;
};

struct Instance {
  SparseBinaryVector text;
  SparseBinaryVector pattern;
  std::vector<Index> planted_positions;  // ascending
};

// Pattern: m distinct indices (SHIFT always contains 0). Text: `planted`
// shifted (or xored) copies of the pattern at distinct recorded positions,
// united with n distinct uniform noise points, so |text| <= n + planted * m.
// Deterministic in the seed. Throws INFEASIBLE_INSTANCE.
Instance gen_instance(const InstanceSpec& spec);

}  // namespace sparseconv
