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
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace sparseconv {

// Indices and domain sizes are 128-bit so that exponential-size domains can
// be represented directly.
using Index = unsigned __int128;

inline constexpr Index kIndexMax = ~Index{0};

std::string to_string(Index v);

// Strict decimal parse: digits only, no sign, no whitespace, no overflow.
std::optional<Index> parse_index(std::string_view text);

// Number of significant bits; bit_width(0) == 0.
int bit_width(Index v);

inline bool is_power_of_two(Index v) { return v != 0 && (v & (v - 1)) == 0; }

// Seeded generator with platform-independent bounded draws. std::mt19937_64
// output is fully specified by the standard; the distributions are not, so
// bounded sampling is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);
  Index below(Index bound);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed; used to give each round or grid cell
// its own generator without sharing state.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace sparseconv
