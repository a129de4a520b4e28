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

#include "sparseconv/index.hpp"

#include <algorithm>

#include "sparseconv/error.hpp"

namespace sparseconv {

std::string to_string(Index v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<Index> parse_index(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Index v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') return std::nullopt;
    const auto digit = static_cast<unsigned>(ch - '0');
    if (v > (kIndexMax - digit) / 10) return std::nullopt;
    v = v * 10 + digit;
  }
  return v;
}

int bit_width(Index v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 128 - __builtin_clzll(hi);
  const auto lo = static_cast<std::uint64_t>(v);
  return lo == 0 ? 0 : 64 - __builtin_clzll(lo);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::below(0)");
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = engine_();
  auto m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Index Rng::below(Index bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::below(0)");
  if ((bound >> 64) == 0) return below(static_cast<std::uint64_t>(bound));
  // Rejection sampling on the smallest covering bit mask.
  const int width = bit_width(bound - 1);
  const Index mask = width >= 128 ? kIndexMax : ((Index{1} << width) - 1);
  for (;;) {
    const Index hi = engine_();
    const Index v = ((hi << 64) | engine_()) & mask;
    if (v < bound) return v;
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sparseconv
