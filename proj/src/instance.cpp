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

#include "sparseconv/instance.hpp"

#include <algorithm>
#include <numeric>

#include "sparseconv/error.hpp"

namespace sparseconv {
namespace {

// `count` distinct values from [lo, lo + width), in draw order.
std::vector<Index> sample_distinct(Rng& rng, Index lo, Index width,
                                   std::size_t count) {
  std::vector<Index> out;
  out.reserve(count);
  if (count == 0) return out;
  if (width <= Index{2} * count) {
    // Dense case: partial Fisher-Yates over the full range.
    std::vector<Index> all(static_cast<std::size_t>(width));
    std::iota(all.begin(), all.end(), lo);
    for (std::size_t k = 0; k < count; ++k) {
      const auto pick = k + static_cast<std::size_t>(rng.below(
                                static_cast<std::uint64_t>(all.size() - k)));
      std::swap(all[k], all[pick]);
      out.push_back(all[k]);
    }
    return out;
  }
  absl::flat_hash_set<absl::uint128> seen;
  seen.reserve(count);
  while (out.size() < count) {
    const Index v = lo + rng.below(width);
    if (seen.insert(absl::uint128(v)).second) out.push_back(v);
  }
  return out;
}

[[noreturn]] void infeasible(const std::string& why) {
  throw Error(ErrorCode::kInfeasibleInstance, why);
}

}  // namespace

Instance gen_instance(const InstanceSpec& spec) {
  const Index n_dom = spec.text_domain;
  const std::size_t m = spec.pattern_count;
  if (m == 0) infeasible("pattern needs at least one nonzero");
  if (spec.noise < m) infeasible("need n >= m");
  if (n_dom == 0) infeasible("empty text domain");
  if (spec.family == Family::kXor && !is_power_of_two(n_dom)) {
    infeasible("XOR domain must be a power of two");
  }

  Index m_dom = spec.pattern_domain;
  if (spec.family == Family::kXor) {
    if (m_dom != 0 && m_dom != n_dom) infeasible("XOR pattern domain must equal N");
    m_dom = n_dom;
  } else if (m_dom == 0) {
    m_dom = std::max<Index>(m, n_dom / 4);
  }
  if (m_dom > n_dom) infeasible("pattern domain exceeds text domain");
  if (Index{m} > m_dom) infeasible("m exceeds pattern domain");
  if (Index{spec.noise} > n_dom) infeasible("n exceeds text domain");
  const Index slots = spec.family == Family::kXor ? n_dom : n_dom - m_dom + 1;
  if (Index{spec.planted} > slots) infeasible("too many planted copies for the domain");

  Rng rng(spec.seed);
  std::vector<Index> pattern;
  if (spec.family == Family::kShift) {
    pattern = sample_distinct(rng, 1, m_dom - 1, m - 1);
    pattern.push_back(0);
  } else {
    pattern = sample_distinct(rng, 0, m_dom, m);
  }

  std::vector<Index> planted = sample_distinct(rng, 0, slots, spec.planted);
  std::sort(planted.begin(), planted.end());

  std::vector<Index> text = sample_distinct(rng, 0, n_dom, spec.noise);
  text.reserve(text.size() + planted.size() * m);
  for (Index pos : planted) {
    for (Index j : pattern) {
      text.push_back(spec.family == Family::kXor ? (pos ^ j) : (pos + j));
    }
  }

  Instance out;
  out.text = SparseBinaryVector::from_unsorted(n_dom, std::move(text));
  out.pattern = SparseBinaryVector::from_unsorted(m_dom, std::move(pattern));
  out.planted_positions = std::move(planted);
  return out;
}

}  // namespace sparseconv
