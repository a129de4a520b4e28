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

#include <algorithm>
#include <string>

#include "sparseconv/error.hpp"
#include "sparseconv/transforms.hpp"
#include "sparseconv/xor_matcher.hpp"

namespace sparseconv {
namespace {

int domain_bits(Index n) {
  if (!is_power_of_two(n) || n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "mask halving needs N = 2^L with L >= 1");
  }
  return bit_width(n) - 1;
}

MaskReduction fold(const SparseBinaryVector& v, Index mask, int bits) {
  const Index half = Index{1} << (bits - 1);
  MaskReduction r;
  r.mask = mask;
  std::vector<Index> lower;
  std::vector<Index> upper;
  std::vector<std::pair<Index, MaskLabel>> tagged;
  for (Index i : v.support()) {
    if (i < half) {
      lower.push_back(i);
      tagged.emplace_back(i, MaskLabel::kStatic);
    } else {
      upper.push_back(i - half);
      tagged.emplace_back(i ^ mask, MaskLabel::kMoved);
    }
  }
  std::sort(tagged.begin(), tagged.end());
  std::vector<Index> merged;
  merged.reserve(tagged.size());
  for (const auto& [pos, label] : tagged) {
    if (!merged.empty() && merged.back() == pos) {
      // Same position from both halves; the OR loses a nonzero.
      r.collided = true;
      continue;
    }
    merged.push_back(pos);
    r.labels.push_back(label);
  }
  r.lower = SparseBinaryVector(half, std::move(lower));
  r.upper = SparseBinaryVector(half, std::move(upper));
  r.merged = SparseBinaryVector(half, std::move(merged));
  return r;
}

DenseIntVector indicator(const MaskReduction& r, MaskLabel want) {
  DenseIntVector out(static_cast<std::size_t>(r.merged.domain_size()), 0);
  for (std::size_t k = 0; k < r.merged.count(); ++k) {
    if (r.labels[k] == want) out[static_cast<std::size_t>(r.merged.support()[k])] = 1;
  }
  return out;
}

}  // namespace

std::pair<MaskReduction, MaskReduction> mask_halving_reduce(
    const SparseBinaryVector& text, const SparseBinaryVector& pattern, Index mask) {
  if (text.domain_size() != pattern.domain_size()) {
    throw Error(ErrorCode::kInvalidArgument, "text and pattern domains differ");
  }
  const int bits = domain_bits(text.domain_size());
  if (mask >= text.domain_size() || ((mask >> (bits - 1)) & 1U) == 0) {
    throw Error(ErrorCode::kInvalidArgument, "mask must be an L-bit word with bit L-1 set");
  }
  return {fold(text, mask, bits), fold(pattern, mask, bits)};
}

MaskConsistency mask_consistency_check(const MaskReduction& text,
                                       const MaskReduction& pattern) {
  if (text.mask != pattern.mask) {
    throw Error(ErrorCode::kInvalidArgument, "reductions use different masks");
  }
  if (text.merged.domain_size() != pattern.merged.domain_size()) {
    throw Error(ErrorCode::kInvalidArgument, "reductions use different domains");
  }
  if (text.merged.domain_size() > (Index{1} << kMaxXorBucketBits)) {
    throw Error(ErrorCode::kReductionTooLarge, "folded length exceeds 2^22");
  }
  const DenseIntVector ts = indicator(text, MaskLabel::kStatic);
  const DenseIntVector tm = indicator(text, MaskLabel::kMoved);
  const DenseIntVector ps = indicator(pattern, MaskLabel::kStatic);
  const DenseIntVector pm = indicator(pattern, MaskLabel::kMoved);

  MaskConsistency out;
  out.mask = text.mask;
  out.static_mass = xor_correlate(ts, ps);
  const DenseIntVector mm = xor_correlate(tm, pm);
  out.moved_mass = xor_correlate(ts, pm);
  const DenseIntVector ms = xor_correlate(tm, ps);
  out.verdicts.resize(mm.size());
  for (std::size_t k = 0; k < mm.size(); ++k) {
    out.static_mass[k] += mm[k];
    out.moved_mass[k] += ms[k];
    const bool st = out.static_mass[k] != 0;
    const bool mv = out.moved_mass[k] != 0;
    out.verdicts[k] = !st && !mv ? MaskVerdict::kZero
                      : !mv      ? MaskVerdict::kSsMm
                      : !st      ? MaskVerdict::kMs
                                 : MaskVerdict::kInconsistent;
  }
  return out;
}

MatchResult sparse_match_xor_mask(const SparseBinaryVector& text,
                                  const SparseBinaryVector& pattern,
                                  std::uint64_t seed) {
  make_family(Family::kXor, text, pattern);
  if (pattern.empty()) throw Error(ErrorCode::kEmptyPattern, "pattern has no nonzeros");
  if (text.domain_size() < 2) {
    throw Error(ErrorCode::kMaskInapplicable, "domain too small to halve");
  }
  const int bits = bit_width(text.domain_size()) - 1;
  if (bits - 1 > kMaxXorBucketBits) {
    throw Error(ErrorCode::kReductionTooLarge,
                "folded length 2^" + std::to_string(bits - 1) + " exceeds 2^22");
  }
  const Index half = Index{1} << (bits - 1);
  const auto m = static_cast<std::int64_t>(pattern.count());

  MatchResult result;
  for (int attempt = 0; attempt < 2 * bits; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Index mask = half | rng.below(half);
    ++result.rounds_used;
    const auto [tr, pr] = mask_halving_reduce(text, pattern, mask);
    if (tr.collided || pr.collided) continue;
    // Collision-free folds are bijective on each vector, so the pair mass at
    // a folded location splits exactly into the two original locations.
    const MaskConsistency mc = mask_consistency_check(tr, pr);
    for (std::size_t k = 0; k < mc.verdicts.size(); ++k) {
      if (mc.static_mass[k] == m) result.positions.push_back(static_cast<Index>(k));
      if (mc.moved_mass[k] == m) result.positions.push_back(static_cast<Index>(k) ^ mask);
    }
    std::sort(result.positions.begin(), result.positions.end());
    return result;
  }
  throw Error(ErrorCode::kMaskInapplicable,
              "every drawn mask collided after " + std::to_string(2 * bits) + " attempts");
}

}  // namespace sparseconv
