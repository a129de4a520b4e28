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

#include "sparseconv/xor_matcher.hpp"

#include <algorithm>
#include <string>

#include "sparseconv/error.hpp"
#include "sparseconv/transforms.hpp"

namespace sparseconv {
namespace {

int block_count(int index_bits, int ell) {
  return std::max(1, (index_bits + ell - 1) / ell);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "bit pass spectrum product");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "bit pass spectrum sum");
  return r;
}

// Per-bucket count of sources with `bit` set.
DenseIntVector split_on_bit(const ReducedXorVector& v, int bit) {
  DenseIntVector out(v.length(), 0);
  for (std::size_t b = 0; b < v.length(); ++b) {
    for (Index s : v.sources(b)) out[b] += static_cast<std::int64_t>((s >> bit) & 1U);
  }
  return out;
}

void require_same_length(const ReducedXorVector& a, const ReducedXorVector& b) {
  if (a.length() != b.length()) {
    throw Error(ErrorCode::kLengthMismatch, "reduced vectors use different bucket counts");
  }
}

}  // namespace

int choose_xor_bucket_bits(int index_bits, std::size_t n, std::size_t m,
                           std::uint32_t oversize_factor) {
  if (oversize_factor < 2) {
    throw Error(ErrorCode::kInvalidArgument, "oversize factor must be >= 2");
  }
  const unsigned __int128 target = static_cast<unsigned __int128>(oversize_factor) * (n + m);
  int ell = 2;
  while (ell < 64 && (static_cast<unsigned __int128>(1) << ell) < target) ++ell;
  if (ell > index_bits) ell = std::max(index_bits, 1);
  if (ell > kMaxXorBucketBits) {
    throw Error(ErrorCode::kReductionTooLarge,
                "reduced length 2^" + std::to_string(ell) + " exceeds 2^22");
  }
  return ell;
}

XorReductionParams make_xor_params(int index_bits, int bucket_bits, Gf2mElement point) {
  if (index_bits < 0 || index_bits > 128) {
    throw Error(ErrorCode::kInvalidArgument, "index width must be in [0, 128]");
  }
  XorReductionParams p{index_bits, Gf2mField(bucket_bits), 0, point};
  if (!p.field.contains(point)) {
    throw Error(ErrorCode::kFieldMismatch, "evaluation point outside GF(2^" + std::to_string(bucket_bits) + ")");
  }
  p.degree_bound = block_count(index_bits, bucket_bits) - 1;
  return p;
}

Gf2IndexPolynomial encode_index_gf2(Index i, const Gf2mField& field, int index_bits) {
  const int ell = field.ell();
  const int blocks = block_count(index_bits, ell);
  const Index mask = (Index{1} << ell) - 1;
  Gf2IndexPolynomial poly;
  poly.coeffs.reserve(static_cast<std::size_t>(blocks));
  for (int k = 0; k < blocks; ++k) {
    const int shift = k * ell;
    const Index block = shift >= 128 ? 0 : (i >> shift) & mask;
    poly.coeffs.push_back({static_cast<std::uint32_t>(block)});
  }
  return poly;
}

std::uint32_t hash_index(Index i, const XorReductionParams& params) {
  const int ell = params.field.ell();
  const Index mask = (Index{1} << ell) - 1;
  const std::uint32_t r = params.point.bits;
  std::uint32_t acc = 0;
  for (int k = params.degree_bound; k >= 0; --k) {
    const int shift = k * ell;
    const auto block = static_cast<std::uint32_t>(shift >= 128 ? 0 : (i >> shift) & mask);
    acc = params.field.mul_raw(acc, r) ^ block;
  }
  return acc;
}

Occupancy ReducedXorVector::occupancy(std::size_t b) const {
  const std::int64_t c = counts_[b];
  return c == 0 ? Occupancy::kEmpty : (c == 1 ? Occupancy::kSingleton : Occupancy::kMultiple);
}

ReducedXorVector ReducedXorVector::build(const SparseBinaryVector& v, int bucket_bits,
                                         const std::function<std::uint32_t(Index)>& bucket_of) {
  if (bucket_bits < 0 || bucket_bits > kMaxXorBucketBits + 1) {
    throw Error(ErrorCode::kReductionTooLarge, "bucket width out of range");
  }
  const std::size_t len = std::size_t{1} << bucket_bits;
  ReducedXorVector r;
  r.counts_.assign(len, 0);
  r.xors_.assign(len, 0);
  r.reps_.assign(len, 0);
  r.offsets_.assign(len + 1, 0);

  std::vector<std::uint32_t> bucket(v.count());
  for (std::size_t k = 0; k < v.count(); ++k) {
    const Index src = v.support()[k];
    const std::uint32_t b = bucket_of(src);
    check_internal(b < len, "bucket map out of range");
    bucket[k] = b;
    if (r.counts_[b]++ == 0) r.reps_[b] = src;
    r.xors_[b] ^= src;
  }
  for (std::size_t b = 0; b < len; ++b) {
    r.offsets_[b + 1] = r.offsets_[b] + static_cast<std::uint32_t>(r.counts_[b]);
  }
  r.sources_.resize(v.count());
  std::vector<std::uint32_t> fill(r.offsets_.begin(), r.offsets_.end() - 1);
  for (std::size_t k = 0; k < v.count(); ++k) r.sources_[fill[bucket[k]]++] = v.support()[k];
  return r;
}

ReducedXorVector reduce_xor(const SparseBinaryVector& v, const XorReductionParams& params) {
  if (v.domain_size() != Index{1} << params.index_bits && params.index_bits < 128) {
    throw Error(ErrorCode::kDomainMismatch, "vector domain is not 2^L for these parameters");
  }
  return ReducedXorVector::build(v, params.bucket_bits(),
                                 [&params](Index i) { return hash_index(i, params); });
}

BitVerdict BitConsistency::verdict(std::size_t k) const {
  if (ones[k] == 0) return BitVerdict::kAllZero;
  if (ones[k] == total[k]) return BitVerdict::kAllOne;
  return BitVerdict::kMixed;
}

BitConsistency bit_consistency_pass(const ReducedXorVector& text,
                                    const ReducedXorVector& pattern, int bit) {
  require_same_length(text, pattern);
  const DenseIntVector t1 = split_on_bit(text, bit);
  const DenseIntVector p1 = split_on_bit(pattern, bit);
  DenseIntVector t0(text.counts());
  DenseIntVector p0(pattern.counts());
  for (std::size_t b = 0; b < t0.size(); ++b) {
    t0[b] -= t1[b];
    p0[b] -= p1[b];
  }
  BitConsistency out;
  out.bit = bit;
  out.total = xor_correlate(text.counts(), pattern.counts());
  out.ones = xor_correlate(t0, p1);
  const DenseIntVector other = xor_correlate(t1, p0);
  for (std::size_t k = 0; k < out.ones.size(); ++k) out.ones[k] = checked_add(out.ones[k], other[k]);
  return out;
}

std::vector<BitConsistency> bit_consistency_all(const ReducedXorVector& text,
                                                const ReducedXorVector& pattern,
                                                int index_bits) {
  require_same_length(text, pattern);
  const std::size_t len = text.length();
  DenseIntVector ft(text.counts());
  DenseIntVector fp(pattern.counts());
  fwht_in_place(ft);
  fwht_in_place(fp);
  const DenseIntVector total = xor_correlate(text.counts(), pattern.counts());
  const auto n = static_cast<std::int64_t>(len);

  std::vector<BitConsistency> out;
  out.reserve(static_cast<std::size_t>(index_bits));
  for (int bit = 0; bit < index_bits; ++bit) {
    DenseIntVector ft1 = split_on_bit(text, bit);
    DenseIntVector fp1 = split_on_bit(pattern, bit);
    fwht_in_place(ft1);
    fwht_in_place(fp1);
    DenseIntVector spec(len);
    for (std::size_t k = 0; k < len; ++k) {
      const std::int64_t cross = checked_mul(ft1[k], fp1[k]);
      spec[k] = checked_add(checked_add(checked_mul(ft[k], fp1[k]), checked_mul(ft1[k], fp[k])),
                            checked_mul(-2, cross));
    }
    fwht_in_place(spec);
    for (auto& x : spec) {
      check_internal(x % n == 0, "inverse WHT division is not exact");
      x /= n;
    }
    out.push_back({bit, total, std::move(spec)});
  }
  return out;
}

XorRoundReport run_xor_round(const SparseBinaryVector& text,
                             const SparseBinaryVector& pattern,
                             const MembershipIndex& text_members,
                             const XorReductionParams& params,
                             std::uint64_t candidate_budget) {
  XorRoundReport report;
  const auto m = static_cast<std::int64_t>(pattern.count());
  const Index p0 = pattern.support().front();

  const ReducedXorVector tred = reduce_xor(text, params);
  const ReducedXorVector pred = reduce_xor(pattern, params);
  const DenseIntVector total = xor_correlate(tred.counts(), pred.counts());

  std::vector<std::size_t> hot;
  for (std::size_t k = 0; k < total.size(); ++k) {
    if (total[k] >= m) hot.push_back(k);
  }
  report.hot_buckets = hot.size();
  if (hot.empty()) return report;

  const std::vector<BitConsistency> bits = bit_consistency_all(tred, pred, params.index_bits);
  const std::uint32_t anchor_shift = hash_index(p0, params);

  const auto try_candidate = [&](Index w) {
    if (++report.candidates > candidate_budget) {
      report.overloaded = true;
      return false;
    }
    if (verify_xor_match(text_members, pattern, w)) report.verified.push_back(w);
    return true;
  };

  for (std::size_t k : hot) {
    Index w = 0;
    bool pure = true;
    for (const BitConsistency& pass : bits) {
      const BitVerdict v = pass.verdict(k);
      if (v == BitVerdict::kMixed) {
        pure = false;
        break;
      }
      if (v == BitVerdict::kAllOne) w |= Index{1} << pass.bit;
    }
    if (pure) {
      if (!try_candidate(w)) return report;
      continue;
    }
    // Any match w with hash(w) == k puts w ^ p0 in the text bucket
    // k ^ hash(p0); those sources are the complete candidate list.
    ++report.mixed_hot_buckets;
    for (Index t : tred.sources(k ^ anchor_shift)) {
      if (!try_candidate(t ^ p0)) return report;
    }
  }
  std::sort(report.verified.begin(), report.verified.end());
  report.verified.erase(std::unique(report.verified.begin(), report.verified.end()),
                        report.verified.end());
  return report;
}

MatchResult sparse_match_xor(const SparseBinaryVector& text,
                             const SparseBinaryVector& pattern,
                             const XorMatchConfig& config) {
  make_family(Family::kXor, text, pattern);
  if (pattern.empty()) throw Error(ErrorCode::kEmptyPattern, "pattern has no nonzeros");
  const Index p0 = pattern.support().front();

  MatchResult result;
  if (pattern.count() == 1) {
    for (Index t : text.support()) result.positions.push_back(t ^ p0);
    std::sort(result.positions.begin(), result.positions.end());
    return result;
  }
  if (text.count() < pattern.count()) return result;

  const int index_bits = bit_width(text.domain_size()) - 1;
  const int ell = choose_xor_bucket_bits(index_bits, text.count(), pattern.count(),
                                         config.oversize_factor);
  const MembershipIndex members(text.support());
  const std::uint64_t budget = text.count();

  for (std::uint32_t round = 0; round < config.max_rounds; ++round) {
    Rng rng(mix_seed(config.seed, round));
    const Gf2mElement point{static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << ell))};
    const XorReductionParams params = make_xor_params(index_bits, ell, point);
    XorRoundReport report = run_xor_round(text, pattern, members, params, budget);
    ++result.rounds_used;
    result.counts_checked += report.candidates;
    if (!report.overloaded) {
      result.positions = std::move(report.verified);
      return result;
    }
  }

  result.used_fallback = true;
  for (Index t : text.support()) {
    const Index w = t ^ p0;
    ++result.counts_checked;
    if (verify_xor_match(members, pattern, w)) result.positions.push_back(w);
  }
  std::sort(result.positions.begin(), result.positions.end());
  return result;
}

}  // namespace sparseconv
