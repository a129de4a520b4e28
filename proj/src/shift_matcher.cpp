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

#include "sparseconv/shift_matcher.hpp"

#include <algorithm>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "shift_internal.hpp"
#include "sparseconv/error.hpp"
#include "sparseconv/prime.hpp"
#include "sparseconv/prime_search.hpp"
#include "sparseconv/transforms.hpp"

namespace sparseconv {
namespace {

// Above this text size the pairwise-difference product gets too large and
// separating primes are drawn at random and checked directly instead.
constexpr std::size_t kProductSearchLimit = 512;
constexpr int kSeparatingPrimeBits = 40;

std::uint64_t to_residue(Index v, std::uint64_t p) { return static_cast<std::uint64_t>(v % p); }

// Smallest odd q whose digit base b = (q-1)/2 satisfies b^(max degree + 1) > N.
std::uint64_t min_q_for_domain(Index domain_size) {
  std::uint64_t b = 2;
  for (;; ++b) {
    Index acc = 1;
    bool over = false;
    for (int k = 0; k <= kMaxShiftDegree; ++k) {
      if (acc > kIndexMax / b) {
        over = true;
        break;
      }
      acc *= b;
    }
    if (over || acc > domain_size) break;
  }
  return 2 * b + 1;
}

MatchResult single_point_matches(const SparseBinaryVector& text, Index p0, Index last) {
  MatchResult result;
  for (Index t : text.support()) {
    if (t >= p0 && t - p0 <= last) result.positions.push_back(t - p0);
  }
  return result;
}

void exhaustive(const SparseBinaryVector& text, const SparseBinaryVector& pattern,
                const MembershipIndex& members, MatchResult& result) {
  const Index last = text.domain_size() - pattern.domain_size();
  const Index p0 = pattern.support().front();
  result.used_fallback = true;
  result.positions.clear();
  for (Index t : text.support()) {
    if (t < p0 || t - p0 > last) continue;
    ++result.counts_checked;
    if (verify_shift_match(members, text.domain_size(), pattern, t - p0)) {
      result.positions.push_back(t - p0);
    }
  }
}

MatchResult match_polynomial(const SparseBinaryVector& text, const SparseBinaryVector& pattern,
                             const ShiftMatchConfig& config, std::uint64_t min_q) {
  const ShiftReductionParams params = choose_params(text.domain_size(), text.count(), false, min_q);
  const MembershipIndex members(text.support());
  const std::uint64_t budget = text.count();
  MatchResult result;
  for (std::uint32_t round = 0; round < config.max_rounds; ++round) {
    Rng rng(mix_seed(config.seed, round));
    const std::uint64_t a = rng.below(params.q);
    ShiftRoundReport report = run_shift_round(text, pattern, members, params, a, budget);
    ++result.rounds_used;
    result.counts_checked += report.candidates;
    if (!report.overloaded) {
      result.positions = std::move(report.verified);
      return result;
    }
  }
  exhaustive(text, pattern, members, result);
  return result;
}

std::uint64_t separating_prime(std::span<const Index> indices, std::uint64_t seed) {
  if (indices.size() <= kProductSearchLimit) {
    for (std::size_t count = 64; count <= (std::size_t{1} << 16); count *= 2) {
      try {
        return exp_prime_search(indices, prime_pool(count, kSeparatingPrimeBits));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPoolTooSmall) throw;
      }
    }
    throw Error(ErrorCode::kPoolTooSmall, "no separating prime among 2^16 candidates");
  }
  Rng rng(mix_seed(seed, 0x5e9a));
  const std::uint64_t lo = std::uint64_t{1} << (kSeparatingPrimeBits - 1);
  absl::flat_hash_set<std::uint64_t> residues;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::uint64_t p = next_prime(lo + rng.below(lo - 4096));
    residues.clear();
    residues.reserve(indices.size());
    bool distinct = true;
    for (Index i : indices) {
      if (!residues.insert(to_residue(i, p)).second) {
        distinct = false;
        break;
      }
    }
    if (distinct) return p;
  }
  throw Error(ErrorCode::kInternal, "64 random primes all collided on the text");
}

// Domains beyond the NTT prime: reduce every index modulo a prime p that
// separates the text. A match i satisfies (i mod p) + (j mod p) in
// {t mod p, t mod p + p}, so matches survive in the reduced instance and each
// reduced match names at most one text point to verify.
MatchResult match_via_prime(const SparseBinaryVector& text, const SparseBinaryVector& pattern,
                            const ShiftMatchConfig& config) {
  const std::uint64_t p = separating_prime(text.support(), config.seed);
  absl::flat_hash_map<std::uint64_t, Index> by_residue;
  std::vector<Index> reduced_text;
  reduced_text.reserve(2 * text.count());
  for (Index t : text.support()) {
    const std::uint64_t r = to_residue(t, p);
    by_residue.emplace(r, t);
    reduced_text.push_back(r);
    reduced_text.push_back(static_cast<Index>(r) + p);
  }
  std::vector<Index> reduced_pattern;
  reduced_pattern.reserve(pattern.count());
  for (Index j : pattern.support()) reduced_pattern.push_back(to_residue(j, p));

  const Index rdomain = static_cast<Index>(p) * 2;
  const auto rt = SparseBinaryVector::from_unsorted(rdomain, std::move(reduced_text));
  const auto rp = SparseBinaryVector::from_unsorted(p, std::move(reduced_pattern));
  ShiftMatchConfig inner_config = config;
  inner_config.seed = mix_seed(config.seed, 0x1a7e);
  const MatchResult inner = rp.count() == 1
                                ? single_point_matches(rt, rp.support().front(), rdomain - p)
                                : match_polynomial(rt, rp, inner_config, min_q_for_domain(rdomain));

  const MembershipIndex members(text.support());
  const Index last = text.domain_size() - pattern.domain_size();
  const Index p0 = pattern.support().front();
  const std::uint64_t p0r = to_residue(p0, p);
  MatchResult result;
  result.rounds_used = inner.rounds_used;
  result.counts_checked = inner.counts_checked;
  result.used_fallback = inner.used_fallback;
  for (Index ir : inner.positions) {
    const std::uint64_t want = static_cast<std::uint64_t>((ir + p0r) % p);
    const auto it = by_residue.find(want);
    if (it == by_residue.end()) continue;
    const Index t = it->second;
    if (t < p0 || t - p0 > last) continue;
    ++result.counts_checked;
    if (verify_shift_match(members, text.domain_size(), pattern, t - p0)) {
      result.positions.push_back(t - p0);
    }
  }
  std::sort(result.positions.begin(), result.positions.end());
  result.positions.erase(std::unique(result.positions.begin(), result.positions.end()),
                         result.positions.end());
  return result;
}

}  // namespace

ShiftRoundReport run_shift_round(const SparseBinaryVector& text,
                                 const SparseBinaryVector& pattern,
                                 const MembershipIndex& text_members,
                                 const ShiftReductionParams& params, std::uint64_t a,
                                 std::uint64_t candidate_budget) {
  const std::uint64_t big = ntt_prime_primary().p;
  if (text.domain_size() > big) {
    throw Error(ErrorCode::kInvalidArgument, "round needs N below the NTT prime");
  }
  const std::uint64_t q = params.q;
  const detail::AssignmentEvaluator eval(params, a);
  const std::uint32_t variants = eval.variant_count();

  // Text marks: every variant of every nonzero, with index weights mod the
  // NTT prime and a bucket -> source list for anchor resolution.
  std::vector<std::int64_t> tmarks(q, 0);
  std::vector<std::uint64_t> tweights(q, 0);
  std::vector<std::uint64_t> tbucket(text.count() * variants);
  for (std::size_t x = 0; x < text.count(); ++x) {
    const Index t = text.support()[x];
    const std::uint64_t tb = eval.base_eval(t);
    const auto tw = static_cast<std::uint64_t>(t);  // N < 2^64 here
    for (std::uint32_t v = 0; v < variants; ++v) {
      const std::uint64_t b = eval.variant_eval(tb, v);
      tbucket[x * variants + v] = b;
      ++tmarks[b];
      tweights[b] += tw;
      if (tweights[b] >= big) tweights[b] -= big;
    }
  }
  std::vector<std::uint32_t> offsets(q + 1, 0);
  for (std::size_t b = 0; b < q; ++b) offsets[b + 1] = offsets[b] + static_cast<std::uint32_t>(tmarks[b]);
  std::vector<Index> bucket_sources(tbucket.size());
  {
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t k = 0; k < tbucket.size(); ++k) {
      bucket_sources[fill[tbucket[k]]++] = text.support()[k / variants];
    }
  }

  std::vector<std::int64_t> pmarks(q, 0);
  std::vector<std::uint64_t> pmarks_mod(q, 0);
  std::uint64_t sum_j = 0;
  for (Index j : pattern.support()) {
    const std::uint64_t b = eval.base_eval(j);
    ++pmarks[b];
    ++pmarks_mod[b];
    sum_j = (sum_j + static_cast<std::uint64_t>(j)) % big;
  }

  const DenseIntVector counts = cyclic_correlate(tmarks, pmarks);
  const std::vector<std::uint64_t> weighted = cyclic_correlate_mod(tweights, pmarks_mod);

  const auto m = static_cast<std::int64_t>(pattern.count());
  const std::uint64_t m_inv = pow_mod(static_cast<std::uint64_t>(m) % big, big - 2, big);
  const Index last = text.domain_size() - pattern.domain_size();
  const Index p0 = pattern.support().front();
  const std::uint64_t f0 = eval.base_eval(p0);

  ShiftRoundReport report;
  const auto try_candidate = [&](Index i) {
    if (++report.candidates > candidate_budget) {
      report.overloaded = true;
      return false;
    }
    if (verify_shift_match(text_members, text.domain_size(), pattern, i)) report.verified.push_back(i);
    return true;
  };

  for (std::uint64_t s = 0; s < q; ++s) {
    if (counts[s] < m) continue;
    ++report.hot_shifts;
    if (counts[s] == m) {
      // Exactly m aligned pairs: at a true match they are (i + j, j) for
      // every j, so the weighted sum is m*i + sum j.
      ++report.reconstructed;
      const std::uint64_t diff = (weighted[s] + big - sum_j) % big;
      const Index i = mul_mod(diff, m_inv, big);
      if (i <= last && eval.base_eval(i) == s && !try_candidate(i)) return report;
      continue;
    }
    // Any match i at shift s has a mark of i + p0 in bucket s + f(p0).
    ++report.anchored;
    const std::uint64_t b = (s + f0) % q;
    Index prev = kIndexMax;
    for (std::uint32_t k = offsets[b]; k < offsets[b + 1]; ++k) {
      const Index t = bucket_sources[k];
      if (t == prev) continue;  // several variants of one source
      prev = t;
      if (t < p0 || t - p0 > last) continue;
      const Index i = t - p0;
      if (eval.base_eval(i) != s) continue;
      if (!try_candidate(i)) return report;
    }
  }
  std::sort(report.verified.begin(), report.verified.end());
  report.verified.erase(std::unique(report.verified.begin(), report.verified.end()),
                        report.verified.end());
  return report;
}

MatchResult sparse_match_shift_lasvegas(const SparseBinaryVector& text,
                                        const SparseBinaryVector& pattern,
                                        const ShiftMatchConfig& config) {
  if (pattern.empty()) throw Error(ErrorCode::kEmptyPattern, "pattern has no nonzeros");
  make_family(Family::kShift, text, pattern);
  const Index last = text.domain_size() - pattern.domain_size();
  if (pattern.count() == 1) return single_point_matches(text, pattern.support().front(), last);
  if (text.count() < pattern.count()) return {};
  if (text.domain_size() <= ntt_prime_primary().p) {
    return match_polynomial(text, pattern, config, min_q_for_domain(text.domain_size()));
  }
  return match_via_prime(text, pattern, config);
}

}  // namespace sparseconv
