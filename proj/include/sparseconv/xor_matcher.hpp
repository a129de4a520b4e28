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
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sparseconv/gf2m.hpp"
#include "sparseconv/oracle.hpp"
#include "sparseconv/sparse_vector.hpp"

namespace sparseconv {

// ---------------------------------------------------------------------------
// Polynomial length reduction for XOR convolution.
//
// An L-bit index is cut into ell-bit blocks (least significant first); the
// blocks are the coefficients of a polynomial over GF(2^ell). Evaluating at a
// random point r gives a bucket in [0, 2^ell). Since field addition is XOR
// and the encoding is bitwise, the map is F_2-linear:
//   hash(i ^ j) == hash(i) ^ hash(j),
// so XOR alignments survive the reduction. Two distinct indices collide only
// when r is a root of their (nonzero) difference polynomial, i.e. for at
// most d = ceil(L / ell) - 1 of the 2^ell evaluation points.
// ---------------------------------------------------------------------------

struct XorReductionParams {
  int index_bits = 0;  // L, the text domain is 2^L
  Gf2mField field{2};  // GF(2^ell)
  int degree_bound = 0;
  Gf2mElement point;   // evaluation point r

  int bucket_bits() const { return field.ell(); }
};

inline constexpr int kMaxXorBucketBits = 22;

// Smallest ell >= 2 with 2^ell >= oversize_factor * (n + m), capped at L
// (at L the map is the identity). Throws INVALID_ARGUMENT for
// oversize_factor < 2 and REDUCTION_TOO_LARGE when ell would exceed 22.
int choose_xor_bucket_bits(int index_bits, std::size_t n, std::size_t m,
                           std::uint32_t oversize_factor);

XorReductionParams make_xor_params(int index_bits, int bucket_bits, Gf2mElement point);

struct Gf2IndexPolynomial {
  std::vector<Gf2mElement> coeffs;  // constant term first
};

Gf2IndexPolynomial encode_index_gf2(Index i, const Gf2mField& field, int index_bits);

// Bucket of index i: the encoding polynomial evaluated at params.point.
std::uint32_t hash_index(Index i, const XorReductionParams& params);

enum class Occupancy : std::uint8_t { kEmpty, kSingleton, kMultiple };

// Bucketed view of a sparse vector: per-bucket count, XOR of the source
// indices, a representative (the unique source for singletons) and the full
// source list.
class ReducedXorVector {
 public:
  std::size_t length() const { return counts_.size(); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  Index xor_of_indices(std::size_t b) const { return xors_[b]; }
  Index representative(std::size_t b) const { return reps_[b]; }
  Occupancy occupancy(std::size_t b) const;
  std::span<const Index> sources(std::size_t b) const {
    return {sources_.data() + offsets_[b], sources_.data() + offsets_[b + 1]};
  }
  std::size_t mapped() const { return sources_.size(); }

  // Buckets by an arbitrary map into [0, 2^bucket_bits).
  static ReducedXorVector build(const SparseBinaryVector& v, int bucket_bits,
                                const std::function<std::uint32_t(Index)>& bucket_of);

 private:
  std::vector<std::int64_t> counts_;
  std::vector<Index> xors_;
  std::vector<Index> reps_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Index> sources_;
};

ReducedXorVector reduce_xor(const SparseBinaryVector& v, const XorReductionParams& params);

enum class BitVerdict : std::uint8_t { kAllZero, kAllOne, kMixed };

struct BitConsistency {
  int bit = 0;
  DenseIntVector total;  // contributing (text, pattern) pairs per bucket
  DenseIntVector ones;   // pairs whose output index has the bit set
  BitVerdict verdict(std::size_t k) const;
};

// Splits both reduced vectors by bit b of the source indices and computes
//   ones[k] = corr(T_b0, P_b1)[k] + corr(T_b1, P_b0)[k],
//   total[k] = corr(T, P)[k],
// with xor_correlate. A bucket is ALL_ZERO / ALL_ONE when every contributing
// pair agrees on that output bit. Throws LENGTH_MISMATCH, OVERFLOW.
BitConsistency bit_consistency_pass(const ReducedXorVector& text,
                                    const ReducedXorVector& pattern, int bit);

// All bits 0..index_bits-1 at once. Shares the transforms of the unsplit
// vectors: per bit the ones spectrum is
//   F(T) F(P1) + F(T1) F(P) - 2 F(T1) F(P1),
// so each bit costs three FWHTs instead of nine. Results equal
// bit_consistency_pass bit for bit.
std::vector<BitConsistency> bit_consistency_all(const ReducedXorVector& text,
                                                const ReducedXorVector& pattern,
                                                int index_bits);

struct XorMatchConfig {
  std::uint32_t oversize_factor = 8;
  std::uint32_t max_rounds = 4;
  std::uint64_t seed = 0;
};

struct XorRoundReport {
  std::vector<Index> verified;       // ascending
  std::size_t hot_buckets = 0;       // total >= m
  std::size_t mixed_hot_buckets = 0; // hot and impure on some bit
  std::uint64_t candidates = 0;      // exact verifications run
  bool overloaded = false;           // candidate budget exceeded; round void
};

// One reduction / convolution / verification / expansion pass at the given
// evaluation point. Pure hot buckets are expanded from their per-bit
// verdicts; impure ones are expanded through the text bucket aligned with
// the first pattern point. Unless overloaded, `verified` is the complete
// match set. `candidate_budget` caps verifications before the round is
// abandoned.
XorRoundReport run_xor_round(const SparseBinaryVector& text,
                             const SparseBinaryVector& pattern,
                             const MembershipIndex& text_members,
                             const XorReductionParams& params,
                             std::uint64_t candidate_budget);

// Las Vegas sparse XOR matcher; the output always equals oracle_match_xor.
MatchResult sparse_match_xor(const SparseBinaryVector& text,
                             const SparseBinaryVector& pattern,
                             const XorMatchConfig& config);

// ---------------------------------------------------------------------------
// Mask halving: fold the upper half of the domain onto the lower half through
// t -> t ^ mask (mask has bit L-1 set), labelling each nonzero static (s) or
// moved (m). The fold is linear, so alignments are preserved.
// ---------------------------------------------------------------------------

enum class MaskLabel : std::uint8_t { kStatic, kMoved };

struct MaskReduction {
  Index mask = 0;
  SparseBinaryVector lower;   // T1 over 2^(L-1)
  SparseBinaryVector upper;   // T2 over 2^(L-1), unmasked (index - 2^(L-1))
  SparseBinaryVector merged;  // T1 | T2^mask
  std::vector<MaskLabel> labels;  // parallel to merged.support()
  bool collided = false;          // some position received both an s and an m
};

// Throws INVALID_ARGUMENT unless N = 2^L with L >= 1, both inputs share N and
// bit L-1 of mask is set (mask < N).
std::pair<MaskReduction, MaskReduction> mask_halving_reduce(
    const SparseBinaryVector& text, const SparseBinaryVector& pattern, Index mask);

enum class MaskVerdict : std::uint8_t { kZero, kSsMm, kMs, kInconsistent };

struct MaskConsistency {
  Index mask = 0;
  DenseIntVector static_mass;  // s*s + m*m pairs: output index k
  DenseIntVector moved_mass;   // s*m + m*s pairs: output index k ^ mask
  std::vector<MaskVerdict> verdicts;
};

// Four indicator xor-correlations (s/m text x s/m pattern). Throws
// INVALID_ARGUMENT for unequal masks, REDUCTION_TOO_LARGE when the folded
// length exceeds 2^22.
MaskConsistency mask_consistency_check(const MaskReduction& text,
                                       const MaskReduction& pattern);

// Exact matcher built on one collision-free halving. Retries fresh masks up
// to 2L times, then throws MASK_INAPPLICABLE.
MatchResult sparse_match_xor_mask(const SparseBinaryVector& text,
                                  const SparseBinaryVector& pattern,
                                  std::uint64_t seed);

}  // namespace sparseconv
