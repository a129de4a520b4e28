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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "sparseconv/index.hpp"
#include "sparseconv/sparse_vector.hpp"

namespace sparseconv {

// ---------------------------------------------------------------------------
// Polynomial length reduction for shift convolution.
//
// An index is written in base (q-1)/2 and its digits become the coefficients
// of a degree-c polynomial over F_q. Evaluating at an assignment a gives a
// bucket in [0, q). Digit sums of two indices stay below q - 1 but may need
// carries to read as the sum's own digits, so every text index is also
// mapped through its 2^c carry variants (+base at digit k, -1 at digit k+1).
// Then base(i) + base(j) is one of the variants of i + j, and the reduced
// text holds a mark at f(base(i)) + f(base(j)) for every aligned pair.
// ---------------------------------------------------------------------------

inline constexpr int kMaxShiftDegree = 8;

struct ShiftReductionParams {
  std::uint64_t q = 0;           // odd prime
  int c = 0;                     // polynomial degree bound
  std::uint64_t digit_base = 0;  // (q - 1) / 2
};

// Validates q (odd prime, digit base >= 2) and 1 <= c <= 32. Throws
// INVALID_ARGUMENT.
ShiftReductionParams make_shift_params(std::uint64_t q, int c);

// Las Vegas mode: q = next_prime(max(4n, min_q, 5)) and the smallest c >= 1
// with ((q-1)/2)^(c+1) > N.
// Deterministic mode: for c = 1, 2, ... the smallest prime
// q > max(4n, c * 2^(c+1) * n) (the assignment pool), stopping at the first c
// whose digit range covers N.
// Throws INVALID_ARGUMENT for n == 0 and DOMAIN_TOO_LARGE_FOR_POLY when c
// would exceed 8.
ShiftReductionParams choose_params(Index domain_size, std::size_t n, bool deterministic,
                                   std::uint64_t min_q = 0);

// True when every index < domain_size has a base form under params.
bool covers_domain(const ShiftReductionParams& params, Index domain_size);

struct FqIndexPolynomial {
  std::vector<std::uint64_t> digits;  // c + 1 values in [0, q), constant first
  bool is_base = true;

  friend bool operator==(const FqIndexPolynomial&, const FqIndexPolynomial&) = default;
};

// Base-(q-1)/2 digits of i. Throws INVALID_ARGUMENT when i needs more than
// c + 1 digits.
FqIndexPolynomial encode_index_fq(Index i, const ShiftReductionParams& params);

struct VariantSet {
  Index source = 0;
  std::vector<FqIndexPolynomial> members;  // members[mask]; members[0] is the base
};

// Member `mask` applies +base at digit k and -1 at digit k+1 for every set
// bit k of mask (k < c). Digits are stored reduced mod q.
VariantSet expand_variants(Index source, const FqIndexPolynomial& base,
                           const ShiftReductionParams& params);

// Reads a (possibly variant) polynomial back as sum d_k * base^k with the
// stored digit q-1 standing for -1. Every variant of i reads back as i.
Index polynomial_value(const FqIndexPolynomial& poly, const ShiftReductionParams& params);

std::uint64_t evaluate_fq(const FqIndexPolynomial& poly, std::uint64_t q, std::uint64_t a);

enum class ShiftOccupancy : std::uint8_t { kEmpty, kSingleton, kMultiple };

// Length-q bucket array: marks per bucket, wrapping sum of source indices,
// and the source of every mark.
class ReducedShiftVector {
 public:
  std::size_t length() const { return counts_.size(); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  Index source_sum(std::size_t b) const { return sums_[b]; }
  ShiftOccupancy occupancy(std::size_t b) const;
  std::span<const Index> sources(std::size_t b) const {
    return {sources_.data() + offsets_[b], sources_.data() + offsets_[b + 1]};
  }
  std::size_t marks() const { return sources_.size(); }

  // marks: (bucket, source) pairs with bucket < length.
  static ReducedShiftVector build(std::size_t length,
                                  std::span<const std::pair<std::uint64_t, Index>> marks);

 private:
  std::vector<std::int64_t> counts_;
  std::vector<Index> sums_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Index> sources_;
};

// Evaluates polys[k] at a and records sources[k] in the resulting bucket.
// Throws LENGTH_MISMATCH when the spans differ in size, INVALID_ARGUMENT for
// a >= q.
ReducedShiftVector evaluate_mapping(std::span<const FqIndexPolynomial> polys,
                                    std::span<const Index> sources,
                                    const ShiftReductionParams& params, std::uint64_t a);

// Every text polynomial (all variants, text order, variant order) with its
// source; these are the table columns.
void text_polynomials(const SparseBinaryVector& text, const ShiftReductionParams& params,
                      std::vector<FqIndexPolynomial>& polys, std::vector<Index>& sources);

struct ShiftMatchConfig {
  std::uint64_t seed = 0;
  std::uint32_t max_rounds = 4;
};

struct ShiftRoundReport {
  std::vector<Index> verified;        // ascending
  std::size_t hot_shifts = 0;         // counts >= m
  std::size_t reconstructed = 0;      // counts == m, index recovered directly
  std::size_t anchored = 0;           // counts > m, resolved through p0's bucket
  std::uint64_t candidates = 0;       // exact verifications run
  bool overloaded = false;
};

// One round at assignment a. Requires N <= ntt_prime_primary().p so that
// index reconstruction modulo that prime is exact.
ShiftRoundReport run_shift_round(const SparseBinaryVector& text,
                                 const SparseBinaryVector& pattern,
                                 const MembershipIndex& text_members,
                                 const ShiftReductionParams& params, std::uint64_t a,
                                 std::uint64_t candidate_budget);

// Las Vegas shift matcher; output always equals oracle_match_shift. Domains
// beyond the polynomial range are first reduced modulo a prime that keeps
// the text residues distinct.
MatchResult sparse_match_shift_lasvegas(const SparseBinaryVector& text,
                                        const SparseBinaryVector& pattern,
                                        const ShiftMatchConfig& config);

// ---------------------------------------------------------------------------
// Deterministic assignment selection.
// ---------------------------------------------------------------------------

struct AssignmentTable {
  ShiftReductionParams params;
  std::uint64_t text_fingerprint = 0;
  std::vector<std::uint64_t> selected;

  // Build-time data; not persisted.
  std::vector<std::uint64_t> rows;  // assignment values examined
  std::size_t columns = 0;          // text polynomials
  std::size_t min_row_fill = 0;     // fewest set bits in any column
  std::size_t pool_size = 0;        // c * 2^(c+1) * n
  bool full_pool = false;           // rows.size() == pool_size
};

// Builds the singleton table over assignments 0, 1, ... and greedily picks
// the row covering the most surviving columns (smallest a on ties). With the
// full pool every column has at least half its rows set, which is asserted.
// When q is below the pool size all q assignments are used; this still
// covers every column whenever q > c * (2^c n - 1).
// Throws ASSIGNMENT_POOL_EXHAUSTED when coverage cannot be guaranteed,
// INVALID_ARGUMENT when params do not cover the text domain.
AssignmentTable preprocess_select_assignments(const SparseBinaryVector& text,
                                              const ShiftReductionParams& params);
AssignmentTable preprocess_select_assignments(const SparseBinaryVector& text);

// Filter-then-verify matcher driven by the selected assignments. Throws
// STALE_TABLE when the table was built for different text.
MatchResult sparse_match_shift_deterministic(const SparseBinaryVector& text,
                                             const SparseBinaryVector& pattern,
                                             const AssignmentTable& table);

// Binary table file: "LRAT", u32 version, u64 q, u32 c, u64 text
// fingerprint, u32 count, count x u64 assignments, all little-endian.
inline constexpr std::uint32_t kTableFormatVersion = 1;
void save_table(std::ostream& out, const AssignmentTable& table);
void save_table(const std::filesystem::path& path, const AssignmentTable& table);
AssignmentTable load_table(std::istream& in);
AssignmentTable load_table(const std::filesystem::path& path);

}  // namespace sparseconv
