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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "sparseconv/error.hpp"
#include "sparseconv/instance.hpp"
#include "sparseconv/oracle.hpp"
#include "sparseconv/sv_io.hpp"
#include "test_util.hpp"

namespace sparseconv {
namespace {

using testing::dense_from_bits;
using testing::digits_of;
using testing::from_bits;
using testing::idx;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInternal;
}

SparseBinaryVector random_vector(Rng& rng, Index domain, std::size_t count) {
  std::set<Index> s;
  while (s.size() < count) s.insert(rng.below(domain));
  return SparseBinaryVector(domain, {s.begin(), s.end()});
}

bool shift_predicate(const SparseBinaryVector& t, const SparseBinaryVector& p, Index i) {
  return std::all_of(p.support().begin(), p.support().end(),
                     [&](Index j) { return t.contains(i + j); });
}

bool xor_predicate(const SparseBinaryVector& t, const SparseBinaryVector& p, Index i) {
  return std::all_of(p.support().begin(), p.support().end(),
                     [&](Index j) { return t.contains(i ^ j); });
}

TEST(SparseVector, RejectsUnsortedDuplicateAndOutOfRange) {
  EXPECT_EQ(code_of([] { SparseBinaryVector(8, idx({3, 1})); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { SparseBinaryVector(8, idx({1, 1})); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { SparseBinaryVector(8, idx({8})); }), ErrorCode::kInvalidArgument);
  const auto v = SparseBinaryVector::from_unsorted(8, idx({6, 1, 6}));
  EXPECT_EQ(v.support(), idx({1, 6}));
  EXPECT_TRUE(v.contains(6));
  EXPECT_FALSE(v.contains(5));
}

TEST(SparseVector, WideIndices) {
  const Index big = Index{1} << 127;
  const SparseBinaryVector v(kIndexMax, {Index{0}, big});
  EXPECT_TRUE(v.contains(big));
  EXPECT_EQ(to_string(big), "170141183460469231731687303715884105728");
}

TEST(IndexParse, StrictDecimal) {
  EXPECT_EQ(parse_index("0"), Index{0});
  EXPECT_EQ(parse_index("340282366920938463463374607431768211455"), kIndexMax);
  EXPECT_FALSE(parse_index("340282366920938463463374607431768211456"));
  EXPECT_FALSE(parse_index(""));
  EXPECT_FALSE(parse_index("+1"));
  EXPECT_FALSE(parse_index("-1"));
  EXPECT_FALSE(parse_index("0x10"));
  EXPECT_FALSE(parse_index("12a"));
}

TEST(Family, PairingRules) {
  const SparseBinaryVector t8(8, idx({1}));
  const SparseBinaryVector p8(8, idx({0}));
  const SparseBinaryVector p4(4, idx({0}));
  const SparseBinaryVector t6(6, idx({1}));
  EXPECT_EQ(make_family(Family::kXor, t8, p8).output_length, Index{8});
  EXPECT_EQ(make_family(Family::kShift, t8, p4).output_length, Index{5});
  EXPECT_EQ(code_of([&] { make_family(Family::kXor, t8, p4); }), ErrorCode::kDomainMismatch);
  EXPECT_EQ(code_of([&] { make_family(Family::kXor, t6, SparseBinaryVector(6, idx({0}))); }),
            ErrorCode::kDomainMismatch);
  EXPECT_EQ(code_of([&] { make_family(Family::kShift, p4, t8); }), ErrorCode::kDomainMismatch);
}

TEST(Errors, MessageCarriesName) {
  const Error e(ErrorCode::kEmptyPattern, "nothing");
  EXPECT_STREQ(e.what(), "EMPTY_PATTERN: nothing");
  EXPECT_EQ(e.detail(), "nothing");
  EXPECT_EQ(error_code_name(ErrorCode::kStaleTable), "STALE_TABLE");
}

TEST(OracleShift, ThirtyEightBitFixture) {
  const auto t = from_bits("00000100101100011001010101110000000100");
  const auto p = from_bits("1000101");
  EXPECT_EQ(oracle_match_shift(t, p).positions, idx({15, 19, 21}));
}

TEST(OracleShift, SinglePointPatternKeepsValidTextPoints) {
  const auto t = from_bits("1001000011");
  const SparseBinaryVector p(3, idx({0}));
  // N - M = 7, so text point 8 and 9 are out of range.
  EXPECT_EQ(oracle_match_shift(t, p).positions, idx({0, 3}));
}

TEST(OracleShift, RandomAgainstEveryOffset) {
  Rng rng(42);
  const auto t = random_vector(rng, 4096, 64);
  auto p = random_vector(rng, 256, 8);
  // Plant one copy so the set is not trivially empty.
  std::set<Index> s(t.support().begin(), t.support().end());
  for (Index j : p.support()) s.insert(1000 + j);
  const SparseBinaryVector text(4096, {s.begin(), s.end()});
  std::vector<Index> expected;
  for (Index i = 0; i <= 4096 - 256; ++i) {
    if (shift_predicate(text, p, i)) expected.push_back(i);
  }
  EXPECT_FALSE(expected.empty());
  EXPECT_EQ(oracle_match_shift(text, p).positions, expected);
}

TEST(OracleShift, Errors) {
  const SparseBinaryVector t(8, idx({1}));
  EXPECT_EQ(code_of([&] { oracle_match_shift(t, SparseBinaryVector(4, {})); }),
            ErrorCode::kEmptyPattern);
  EXPECT_EQ(code_of([&] { oracle_match_shift(t, SparseBinaryVector(9, idx({0}))); }),
            ErrorCode::kDomainMismatch);
}

TEST(OracleXor, WalshExample) {
  EXPECT_EQ(oracle_match_xor(from_bits("01000010"), from_bits("10000001")).positions, idx({1, 6}));
}

TEST(OracleXor, SinglePointAtZeroIsIdentity) {
  const auto t = from_bits("0110100111000101");
  const SparseBinaryVector p(16, idx({0}));
  EXPECT_EQ(oracle_match_xor(t, p).positions, t.support());
}

TEST(OracleXor, RandomAgainstEveryOutput) {
  Rng rng(7);
  const auto p = random_vector(rng, 1024, 4);
  std::set<Index> s;
  for (Index w : {Index{37}, Index{801}}) {
    for (Index j : p.support()) s.insert(w ^ j);
  }
  for (Index i : random_vector(rng, 1024, 100).support()) s.insert(i);
  const SparseBinaryVector t(1024, {s.begin(), s.end()});
  std::vector<Index> expected;
  for (Index i = 0; i < 1024; ++i) {
    std::int64_t sum = 0;
    for (Index j : p.support()) sum += t.contains(i ^ j) ? 1 : 0;
    if (sum == static_cast<std::int64_t>(p.count())) expected.push_back(i);
  }
  const MatchResult r = oracle_match_xor(t, p);
  EXPECT_EQ(r.positions, expected);

  // Reported positions satisfy the predicate; sampled others do not.
  for (Index i : r.positions) EXPECT_TRUE(xor_predicate(t, p, i));
  for (int k = 0; k < 100; ++k) {
    const Index i = rng.below(Index{1024});
    if (!std::binary_search(r.positions.begin(), r.positions.end(), i)) {
      EXPECT_FALSE(xor_predicate(t, p, i));
    }
  }
}

TEST(OracleXor, Errors) {
  EXPECT_EQ(code_of([] { oracle_match_xor(SparseBinaryVector(8, idx({1})), SparseBinaryVector(4, idx({1}))); }),
            ErrorCode::kDomainMismatch);
  EXPECT_EQ(code_of([] { oracle_match_xor(SparseBinaryVector(8, idx({1})), SparseBinaryVector(8, {})); }),
            ErrorCode::kEmptyPattern);
}

TEST(DotConvolution, WalshExample) {
  const auto out = oracle_dot_convolution(dense_from_bits("01000010"), dense_from_bits("10000001"),
                                          Family::kXor);
  EXPECT_EQ(digits_of(out), "02000020");
}

TEST(DotConvolution, DeltaIsIdentity) {
  const DenseIntVector v1 = {3, 0, 1, 4, 1, 5, 9, 2};
  DenseIntVector delta(8, 0);
  delta[0] = 1;
  EXPECT_EQ(oracle_dot_convolution(v1, delta, Family::kXor), v1);
  const DenseIntVector d1 = {1};
  EXPECT_EQ(oracle_dot_convolution(v1, d1, Family::kShift), v1);
  const DenseIntVector d3 = {1, 0, 0};
  EXPECT_EQ(oracle_dot_convolution(v1, d3, Family::kShift), DenseIntVector(v1.begin(), v1.end() - 2));
}

TEST(DotConvolution, ShiftAgainstSchoolbook) {
  Rng rng(3);
  DenseIntVector a(64), b(64);
  for (auto& x : a) x = static_cast<std::int64_t>(rng.below(std::uint64_t{2}));
  for (auto& x : b) x = static_cast<std::int64_t>(rng.below(std::uint64_t{2}));
  const auto out = oracle_dot_convolution(a, b, Family::kShift);
  ASSERT_EQ(out.size(), 1U);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < 64; ++i) s += a[i] * b[i];
  EXPECT_EQ(out[0], s);

  const DenseIntVector b16(b.begin(), b.begin() + 16);
  const auto out16 = oracle_dot_convolution(a, b16, Family::kShift);
  ASSERT_EQ(out16.size(), 49U);
  for (std::size_t j = 0; j < out16.size(); ++j) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < 16; ++i) acc += a[i + j] * b16[i];
    EXPECT_EQ(out16[j], acc);
  }
}

TEST(DotConvolution, XorTwoWaysAgree) {
  Rng rng(11);
  for (std::size_t len = 1; len <= 256; len *= 2) {
    DenseIntVector a(len), b(len);
    for (auto& x : a) x = static_cast<std::int64_t>(rng.below(std::uint64_t{7})) - 3;
    for (auto& x : b) x = static_cast<std::int64_t>(rng.below(std::uint64_t{7})) - 3;
    // Scatter every product to its output instead of gathering per output.
    DenseIntVector scatter(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t k = 0; k < len; ++k) scatter[i ^ k] += a[k] * b[i];
    }
    EXPECT_EQ(oracle_dot_convolution(a, b, Family::kXor), scatter) << len;
  }
}

TEST(DotConvolution, GuardrailAndOverflow) {
  const DenseIntVector big((std::size_t{1} << 16) + 1, 0);
  const DenseIntVector one = {1};
  EXPECT_EQ(code_of([&] { oracle_dot_convolution(big, one, Family::kShift); }),
            ErrorCode::kOracleTooLarge);
  const DenseIntVector huge = {INT64_MAX, INT64_MAX};
  const DenseIntVector twos = {2, 2};
  EXPECT_EQ(code_of([&] { oracle_dot_convolution(huge, twos, Family::kXor); }), ErrorCode::kOverflow);
}

TEST(GenInstance, NoiseOnly) {
  InstanceSpec spec{Family::kShift, 1 << 12, 0, 16, 4, 0, 5};
  const Instance inst = gen_instance(spec);
  EXPECT_LE(inst.text.count(), 16U);
  EXPECT_TRUE(inst.planted_positions.empty());
  EXPECT_EQ(inst.pattern.support().front(), Index{0});
}

TEST(GenInstance, XorPlantedAreMatches) {
  InstanceSpec spec{Family::kXor, 1 << 16, 0, 128, 8, 3, 1};
  const Instance inst = gen_instance(spec);
  EXPECT_EQ(inst.planted_positions.size(), 3U);
  const auto found = oracle_match_xor(inst.text, inst.pattern).positions;
  for (Index w : inst.planted_positions) {
    EXPECT_TRUE(std::binary_search(found.begin(), found.end(), w));
  }
}

TEST(GenInstance, Deterministic) {
  InstanceSpec spec{Family::kShift, 1 << 20, 0, 300, 12, 2, 77};
  const Instance a = gen_instance(spec);
  const Instance b = gen_instance(spec);
  EXPECT_EQ(serialize_sparse(a.text), serialize_sparse(b.text));
  EXPECT_EQ(serialize_sparse(a.pattern), serialize_sparse(b.pattern));
  EXPECT_EQ(a.planted_positions, b.planted_positions);
  spec.seed = 78;
  EXPECT_NE(serialize_sparse(gen_instance(spec).text), serialize_sparse(a.text));
}

TEST(GenInstance, PlantedAlwaysContainedInOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Family fam = seed % 2 == 0 ? Family::kShift : Family::kXor;
    InstanceSpec spec{fam, 1 << 14, 0, 50 + seed, 1 + seed % 9, seed % 4, seed};
    const Instance inst = gen_instance(spec);
    EXPECT_LE(inst.text.count(), spec.noise + spec.planted * spec.pattern_count);
    const auto found = fam == Family::kShift ? oracle_match_shift(inst.text, inst.pattern).positions
                                             : oracle_match_xor(inst.text, inst.pattern).positions;
    for (Index w : inst.planted_positions) {
      EXPECT_TRUE(std::binary_search(found.begin(), found.end(), w)) << seed;
    }
  }
}

TEST(GenInstance, Infeasible) {
  EXPECT_EQ(code_of([] { gen_instance({Family::kShift, 16, 0, 4, 8, 1, 0}); }),
            ErrorCode::kInfeasibleInstance);  // m > n
  EXPECT_EQ(code_of([] { gen_instance({Family::kXor, 16, 0, 40, 2, 0, 0}); }),
            ErrorCode::kInfeasibleInstance);  // more noise than room
  EXPECT_EQ(code_of([] { gen_instance({Family::kXor, 12, 0, 4, 2, 0, 0}); }),
            ErrorCode::kInfeasibleInstance);  // XOR needs 2^L
}

TEST(SvIo, ParsesExampleFile) {
  std::istringstream in("N=8\n1\n6\n");
  const SparseBinaryVector v = read_sparse(in);
  EXPECT_EQ(v.domain_size(), Index{8});
  EXPECT_EQ(v.support(), idx({1, 6}));
}

TEST(SvIo, CommentsAndBlankLines) {
  std::istringstream in("# header\n\nN=8\n# mid\n1\n\n6\n");
  EXPECT_EQ(read_sparse(in).support(), idx({1, 6}));
}

TEST(SvIo, RoundTrip) {
  Rng rng(9);
  const auto v = random_vector(rng, Index{1} << 100, 50);
  std::stringstream s;
  write_sparse(s, v);
  EXPECT_EQ(read_sparse(s), v);
  std::istringstream again(serialize_sparse(v));
  EXPECT_EQ(fingerprint(v), fingerprint(read_sparse(again)));
}

TEST(SvIo, ErrorsCarryLineNumbers) {
  const auto message = [](const char* text) {
    std::istringstream in(text);
    try {
      read_sparse(in);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError);
      return e.detail();
    }
    return std::string("no error");
  };
  EXPECT_NE(message("N=8\n1\n9\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("N=8\n6\n1\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("N=8\n1\n1\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("1\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("N=8\nx\n").find("line 2"), std::string::npos);
}

TEST(SvIo, PositionsFormat) {
  std::ostringstream out;
  const auto p = idx({15, 19, 21});
  write_positions(out, p);
  EXPECT_EQ(out.str(), "15\n19\n21\n");
}

TEST(SvIo, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { read_sparse(std::filesystem::path("/nonexistent/x.sv")); }), ErrorCode::kIoError);
}

TEST(RngDraws, BoundedAndReproducible) {
  Rng a(5), b(5);
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t x = a.below(std::uint64_t{37});
    EXPECT_LT(x, 37U);
    EXPECT_EQ(x, b.below(std::uint64_t{37}));
  }
  const Index bound = (Index{1} << 100) + 3;
  for (int k = 0; k < 100; ++k) EXPECT_LT(a.below(bound), bound);
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
}

}  // namespace
}  // namespace sparseconv
