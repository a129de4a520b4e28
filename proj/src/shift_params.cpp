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
#include "sparseconv/prime.hpp"
#include "sparseconv/shift_matcher.hpp"

namespace sparseconv {
namespace {

// base^(c+1) > N, saturating instead of overflowing.
bool digits_cover(std::uint64_t base, int c, Index domain_size) {
  Index acc = 1;
  for (int k = 0; k <= c; ++k) {
    if (acc > kIndexMax / base) return true;
    acc *= base;
  }
  return acc > domain_size;
}

int smallest_degree(std::uint64_t base, Index domain_size) {
  int c = 1;
  while (!digits_cover(base, c, domain_size)) {
    ++c;
    if (c > kMaxShiftDegree) {
      throw Error(ErrorCode::kDomainTooLargeForPoly,
                  "digit base " + std::to_string(base) + " needs degree above " +
                      std::to_string(kMaxShiftDegree) + " for N=" + to_string(domain_size));
    }
  }
  return c;
}

}  // namespace

ShiftReductionParams make_shift_params(std::uint64_t q, int c) {
  if (q < 5 || q % 2 == 0 || !is_prime(q)) {
    throw Error(ErrorCode::kInvalidArgument, "q must be an odd prime >= 5");
  }
  if (c < 1 || c > 32) throw Error(ErrorCode::kInvalidArgument, "degree bound must be in [1, 32]");
  return {q, c, (q - 1) / 2};
}

bool covers_domain(const ShiftReductionParams& params, Index domain_size) {
  return digits_cover(params.digit_base, params.c, domain_size);
}

ShiftReductionParams choose_params(Index domain_size, std::size_t n, bool deterministic,
                                   std::uint64_t min_q) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "text has no nonzeros");
  if (n > (std::size_t{1} << 40)) throw Error(ErrorCode::kInvalidArgument, "text too large");
  const std::uint64_t floor_q = std::max<std::uint64_t>({4 * n, min_q, 5});
  if (!deterministic) {
    const std::uint64_t q = next_prime(floor_q);
    return make_shift_params(q, smallest_degree((q - 1) / 2, domain_size));
  }
  for (int c = 1; c <= kMaxShiftDegree; ++c) {
    const std::uint64_t pool = static_cast<std::uint64_t>(c) << (c + 1);
    const std::uint64_t q = next_prime(std::max(floor_q, pool * n + 1));
    if (digits_cover((q - 1) / 2, c, domain_size)) return make_shift_params(q, c);
  }
  throw Error(ErrorCode::kDomainTooLargeForPoly,
              "no degree <= " + std::to_string(kMaxShiftDegree) + " covers N=" + to_string(domain_size));
}

FqIndexPolynomial encode_index_fq(Index i, const ShiftReductionParams& params) {
  FqIndexPolynomial poly;
  poly.digits.resize(static_cast<std::size_t>(params.c) + 1);
  Index rest = i;
  for (auto& d : poly.digits) {
    d = static_cast<std::uint64_t>(rest % params.digit_base);
    rest /= params.digit_base;
  }
  if (rest != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "index " + to_string(i) + " needs more than c+1 digits");
  }
  return poly;
}

VariantSet expand_variants(Index source, const FqIndexPolynomial& base,
                           const ShiftReductionParams& params) {
  const auto q = static_cast<std::int64_t>(params.q);
  const auto b = static_cast<std::int64_t>(params.digit_base);
  VariantSet set;
  set.source = source;
  set.members.reserve(std::size_t{1} << params.c);
  for (std::uint32_t mask = 0; mask < (1U << params.c); ++mask) {
    std::vector<std::int64_t> d(base.digits.begin(), base.digits.end());
    for (int k = 0; k < params.c; ++k) {
      if (((mask >> k) & 1U) == 0) continue;
      d[static_cast<std::size_t>(k)] += b;
      d[static_cast<std::size_t>(k) + 1] -= 1;
    }
    FqIndexPolynomial v;
    v.is_base = mask == 0;
    v.digits.reserve(d.size());
    for (std::int64_t x : d) v.digits.push_back(static_cast<std::uint64_t>(((x % q) + q) % q));
    set.members.push_back(std::move(v));
  }
  return set;
}

Index polynomial_value(const FqIndexPolynomial& poly, const ShiftReductionParams& params) {
  // Wrapping arithmetic; the true value is a valid index so the result is exact.
  Index acc = 0;
  Index power = 1;
  for (std::uint64_t d : poly.digits) {
    if (d == params.q - 1) {
      acc -= power;
    } else {
      acc += static_cast<Index>(d) * power;
    }
    power *= params.digit_base;
  }
  return acc;
}

std::uint64_t evaluate_fq(const FqIndexPolynomial& poly, std::uint64_t q, std::uint64_t a) {
  std::uint64_t acc = 0;
  for (auto it = poly.digits.rbegin(); it != poly.digits.rend(); ++it) {
    acc = mul_mod(acc, a, q) + *it % q;
    if (acc >= q) acc -= q;
  }
  return acc;
}

ShiftOccupancy ReducedShiftVector::occupancy(std::size_t b) const {
  const std::int64_t c = counts_[b];
  return c == 0 ? ShiftOccupancy::kEmpty
                : (c == 1 ? ShiftOccupancy::kSingleton : ShiftOccupancy::kMultiple);
}

ReducedShiftVector ReducedShiftVector::build(
    std::size_t length, std::span<const std::pair<std::uint64_t, Index>> marks) {
  ReducedShiftVector r;
  r.counts_.assign(length, 0);
  r.sums_.assign(length, 0);
  r.offsets_.assign(length + 1, 0);
  for (const auto& [b, src] : marks) {
    check_internal(b < length, "mark bucket out of range");
    ++r.counts_[b];
    r.sums_[b] += src;
  }
  for (std::size_t b = 0; b < length; ++b) {
    r.offsets_[b + 1] = r.offsets_[b] + static_cast<std::uint32_t>(r.counts_[b]);
  }
  r.sources_.resize(marks.size());
  std::vector<std::uint32_t> fill(r.offsets_.begin(), r.offsets_.end() - 1);
  for (const auto& [b, src] : marks) r.sources_[fill[b]++] = src;
  return r;
}

ReducedShiftVector evaluate_mapping(std::span<const FqIndexPolynomial> polys,
                                    std::span<const Index> sources,
                                    const ShiftReductionParams& params, std::uint64_t a) {
  if (polys.size() != sources.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one source per polynomial expected");
  }
  if (a >= params.q) throw Error(ErrorCode::kInvalidArgument, "assignment outside F_q");
  std::vector<std::pair<std::uint64_t, Index>> marks;
  marks.reserve(polys.size());
  for (std::size_t k = 0; k < polys.size(); ++k) {
    marks.emplace_back(evaluate_fq(polys[k], params.q, a), sources[k]);
  }
  return ReducedShiftVector::build(params.q, marks);
}

void text_polynomials(const SparseBinaryVector& text, const ShiftReductionParams& params,
                      std::vector<FqIndexPolynomial>& polys, std::vector<Index>& sources) {
  polys.clear();
  sources.clear();
  polys.reserve(text.count() << params.c);
  sources.reserve(text.count() << params.c);
  for (Index t : text.support()) {
    VariantSet set = expand_variants(t, encode_index_fq(t, params), params);
    for (auto& v : set.members) {
      polys.push_back(std::move(v));
      sources.push_back(t);
    }
  }
}

}  // namespace sparseconv
