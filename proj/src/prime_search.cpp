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

#include "sparseconv/prime_search.hpp"

#include <algorithm>
#include <string>

#include "absl/container/flat_hash_set.h"
#include "sparseconv/error.hpp"
#include "sparseconv/prime.hpp"

namespace sparseconv {
namespace {

mpz_class product_range(std::span<const mpz_class> values) {
  if (values.size() == 1) return values.front();
  const std::size_t mid = values.size() / 2;
  return product_range(values.first(mid)) * product_range(values.subspan(mid));
}

mpz_class product_of(std::span<const std::uint64_t> primes) {
  std::vector<mpz_class> v;
  v.reserve(primes.size());
  for (std::uint64_t p : primes) v.push_back(to_mpz(p));
  return product_tree(v);
}

void require_distinct(std::span<const Index> indices) {
  if (indices.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "prime search needs at least two indices");
  }
  absl::flat_hash_set<absl::uint128> seen;
  for (Index i : indices) {
    if (!seen.insert(absl::uint128(i)).second) {
      throw Error(ErrorCode::kInvalidArgument, "indices must be distinct");
    }
  }
}

Index abs_diff(Index a, Index b) { return a > b ? a - b : b - a; }

}  // namespace

mpz_class to_mpz(Index v) {
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

mpz_class product_tree(std::span<const mpz_class> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "product of an empty list");
  return product_range(values);
}

std::vector<std::uint64_t> prime_pool(std::size_t count, int bits) {
  if (bits < 3 || bits > 63) throw Error(ErrorCode::kInvalidArgument, "prime bits must be in [3, 63]");
  const std::uint64_t top = std::uint64_t{1} << bits;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t v = (std::uint64_t{1} << (bits - 1)) + 1; out.size() < count; v += 2) {
    if (v >= top) {
      throw Error(ErrorCode::kInvalidArgument, "fewer than " + std::to_string(count) + " primes have " +
                                                   std::to_string(bits) + " bits");
    }
    if (is_prime(v)) out.push_back(v);
  }
  return out;
}

std::uint64_t exp_prime_search(std::span<const Index> indices,
                               std::span<const std::uint64_t> pool, PrimeSearchState* state) {
  require_distinct(indices);
  if (pool.empty()) throw Error(ErrorCode::kPoolTooSmall, "empty prime pool");

  std::vector<mpz_class> diffs;
  diffs.reserve(indices.size() * (indices.size() - 1) / 2);
  for (std::size_t x = 0; x < indices.size(); ++x) {
    for (std::size_t y = x + 1; y < indices.size(); ++y) {
      diffs.push_back(to_mpz(abs_diff(indices[x], indices[y])));
    }
  }
  const mpz_class d = product_tree(diffs);
  const mpz_class q = product_of(pool);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
  const mpz_class r = q / g;
  if (state != nullptr) {
    state->pool.assign(pool.begin(), pool.end());
    state->q_product = q;
    state->differences = d;
    state->survivors = r;
  }
  if (r == 1) {
    throw Error(ErrorCode::kPoolTooSmall,
                "all " + std::to_string(pool.size()) + " pool primes divide some difference");
  }

  // R is the product of the surviving primes; halve S keeping a part that
  // still shares a factor with R.
  std::span<const std::uint64_t> s = pool;
  std::uint32_t tests = 0;
  while (s.size() > 1) {
    const auto left = s.first(s.size() / 2);
    const mpz_class ql = product_of(left);
    mpz_gcd(g.get_mpz_t(), ql.get_mpz_t(), r.get_mpz_t());
    ++tests;
    s = g > 1 ? left : s.subspan(s.size() / 2);
  }
  const std::uint64_t p = s.front();

  absl::flat_hash_set<std::uint64_t> residues;
  for (Index i : indices) {
    check_internal(residues.insert(static_cast<std::uint64_t>(i % p)).second,
                   "prime search returned a colliding prime");
  }
  if (state != nullptr) {
    state->gcd_tests = tests;
    state->prime = p;
  }
  return p;
}

std::uint64_t prime_kill_bound(std::span<const Index> indices, std::uint64_t p_min) {
  if (p_min < 2) throw Error(ErrorCode::kInvalidArgument, "smallest pool prime must be >= 2");
  std::uint64_t bound = 0;
  for (std::size_t x = 0; x < indices.size(); ++x) {
    for (std::size_t y = x + 1; y < indices.size(); ++y) {
      const Index d = abs_diff(indices[x], indices[y]);
      // Largest k with p_min^k <= d.
      Index acc = p_min;
      std::uint64_t k = 0;
      while (acc <= d) {
        ++k;
        if (acc > d / p_min) break;
        acc *= p_min;
      }
      bound += k;
    }
  }
  return bound;
}

std::uint64_t exp_prime_search(std::span<const Index> indices, const PrimeSearchConfig& config,
                               PrimeSearchState* state) {
  require_distinct(indices);
  const std::vector<std::uint64_t> pool = prime_pool(config.prime_count, config.prime_bits);
  const std::uint64_t bound = prime_kill_bound(indices, pool.front());
  if (bound >= pool.size()) {
    throw Error(ErrorCode::kPoolTooSmall, "up to " + std::to_string(bound) +
                                              " pool primes may divide a difference; pool has " +
                                              std::to_string(pool.size()));
  }
  return exp_prime_search(indices, pool, state);
}

}  // namespace sparseconv
