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
#include <span>
#include <vector>

#include <gmpxx.h>

#include "sparseconv/index.hpp"

namespace sparseconv {

// Exact product through a balanced pairwise tree. Throws INVALID_ARGUMENT
// for an empty list.
mpz_class product_tree(std::span<const mpz_class> values);

mpz_class to_mpz(Index v);

// The first `count` primes with exactly `bits` bits, ascending from
// 2^(bits-1). Throws INVALID_ARGUMENT for bits outside [3, 63] or when the
// range runs out.
std::vector<std::uint64_t> prime_pool(std::size_t count, int bits);

struct PrimeSearchConfig {
  std::size_t prime_count = 4096;
  int prime_bits = 20;
};

// Intermediate values of one search, exposed for inspection.
struct PrimeSearchState {
  std::vector<std::uint64_t> pool;  // S at the start
  mpz_class q_product;              // Q = prod S
  mpz_class differences;            // D = prod |x_i - x_j|
  mpz_class survivors;              // R = Q / gcd(Q, D)
  std::uint32_t gcd_tests = 0;      // halving steps
  std::uint64_t prime = 0;
};

// Finds a pool prime dividing no pairwise difference, so all indices are
// distinct modulo it. The pool primes must be distinct. Throws
// INVALID_ARGUMENT for fewer than two indices or duplicates, and
// POOL_TOO_SMALL when every pool prime divides some difference.
std::uint64_t exp_prime_search(std::span<const Index> indices,
                               std::span<const std::uint64_t> pool,
                               PrimeSearchState* state = nullptr);

// Number of pool primes that can divide some difference at most:
// sum over pairs of floor(log |x_i - x_j| / log p_min).
std::uint64_t prime_kill_bound(std::span<const Index> indices, std::uint64_t p_min);

// Pool of config.prime_count primes of config.prime_bits bits. Rejects the
// config with POOL_TOO_SMALL (message carries the bound) unless the kill
// bound is below the pool size, which guarantees a survivor.
std::uint64_t exp_prime_search(std::span<const Index> indices, const PrimeSearchConfig& config,
                               PrimeSearchState* state = nullptr);

}  // namespace sparseconv
