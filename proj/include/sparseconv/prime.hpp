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

namespace sparseconv {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin over the full 64-bit range (fixed witness set).
bool is_prime(std::uint64_t v);

// Smallest prime >= v. Throws INVALID_ARGUMENT if v < 2 or no 64-bit prime
// is >= v.
std::uint64_t next_prime(std::uint64_t v);

// Distinct prime factors, ascending. Trial division; fine for the sizes used
// here (cofactors of NTT primes).
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

struct NttPrime {
  std::uint64_t p = 0;
  std::uint64_t generator = 0;  // generates the full multiplicative group
};

// Smallest prime p > min_value with p == 1 (mod min_order), together with the
// smallest primitive root. min_order must be a power of two <= 2^24.
// Throws INVALID_ARGUMENT, NO_NTT_PRIME.
NttPrime find_ntt_prime(std::uint64_t min_order, std::uint64_t min_value);

// Arithmetic in F_q for an odd prime q.
class PrimeField {
 public:
  // Throws INVALID_ARGUMENT unless q is an odd prime.
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return (s >= q_ || s < a) ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (q_ - b); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mul_mod(a, b, q_); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const { return pow_mod(a, e, q_); }
  std::uint64_t inverse(std::uint64_t a) const;  // throws on zero

  // Horner evaluation with coefficients already reduced to [0, q).
  std::uint64_t eval_poly(std::span<const std::uint64_t> coeffs, std::uint64_t x) const;

 private:
  std::uint64_t q_;
};

}  // namespace sparseconv
