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

#include "sparseconv/prime.hpp"

#include <string>

#include "sparseconv/error.hpp"

namespace sparseconv {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  for (; exp != 0; exp >>= 1) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
  }
  return result;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (v % p == 0) return v == p;
  }
  std::uint64_t d = v - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  // Witnesses sufficient for every n < 2^64 (Sinclair).
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    const std::uint64_t w = a % v;
    if (w == 0) continue;
    std::uint64_t x = pow_mod(w, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t v) {
  if (v < 2) throw Error(ErrorCode::kInvalidArgument, "next_prime needs v >= 2");
  for (std::uint64_t c = v;; ++c) {
    if (is_prime(c)) return c;
    if (c == UINT64_MAX) break;
  }
  throw Error(ErrorCode::kInvalidArgument, "no 64-bit prime >= " + std::to_string(v));
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f <= v / f; f += (f == 2 ? 1 : 2)) {
    if (v % f != 0) continue;
    out.push_back(f);
    while (v % f == 0) v /= f;
  }
  if (v > 1) out.push_back(v);
  return out;
}

NttPrime find_ntt_prime(std::uint64_t min_order, std::uint64_t min_value) {
  if (min_order == 0 || (min_order & (min_order - 1)) != 0 || min_order > (1ULL << 24)) {
    throw Error(ErrorCode::kInvalidArgument, "min_order must be a power of two <= 2^24");
  }
  // First p = k * min_order + 1 strictly above min_value.
  std::uint64_t k = min_value / min_order + (min_value % min_order != 0 ? 1 : 0);
  for (int tries = 0; tries < (1 << 22); ++tries, ++k) {
    if (k > (UINT64_MAX - 1) / min_order) break;
    const std::uint64_t p = k * min_order + 1;
    if (p <= min_value || !is_prime(p)) continue;
    if (p == 2) return {2, 1};
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
      bool primitive = true;
      for (std::uint64_t r : factors) {
        if (pow_mod(g, (p - 1) / r, p) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) return {p, g};
    }
  }
  throw Error(ErrorCode::kNoNttPrime, "no prime == 1 mod " + std::to_string(min_order) +
                                          " above " + std::to_string(min_value));
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q < 3 || !is_prime(q)) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(q) + " is not an odd prime");
  }
}

std::uint64_t PrimeField::inverse(std::uint64_t a) const {
  if (a % q_ == 0) throw Error(ErrorCode::kInvalidArgument, "zero has no inverse");
  return pow(a, q_ - 2);
}

std::uint64_t PrimeField::eval_poly(std::span<const std::uint64_t> coeffs, std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

}  // namespace sparseconv
