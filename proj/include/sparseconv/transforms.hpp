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

#include "sparseconv/oracle.hpp"
#include "sparseconv/prime.hpp"

namespace sparseconv {

// Exact integer transforms on reduced (short) vectors. Every path is exact;
// overflow is detected and reported as OVERFLOW rather than wrapped.

inline constexpr int kMaxWhtLog = 22;
inline constexpr std::size_t kMaxCyclicLength = std::size_t{1} << 22;

// Unnormalized Walsh-Hadamard butterfly (a, b) -> (a + b, a - b), level by
// level. Length must be 2^k with k <= 22 (LENGTH_MISMATCH otherwise).
void fwht_in_place(std::span<std::int64_t> v);

// out[k] = sum_i a[i ^ k] * b[i] via FWHT(a) * FWHT(b), inverse FWHT and an
// exact division by the length. Throws LENGTH_MISMATCH, OVERFLOW.
DenseIntVector xor_correlate(std::span<const std::int64_t> a,
                             std::span<const std::int64_t> b);

// The two fixed 62-bit NTT primes (p == 1 mod 2^24), found once with
// find_ntt_prime and cached.
const NttPrime& ntt_prime_primary();
const NttPrime& ntt_prime_secondary();

// Power-of-two number-theoretic transform over one prime. forward() leaves
// the spectrum in bit-reversed order and inverse() consumes that order, so a
// pointwise product between them needs no permutation. inverse() includes
// the 1/n scaling.
class NttPlan {
 public:
  NttPlan(const NttPrime& prime, int log_size);

  std::size_t size() const { return std::size_t{1} << log_size_; }
  std::uint64_t modulus() const { return mod_; }

  void forward(std::span<std::uint64_t> v) const;
  void inverse(std::span<std::uint64_t> v) const;
  // a[k] = a[k] * b[k] mod p
  void pointwise(std::span<std::uint64_t> a, std::span<const std::uint64_t> b) const;

 private:
  std::uint64_t mont_mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t to_mont(std::uint64_t a) const;

  int log_size_;
  std::uint64_t mod_;
  std::uint64_t mod_neg_inv_;   // -mod^{-1} mod 2^64
  std::uint64_t r2_;            // 2^128 mod mod
  std::vector<std::uint64_t> roots_;      // Montgomery form, per level
  std::vector<std::uint64_t> inv_roots_;
  std::uint64_t inv_n_mont_;
};

// out[s] = sum_j a[(s + j) mod q] * b[j] with q = a.size() = b.size(),
// computed by a zero-padded NTT of size >= 2q and folded back to length q.
// Entries must be non-negative. A second prime with CRT recombination is
// used automatically when the output bound exceeds the first prime.
// Throws LENGTH_MISMATCH, INVALID_ARGUMENT (negative entries), OVERFLOW.
DenseIntVector cyclic_correlate(std::span<const std::int64_t> a,
                                std::span<const std::int64_t> b);

// Same correlation, reduced modulo ntt_prime_primary().p. Inputs must already
// be residues.
std::vector<std::uint64_t> cyclic_correlate_mod(std::span<const std::uint64_t> a,
                                                std::span<const std::uint64_t> b);

}  // namespace sparseconv
