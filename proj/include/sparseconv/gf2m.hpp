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

#include <compare>
#include <cstdint>
#include <span>

namespace sparseconv {

// Element of GF(2^ell): bit k is the coefficient of X^k.
struct Gf2mElement {
  std::uint32_t bits = 0;

  friend auto operator<=>(Gf2mElement, Gf2mElement) = default;
};

// Carry-less 32x32 -> 64 bit product. The portable shift-XOR loop is the
// reference; clmul() may use PCLMULQDQ when the build enables it and always
// returns the same bits.
std::uint64_t clmul_portable(std::uint32_t a, std::uint32_t b);
std::uint64_t clmul(std::uint32_t a, std::uint32_t b);

// Built-in reduction polynomial for GF(2^ell), ell in [1, 32]: the
// lowest-weight irreducible (trinomial if one exists, else pentanomial) with
// the smallest middle exponents. Includes the X^ell term.
std::uint64_t default_reduction_poly(int ell);

// True iff `poly` (degree ell, bit ell set) has no factor of degree
// 1..ell/2. Exhaustive trial division; intended for ell <= 16.
bool is_irreducible_exhaustive(std::uint64_t poly, int ell);

class Gf2mField {
 public:
  // Uses default_reduction_poly(ell). Throws INVALID_ARGUMENT for ell
  // outside [1, 32].
  explicit Gf2mField(int ell);

  // Custom polynomial; only accepted for ell <= 16 where irreducibility is
  // verified exhaustively, or when it equals the built-in table entry.
  Gf2mField(int ell, std::uint64_t reduction_poly);

  int ell() const { return ell_; }
  std::uint64_t reduction_poly() const { return poly_; }
  std::uint64_t order() const { return std::uint64_t{1} << ell_; }

  bool contains(Gf2mElement a) const { return (std::uint64_t{a.bits} >> ell_) == 0; }

  // Checked operations: operands outside the field throw FIELD_MISMATCH.
  Gf2mElement add(Gf2mElement a, Gf2mElement b) const;
  Gf2mElement mul(Gf2mElement a, Gf2mElement b) const;
  Gf2mElement pow(Gf2mElement a, std::uint64_t e) const;
  // Throws INVALID_ARGUMENT for zero.
  Gf2mElement inverse(Gf2mElement a) const;

  // Horner evaluation; coeffs[0] is the constant term.
  Gf2mElement eval_poly(std::span<const Gf2mElement> coeffs, Gf2mElement x) const;

  // Unchecked multiply on raw bits, for inner loops that already validated.
  std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const {
    return reduce(clmul(a, b));
  }

  friend bool operator==(const Gf2mField& a, const Gf2mField& b) {
    return a.ell_ == b.ell_ && a.poly_ == b.poly_;
  }

 private:
  std::uint32_t reduce(std::uint64_t product) const;
  void require(Gf2mElement a) const;

  int ell_;
  std::uint64_t poly_;
};

}  // namespace sparseconv
