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

#include "sparseconv/gf2m.hpp"

#include <array>
#include <string>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

#include "sparseconv/error.hpp"

namespace sparseconv {
namespace {

constexpr std::array<std::uint64_t, 33> kReductionPolys = {
    0x0,        0x3,        0x7,         0xb,        0x13,       0x25,
    0x43,       0x83,       0x11b,       0x203,      0x409,      0x805,
    0x1009,     0x201b,     0x4021,      0x8003,     0x1002b,    0x20009,
    0x40009,    0x80027,    0x100009,    0x200005,   0x400003,   0x800021,
    0x100001b,  0x2000009,  0x400001b,   0x8000027,  0x10000003, 0x20000005,
    0x40000003, 0x80000009, 0x10000008d,
};

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace

std::uint64_t clmul_portable(std::uint32_t a, std::uint32_t b) {
  std::uint64_t acc = 0;
  std::uint64_t shifted = a;
  for (std::uint32_t rest = b; rest != 0; rest >>= 1, shifted <<= 1) {
    if (rest & 1U) acc ^= shifted;
  }
  return acc;
}

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
#if defined(__PCLMUL__)
  const __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_clmulepi64_si128(va, vb, 0)));
#else
  return clmul_portable(a, b);
#endif
}

std::uint64_t default_reduction_poly(int ell) {
  if (ell < 1 || ell > 32) {
    throw Error(ErrorCode::kInvalidArgument, "field width must be in [1, 32], got " + std::to_string(ell));
  }
  return kReductionPolys[static_cast<std::size_t>(ell)];
}

bool is_irreducible_exhaustive(std::uint64_t poly, int ell) {
  if (degree(poly) != ell || ell < 1) return false;
  // Every candidate divisor of degree 1..ell/2.
  for (int d = 1; 2 * d <= ell; ++d) {
    for (std::uint64_t low = 0; low < (std::uint64_t{1} << d); ++low) {
      if (poly_mod(poly, (std::uint64_t{1} << d) | low) == 0) return false;
    }
  }
  return true;
}

Gf2mField::Gf2mField(int ell) : ell_(ell), poly_(default_reduction_poly(ell)) {}

Gf2mField::Gf2mField(int ell, std::uint64_t reduction_poly)
    : ell_(ell), poly_(reduction_poly) {
  const std::uint64_t builtin = default_reduction_poly(ell);
  if (reduction_poly == builtin) return;
  if (ell > 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "custom reduction polynomials are only verified for ell <= 16");
  }
  if (!is_irreducible_exhaustive(reduction_poly, ell)) {
    throw Error(ErrorCode::kInvalidArgument, "reduction polynomial is not irreducible");
  }
}

std::uint32_t Gf2mField::reduce(std::uint64_t product) const {
  for (int k = degree(product); k >= ell_; k = degree(product)) {
    product ^= poly_ << (k - ell_);
  }
  return static_cast<std::uint32_t>(product);
}

void Gf2mField::require(Gf2mElement a) const {
  if (!contains(a)) {
    throw Error(ErrorCode::kFieldMismatch,
                "element " + std::to_string(a.bits) + " not in GF(2^" + std::to_string(ell_) + ")");
  }
}

Gf2mElement Gf2mField::add(Gf2mElement a, Gf2mElement b) const {
  require(a);
  require(b);
  return {a.bits ^ b.bits};
}

Gf2mElement Gf2mField::mul(Gf2mElement a, Gf2mElement b) const {
  require(a);
  require(b);
  return {mul_raw(a.bits, b.bits)};
}

Gf2mElement Gf2mField::pow(Gf2mElement a, std::uint64_t e) const {
  require(a);
  std::uint32_t result = 1;
  std::uint32_t base = a.bits;
  for (; e != 0; e >>= 1) {
    if (e & 1U) result = mul_raw(result, base);
    base = mul_raw(base, base);
  }
  return {result};
}

Gf2mElement Gf2mField::inverse(Gf2mElement a) const {
  require(a);
  if (a.bits == 0) throw Error(ErrorCode::kInvalidArgument, "zero has no inverse");
  return pow(a, order() - 2);
}

Gf2mElement Gf2mField::eval_poly(std::span<const Gf2mElement> coeffs, Gf2mElement x) const {
  require(x);
  std::uint32_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    require(*it);
    acc = mul_raw(acc, x.bits) ^ it->bits;
  }
  return {acc};
}

}  // namespace sparseconv
