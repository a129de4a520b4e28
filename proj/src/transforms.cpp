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

#include "sparseconv/transforms.hpp"

#include <algorithm>
#include <string>

#include "sparseconv/error.hpp"

namespace sparseconv {
namespace {

int log2_exact(std::size_t n) { return n == 0 ? -1 : __builtin_ctzll(n); }

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

[[noreturn]] void overflow(const char* where) {
  throw Error(ErrorCode::kOverflow, std::string(where) + " exceeds 63-bit range");
}

int padded_log(std::size_t q) {
  int lg = 0;
  while ((std::size_t{1} << lg) < 2 * q - 1) ++lg;
  return lg;
}

// Linear correlation of residue vectors via one NTT plan, folded mod q.
std::vector<std::uint64_t> correlate_residues(const NttPlan& plan,
                                              std::span<const std::uint64_t> a,
                                              std::span<const std::uint64_t> b) {
  const std::size_t q = a.size();
  const std::uint64_t p = plan.modulus();
  std::vector<std::uint64_t> fa(plan.size(), 0);
  std::vector<std::uint64_t> fb(plan.size(), 0);
  for (std::size_t u = 0; u < q; ++u) fa[u] = a[u] % p;
  for (std::size_t k = 0; k < q; ++k) fb[k] = b[q - 1 - k] % p;
  plan.forward(fa);
  plan.forward(fb);
  plan.pointwise(fa, fb);
  plan.inverse(fa);
  // fa[t] = sum over u - j == t - (q - 1); cyclic lag s collects u - j == s
  // and u - j == s - q.
  std::vector<std::uint64_t> out(q);
  for (std::size_t s = 0; s < q; ++s) {
    std::uint64_t v = fa[s + q - 1];
    if (s >= 1) {
      v += fa[s - 1];
      if (v >= p) v -= p;
    }
    out[s] = v;
  }
  return out;
}

}  // namespace

void fwht_in_place(std::span<std::int64_t> v) {
  const std::size_t n = v.size();
  if (!is_pow2(n) || log2_exact(n) > kMaxWhtLog) {
    throw Error(ErrorCode::kLengthMismatch,
                "FWHT length must be 2^k with k <= 22, got " + std::to_string(n));
  }
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t x = v[j];
        const std::int64_t y = v[j + h];
        if (__builtin_add_overflow(x, y, &v[j]) ||
            __builtin_sub_overflow(x, y, &v[j + h])) {
          overflow("FWHT butterfly");
        }
      }
    }
  }
}

DenseIntVector xor_correlate(std::span<const std::int64_t> a,
                             std::span<const std::int64_t> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "xor_correlate operands differ in length");
  }
  DenseIntVector fa(a.begin(), a.end());
  DenseIntVector fb(b.begin(), b.end());
  fwht_in_place(fa);
  fwht_in_place(fb);
  for (std::size_t k = 0; k < fa.size(); ++k) {
    if (__builtin_mul_overflow(fa[k], fb[k], &fa[k])) overflow("xor_correlate product");
  }
  fwht_in_place(fa);
  const auto n = static_cast<std::int64_t>(fa.size());
  for (auto& x : fa) {
    check_internal(x % n == 0, "inverse WHT division is not exact");
    x /= n;
  }
  return fa;
}

const NttPrime& ntt_prime_primary() {
  static const NttPrime prime = find_ntt_prime(std::uint64_t{1} << 24, std::uint64_t{1} << 61);
  return prime;
}

const NttPrime& ntt_prime_secondary() {
  static const NttPrime prime = find_ntt_prime(std::uint64_t{1} << 24, ntt_prime_primary().p);
  return prime;
}

NttPlan::NttPlan(const NttPrime& prime, int log_size)
    : log_size_(log_size), mod_(prime.p) {
  if (log_size < 0 || log_size > 24 || ((prime.p - 1) & ((std::uint64_t{1} << log_size) - 1)) != 0) {
    throw Error(ErrorCode::kLengthMismatch, "NTT size 2^" + std::to_string(log_size) +
                                                " unsupported by prime " + std::to_string(prime.p));
  }
  if (mod_ >= (std::uint64_t{1} << 62) || (mod_ & 1U) == 0) {
    throw Error(ErrorCode::kInvalidArgument, "NTT prime must be odd and below 2^62");
  }
  std::uint64_t inv = mod_;
  for (int k = 0; k < 6; ++k) inv *= 2 - mod_ * inv;
  mod_neg_inv_ = ~inv + 1;
  const auto r1 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % mod_);
  r2_ = mul_mod(r1, r1, mod_);

  const std::size_t n = size();
  roots_.assign(std::max<std::size_t>(n, 2), 0);
  inv_roots_.assign(std::max<std::size_t>(n, 2), 0);
  for (std::size_t len = 1; len < n; len <<= 1) {
    const std::uint64_t w = pow_mod(prime.generator, (mod_ - 1) / (2 * len), mod_);
    const std::uint64_t wi = pow_mod(w, mod_ - 2, mod_);
    std::uint64_t cur = 1;
    std::uint64_t cur_inv = 1;
    for (std::size_t j = 0; j < len; ++j) {
      roots_[len + j] = to_mont(cur);
      inv_roots_[len + j] = to_mont(cur_inv);
      cur = mul_mod(cur, w, mod_);
      cur_inv = mul_mod(cur_inv, wi, mod_);
    }
  }
  inv_n_mont_ = to_mont(pow_mod(n % mod_, mod_ - 2, mod_));
}

std::uint64_t NttPlan::mont_mul(std::uint64_t a, std::uint64_t b) const {
  const unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  const std::uint64_t m = static_cast<std::uint64_t>(t) * mod_neg_inv_;
  const auto u = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * mod_) >> 64);
  return u >= mod_ ? u - mod_ : u;
}

std::uint64_t NttPlan::to_mont(std::uint64_t a) const { return mont_mul(a, r2_); }

void NttPlan::forward(std::span<std::uint64_t> v) const {
  const std::size_t n = size();
  check_internal(v.size() == n, "NTT input length differs from plan");
  for (std::size_t len = n >> 1; len >= 1; len >>= 1) {
    for (std::size_t i = 0; i < n; i += 2 * len) {
      for (std::size_t j = 0; j < len; ++j) {
        const std::uint64_t u = v[i + j];
        const std::uint64_t w = v[i + j + len];
        const std::uint64_t s = u + w;
        v[i + j] = s >= mod_ ? s - mod_ : s;
        v[i + j + len] = mont_mul(u >= w ? u - w : u + mod_ - w, roots_[len + j]);
      }
    }
  }
}

void NttPlan::inverse(std::span<std::uint64_t> v) const {
  const std::size_t n = size();
  check_internal(v.size() == n, "NTT input length differs from plan");
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * len) {
      for (std::size_t j = 0; j < len; ++j) {
        const std::uint64_t u = v[i + j];
        const std::uint64_t w = mont_mul(v[i + j + len], inv_roots_[len + j]);
        const std::uint64_t s = u + w;
        v[i + j] = s >= mod_ ? s - mod_ : s;
        v[i + j + len] = u >= w ? u - w : u + mod_ - w;
      }
    }
  }
  for (auto& x : v) x = mont_mul(x, inv_n_mont_);
}

void NttPlan::pointwise(std::span<std::uint64_t> a, std::span<const std::uint64_t> b) const {
  check_internal(a.size() == b.size(), "pointwise operands differ in length");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = mont_mul(mont_mul(a[k], b[k]), r2_);
}

DenseIntVector cyclic_correlate(std::span<const std::int64_t> a,
                                std::span<const std::int64_t> b) {
  const std::size_t q = a.size();
  if (b.size() != q || q == 0) {
    throw Error(ErrorCode::kLengthMismatch, "cyclic_correlate needs two nonempty vectors of equal length");
  }
  if (q > kMaxCyclicLength) {
    throw Error(ErrorCode::kLengthMismatch, "cyclic length above 2^22");
  }
  unsigned __int128 sum_a = 0, sum_b = 0;
  std::int64_t max_a = 0, max_b = 0;
  for (std::size_t k = 0; k < q; ++k) {
    if (a[k] < 0 || b[k] < 0) {
      throw Error(ErrorCode::kInvalidArgument, "cyclic_correlate entries must be non-negative");
    }
    sum_a += static_cast<std::uint64_t>(a[k]);
    sum_b += static_cast<std::uint64_t>(b[k]);
    max_a = std::max(max_a, a[k]);
    max_b = std::max(max_b, b[k]);
  }
  // Every output is bounded by both sum(a) * max(b) and sum(b) * max(a).
  const auto mul_sat = [](unsigned __int128 x, std::uint64_t y) -> unsigned __int128 {
    if (y != 0 && x > (~static_cast<unsigned __int128>(0)) / y) return ~static_cast<unsigned __int128>(0);
    return x * y;
  };
  const unsigned __int128 bound = std::min(mul_sat(sum_a, static_cast<std::uint64_t>(max_b)),
                                           mul_sat(sum_b, static_cast<std::uint64_t>(max_a)));
  if (bound > static_cast<unsigned __int128>(INT64_MAX)) overflow("cyclic_correlate output");

  std::vector<std::uint64_t> ua(a.begin(), a.end());
  std::vector<std::uint64_t> ub(b.begin(), b.end());
  const int lg = padded_log(q);
  const NttPrime& p1 = ntt_prime_primary();
  const auto r1 = correlate_residues(NttPlan(p1, lg), ua, ub);

  DenseIntVector out(q);
  if (bound < p1.p) {
    for (std::size_t s = 0; s < q; ++s) out[s] = static_cast<std::int64_t>(r1[s]);
    return out;
  }
  const NttPrime& p2 = ntt_prime_secondary();
  const auto r2 = correlate_residues(NttPlan(p2, lg), ua, ub);
  const std::uint64_t p1_inv_mod_p2 = pow_mod(p1.p % p2.p, p2.p - 2, p2.p);
  for (std::size_t s = 0; s < q; ++s) {
    const std::uint64_t diff = (r2[s] + p2.p - r1[s] % p2.p) % p2.p;
    const std::uint64_t k = mul_mod(diff, p1_inv_mod_p2, p2.p);
    const unsigned __int128 x = static_cast<unsigned __int128>(k) * p1.p + r1[s];
    check_internal(x <= bound, "CRT recombination exceeded the output bound");
    out[s] = static_cast<std::int64_t>(x);
  }
  return out;
}

std::vector<std::uint64_t> cyclic_correlate_mod(std::span<const std::uint64_t> a,
                                                std::span<const std::uint64_t> b) {
  const std::size_t q = a.size();
  if (b.size() != q || q == 0) {
    throw Error(ErrorCode::kLengthMismatch, "cyclic_correlate_mod needs two nonempty vectors of equal length");
  }
  if (q > kMaxCyclicLength) throw Error(ErrorCode::kLengthMismatch, "cyclic length above 2^22");
  return correlate_residues(NttPlan(ntt_prime_primary(), padded_log(q)), a, b);
}

}  // namespace sparseconv
