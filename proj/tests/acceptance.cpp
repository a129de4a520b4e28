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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Time budgets are part of each criterion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "../tools/cli.hpp"
#include "sparseconv/bench.hpp"
#include "sparseconv/error.hpp"
#include "sparseconv/gf2m.hpp"
#include "sparseconv/instance.hpp"
#include "sparseconv/oracle.hpp"
#include "sparseconv/prime.hpp"
#include "sparseconv/prime_search.hpp"
#include "sparseconv/shift_matcher.hpp"
#include "sparseconv/sv_io.hpp"
#include "sparseconv/transforms.hpp"
#include "sparseconv/xor_matcher.hpp"

namespace sparseconv {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records the first failure only; later checks keep running.
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (out.ok && budget_seconds > 0 && secs > budget_seconds) {
    out.ok = false;
    out.detail = "over time budget of " + std::to_string(budget_seconds) + " s";
  }
  if (!out.ok) ++failures;
  std::printf("%s %2d %s [%.2f s]%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

SparseBinaryVector load(const char* name) {
  return read_sparse(std::filesystem::path(SPARSECONV_TEST_DATA) / name);
}

std::string digits(const DenseIntVector& v) {
  std::string s;
  for (auto x : v) s += std::to_string(x);
  return s;
}

std::vector<std::int64_t> dense(const SparseBinaryVector& v) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(v.domain_size()), 0);
  for (Index i : v.support()) d[static_cast<std::size_t>(i)] = 1;
  return d;
}

std::string show(std::span<const Index> v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + to_string(v[k]);
  return s + "}";
}

Outcome fixture_n38() {
  Outcome o;
  const auto text = load("ex1_text.sv");
  const auto pattern = load("ex1_pat.sv");
  const std::vector<Index> want{15, 19, 21};
  const auto oracle = oracle_match_shift(text, pattern).positions;
  o.require(oracle == want, "oracle returned " + show(oracle));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto lv = sparse_match_shift_lasvegas(text, pattern, {seed, 4}).positions;
    o.require(lv == want, "lasvegas seed " + std::to_string(seed) + " returned " + show(lv));
  }
  const auto det = sparse_match_shift_deterministic(text, pattern, preprocess_select_assignments(text)).positions;
  o.require(det == want, "det returned " + show(det));
  return o;
}

Outcome walsh_fixtures() {
  Outcome o;
  const auto t = load("walsh_text.sv");
  const auto p = load("walsh_pat.sv");
  const std::string full = digits(xor_correlate(dense(t), dense(p)));
  o.require(full == "02000020", "xor_correlate gave " + full);
  const auto [rt, rp] = mask_halving_reduce(t, p, 0b101);
  o.require(!rt.collided && !rp.collided, "fold collided");
  const std::string reduced = digits(xor_correlate(dense(rt.merged), dense(rp.merged)));
  o.require(reduced == "0202", "reduced correlation gave " + reduced);
  o.require(digits(dense(rt.merged)) == "0101" && digits(dense(rp.merged)) == "1010", "folded vectors differ");
  const MaskConsistency c = mask_consistency_check(rt, rp);
  o.require(c.verdicts[0b11] == MaskVerdict::kMs, "location 11 is not all mixed-origin");
  o.require((Index{0b11} ^ c.mask) == Index{0b110}, "location 11 does not expand to 110");
  o.require(c.verdicts[0b01] == MaskVerdict::kSsMm, "location 01 is not same-origin");
  o.require(sparse_match_xor_mask(t, p, 1).positions == std::vector<Index>{1, 6}, "mask matcher differs");
  return o;
}

Outcome encoding_fixtures() {
  Outcome o;
  const Gf2mField f2(2);
  const auto g = encode_index_gf2(17, f2, 6);
  std::vector<std::uint32_t> coeffs;
  for (auto e : g.coeffs) coeffs.push_back(e.bits);
  o.require(coeffs == std::vector<std::uint32_t>{1, 0, 1}, "17 over GF(4) is not X^2+1");
  const auto params = make_shift_params(13, 2);
  const auto base = encode_index_fq(95, params);
  o.require(base.digits == std::vector<std::uint64_t>{5, 3, 2}, "95 over F_13 is not 2X^2+3X+5");
  std::set<std::vector<std::uint64_t>> got;
  for (const auto& m : expand_variants(95, base, params).members) got.insert(m.digits);
  const std::set<std::vector<std::uint64_t>> want{{5, 3, 2}, {11, 2, 2}, {5, 9, 1}, {11, 8, 1}};
  o.require(got == want, "variant set differs");
  return o;
}

InstanceSpec random_spec(Family family, std::uint64_t seed) {
  Rng rng(mix_seed(seed, family == Family::kXor ? 0x5a : 0xa5));
  InstanceSpec s;
  s.family = family;
  s.seed = seed;
  const int log_n = 6 + static_cast<int>(rng.below(std::uint64_t{11}));  // 2^6 .. 2^16
  s.text_domain = Index{1} << log_n;
  if (family == Family::kShift && rng.below(std::uint64_t{2}) == 1) {
    s.text_domain -= rng.below(s.text_domain / 2);  // non power of two
  }
  const std::size_t cap = static_cast<std::size_t>(std::min<Index>(512, s.text_domain / 8));
  s.noise = 1 + rng.below(std::uint64_t{cap});
  s.pattern_count = 1 + rng.below(std::uint64_t{std::min<std::size_t>(64, s.noise)});
  if (family == Family::kShift) {
    s.pattern_domain = std::max<Index>(s.pattern_count, s.text_domain >> (1 + rng.below(std::uint64_t{6})));
  }
  s.planted = rng.below(std::uint64_t{5});
  return s;
}

Outcome lasvegas_equivalence() {
  Outcome o;
  for (Family family : {Family::kXor, Family::kShift}) {
    std::size_t with_matches = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const Instance inst = gen_instance(random_spec(family, seed));
      const MatchResult got = family == Family::kXor
                                  ? sparse_match_xor(inst.text, inst.pattern, {8, 4, seed})
                                  : sparse_match_shift_lasvegas(inst.text, inst.pattern, {seed, 4});
      const MatchResult want = family == Family::kXor ? oracle_match_xor(inst.text, inst.pattern)
                                                      : oracle_match_shift(inst.text, inst.pattern);
      o.require(got.positions == want.positions,
                std::string(family == Family::kXor ? "xor" : "shift") + " seed " + std::to_string(seed));
      with_matches += want.positions.empty() ? 0 : 1;
    }
    o.require(with_matches > 500, "too few instances with matches");
  }
  return o;
}

std::size_t ceil_log2(std::size_t x) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

Outcome deterministic_equivalence() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    InstanceSpec s = random_spec(Family::kShift, seed + 5000);
    s.noise = std::min<std::size_t>(s.noise, 256);
    s.pattern_count = std::min(s.pattern_count, s.noise);
    const Instance inst = gen_instance(s);
    const AssignmentTable table = preprocess_select_assignments(inst.text);
    const std::string tag = "seed " + std::to_string(seed);
    const std::size_t bound = std::max<std::size_t>(1, ceil_log2(table.columns));
    o.require(table.selected.size() <= bound, tag + ": " + std::to_string(table.selected.size()) +
                                                  " assignments exceed " + std::to_string(bound));

    // Re-verify coverage from scratch: every variant polynomial is alone in
    // its bucket under at least one selected assignment.
    std::vector<FqIndexPolynomial> polys;
    std::vector<Index> sources;
    text_polynomials(inst.text, table.params, polys, sources);
    o.require(polys.size() == table.columns, tag + ": column count");
    std::vector<bool> covered(polys.size(), false);
    for (std::uint64_t a : table.selected) {
      std::map<std::uint64_t, std::size_t> load;
      for (const auto& poly : polys) ++load[evaluate_fq(poly, table.params.q, a)];
      for (std::size_t k = 0; k < polys.size(); ++k) {
        if (load[evaluate_fq(polys[k], table.params.q, a)] == 1) covered[k] = true;
      }
    }
    o.require(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }), tag + ": uncovered");

    const auto got = sparse_match_shift_deterministic(inst.text, inst.pattern, table).positions;
    o.require(got == oracle_match_shift(inst.text, inst.pattern).positions, tag + ": output differs");
  }
  return o;
}

Outcome gf2_collision_bound() {
  Outcome o;
  const Gf2mField field(8);
  const int degree = 16 / 8 - 1;
  Rng rng(6);
  for (int k = 0; k < 1000; ++k) {
    const Index i = rng.below(Index{1} << 16);
    Index j = rng.below(Index{1} << 16);
    while (j == i) j = rng.below(Index{1} << 16);
    const auto pi = encode_index_gf2(i, field, 16);
    const auto pj = encode_index_gf2(j, field, 16);
    int collisions = 0;
    for (std::uint32_t x = 0; x < 256; ++x) {
      collisions += field.eval_poly(pi.coeffs, {x}) == field.eval_poly(pj.coeffs, {x}) ? 1 : 0;
    }
    o.require(collisions <= degree, "pair " + to_string(i) + "," + to_string(j) + " collides " +
                                        std::to_string(collisions) + " times");
  }
  return o;
}

// Digits of a polynomial packed 4 bits each; q = 13 keeps every digit below 16.
std::uint32_t pack(std::span<const std::uint64_t> d) {
  std::uint32_t key = 0;
  for (std::size_t k = 0; k < d.size(); ++k) key |= static_cast<std::uint32_t>(d[k]) << (4 * k);
  return key;
}

// Base form of s with the top digit allowed to reach 2 * base - 2, which
// stays below q - 1. Sums of two in-range indices can need it.
std::vector<std::uint64_t> wide_base(std::size_t s, const ShiftReductionParams& params) {
  std::vector<std::uint64_t> d;
  for (int k = 0; k < params.c; ++k) {
    d.push_back(s % params.digit_base);
    s /= params.digit_base;
  }
  d.push_back(s);
  return d;
}

Outcome digit_identity() {
  Outcome o;
  const auto params = make_shift_params(13, 4);
  constexpr std::size_t kLimit = 5000;
  const std::size_t range = 6 * 6 * 6 * 6 * 6;  // encodable indices
  std::vector<std::array<std::uint64_t, 5>> base(kLimit);
  for (std::size_t i = 0; i < kLimit; ++i) {
    const auto d = encode_index_fq(i, params).digits;
    std::copy(d.begin(), d.end(), base[i].begin());
  }
  std::vector<std::array<std::uint32_t, 16>> variants(2 * kLimit);
  for (std::size_t s = 0; s < 2 * kLimit; ++s) {
    FqIndexPolynomial b;
    if (s < range) {
      b = encode_index_fq(s, params);
    } else {
      b.digits = wide_base(s, params);
      b.is_base = true;
    }
    const auto v = expand_variants(s, b, params);
    for (std::size_t k = 0; k < 16; ++k) variants[s][k] = pack(v.members[k].digits);
  }
  std::uint64_t in_range = 0, beyond = 0;
  for (std::size_t i = 0; i < kLimit; ++i) {
    for (std::size_t j = 0; j < kLimit; ++j) {
      std::array<std::uint64_t, 5> sum;
      for (std::size_t k = 0; k < 5; ++k) sum[k] = base[i][k] + base[j][k];
      const std::uint32_t key = pack(sum);
      int hits = 0;
      for (std::uint32_t v : variants[i + j]) hits += v == key ? 1 : 0;
      o.require(hits == 1, "i=" + std::to_string(i) + " j=" + std::to_string(j) + " matches " +
                               std::to_string(hits) + " variants");
      ++(i + j < range ? in_range : beyond);
    }
  }
  if (o.ok) {
    o.detail = std::to_string(in_range) + " pairs in range, " + std::to_string(beyond) +
               " with i+j >= 6^5 checked against a widened top digit";
  }
  return o;
}

Outcome fq_coincidence_bound() {
  Outcome o;
  Rng rng(8);
  const std::vector<std::uint64_t> primes{13, 17, 29, 37, 53, 61, 79, 97, 101};
  for (int k = 0; k < 500; ++k) {
    const std::uint64_t q = primes[rng.below(primes.size())];
    const int max_c = q < 20 ? 2 : q < 60 ? 3 : 4;
    const auto params = make_shift_params(q, 1 + static_cast<int>(rng.below(std::uint64_t(max_c))));
    Index limit = 1;
    for (int d = 0; d <= params.c; ++d) limit *= params.digit_base;
    // Half the pairs are two variants of one index, the rest unrelated.
    const Index i = rng.below(limit);
    const Index j = k % 2 == 0 ? i : rng.below(limit);
    const auto vi = expand_variants(i, encode_index_fq(i, params), params);
    const auto vj = expand_variants(j, encode_index_fq(j, params), params);
    const auto& a = vi.members[rng.below(vi.members.size())];
    const auto& b = vj.members[rng.below(vj.members.size())];
    if (a == b) {
      --k;
      continue;
    }
    int same = 0;
    for (std::uint64_t x = 0; x < q; ++x) same += evaluate_fq(a, q, x) == evaluate_fq(b, q, x) ? 1 : 0;
    o.require(same <= params.c, "pair coincides " + std::to_string(same) + " times, c=" +
                                    std::to_string(params.c) + ", q=" + std::to_string(q));
  }
  return o;
}

Outcome prime_search() {
  Outcome o;
  const std::vector<Index> micro{0, 5, 12};
  const std::vector<std::uint64_t> pool{5, 7, 11};
  const std::uint64_t p = exp_prime_search(micro, pool);
  o.require(p == 11, "micro example gave " + std::to_string(p));
  Rng rng(9);
  std::set<Index> s;
  while (s.size() < 32) s.insert(rng.below(kIndexMax));
  const std::vector<Index> wide(s.begin(), s.end());
  const std::uint64_t w = exp_prime_search(wide, PrimeSearchConfig{4096, 20});
  std::set<std::uint64_t> residues;
  for (Index i : wide) residues.insert(static_cast<std::uint64_t>(i % w));
  o.require(residues.size() == wide.size(), "residues collide mod " + std::to_string(w));
  o.require(is_prime(w) && w >= (1U << 19) && w < (1U << 20), "prime outside the pool range");
  return o;
}

double median_nanos(const std::vector<BenchRecord>& rows, const std::string& algo, std::size_t n) {
  std::vector<double> t;
  for (const auto& r : rows) {
    if (r.algorithm == algo && r.n == n) t.push_back(static_cast<double>(r.wall_time_nanos));
  }
  if (t.empty()) return NAN;
  std::sort(t.begin(), t.end());
  return t.size() % 2 == 1 ? t[t.size() / 2] : (t[t.size() / 2 - 1] + t[t.size() / 2]) / 2;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
  }
  return sxy / sxx;
}

Outcome performance() {
  Outcome o;
  const auto csv = std::filesystem::temp_directory_path() /
                   ("sparseconv_acceptance_" + std::to_string(::getpid()) + ".csv");
  std::filesystem::remove(csv);
  for (const char* algo : {"lasvegas", "oracle"}) {
    const std::vector<std::string> args{"sparseconv", "bench", "--family", "shift", "--algo", algo, "--seed", "100",
                                        "--seeds", "3", "--grid", "N=4294967296", "n=4096,8192,16384,32768",
                                        "m=n", "planted=1", "--csv", csv.string()};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    o.require(code == 0, std::string("bench ") + algo + " failed: " + err.str());
  }
  const auto rows = read_bench_csv(csv);
  std::filesystem::remove(csv);
  o.require(rows.size() == 24, "expected 24 CSV rows");
  if (!o.ok) return o;

  std::vector<double> ns, lv, oracle;
  for (std::size_t n : {4096, 8192, 16384, 32768}) {
    ns.push_back(static_cast<double>(n));
    lv.push_back(median_nanos(rows, "lasvegas", n));
    oracle.push_back(median_nanos(rows, "oracle", n));
  }
  // Both algorithms must agree on every seed before timings mean anything.
  for (std::size_t k = 0; k < 12; ++k) o.require(rows[k].output_size == rows[k + 12].output_size, "outputs differ");
  const double speedup = oracle.back() / lv.back();
  const double slope = loglog_slope(ns, lv);
  const double oracle_slope = loglog_slope(ns, oracle);
  char buf[160];
  std::snprintf(buf, sizeof buf, "speedup at n=2^15 %.1fx (need >= 5), lasvegas slope %.2f (need < 1.5), oracle slope %.2f",
                speedup, slope, oracle_slope);
  o.require(speedup >= 5.0, buf);
  o.require(slope < 1.5, buf);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome transform_exactness() {
  Outcome o;
  Rng rng(11);
  for (int k = 0; k <= 16; ++k) {
    const std::size_t len = std::size_t{1} << k;
    std::vector<std::int64_t> v(len);
    for (auto& x : v) x = static_cast<std::int64_t>(rng.below(std::uint64_t{2000001})) - 1000000;
    std::vector<std::int64_t> w = v;
    fwht_in_place(w);
    fwht_in_place(w);
    for (std::size_t i = 0; i < len; ++i) {
      if (w[i] != v[i] * static_cast<std::int64_t>(len)) {
        o.require(false, "FWHT twice at length " + std::to_string(len));
        break;
      }
    }
  }
  const std::uint64_t p = ntt_prime_primary().p;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng r(mix_seed(seed, 11));
    for (std::size_t len = 1; len <= 256; ++len) {
      // Alternate 0/1 entries with entries large enough that the output bound
      // passes the first prime and needs the CRT path.
      const std::uint64_t bound = len % 2 == 0 ? 2 : (std::uint64_t{1} << 27);
      std::vector<std::int64_t> a(len), b(len);
      for (auto& x : a) x = static_cast<std::int64_t>(r.below(bound));
      for (auto& x : b) x = static_cast<std::int64_t>(r.below(bound));
      const DenseIntVector got = cyclic_correlate(a, b);
      std::vector<std::uint64_t> am(len), bm(len);
      for (std::size_t i = 0; i < len; ++i) {
        am[i] = static_cast<std::uint64_t>(a[i]) % p;
        bm[i] = static_cast<std::uint64_t>(b[i]) % p;
      }
      const auto got_mod = cyclic_correlate_mod(am, bm);
      for (std::size_t s = 0; s < len; ++s) {
        unsigned __int128 want = 0;
        for (std::size_t j = 0; j < len; ++j) {
          want += static_cast<unsigned __int128>(a[(s + j) % len]) * static_cast<std::uint64_t>(b[j]);
        }
        if (static_cast<unsigned __int128>(got[s]) != want ||
            got_mod[s] != static_cast<std::uint64_t>(want % p)) {
          o.require(false, "cyclic correlation, length " + std::to_string(len) + " seed " + std::to_string(seed));
          break;
        }
      }
    }
  }
  return o;
}

}  // namespace
}  // namespace sparseconv

int main() {
  using namespace sparseconv;
  criterion(1, "shift matchers on the N=38 fixture return {15,19,21}", 1.0, fixture_n38);
  criterion(2, "Walsh fixtures: 02000020, reduced 0202, location 11 -> 110", 1.0, walsh_fixtures);
  criterion(3, "encoding fixtures over GF(4) and F_13", 0, encoding_fixtures);
  criterion(4, "Las Vegas equals oracle on 1000 instances per family", 300.0, lasvegas_equivalence);
  criterion(5, "deterministic equals oracle on 200 instances, table size and coverage", 0,
            deterministic_equivalence);
  criterion(6, "GF(2^8) index hashes collide at most d times per pair", 10.0, gf2_collision_bound);
  criterion(7, "digit identity for all i, j < 5000 (q=13, c=4)", 30.0, digit_identity);
  criterion(8, "F_q polynomial pairs coincide at most c times (q <= 101)", 0, fq_coincidence_bound);
  criterion(9, "prime search micro example and 128-bit separation", 10.0, prime_search);
  criterion(10, "Las Vegas shift speedup and scaling at N=2^32", 600.0, performance);
  criterion(11, "FWHT involution and NTT correlation exactness", 0, transform_exactness);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
