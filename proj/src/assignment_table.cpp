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
#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "shift_internal.hpp"
#include "sparseconv/error.hpp"
#include "sparseconv/shift_matcher.hpp"
#include "sparseconv/sv_io.hpp"
#include "sparseconv/transforms.hpp"

namespace sparseconv {
namespace {

constexpr std::uint64_t kMaxTableBits = std::uint64_t{1} << 32;
constexpr char kMagic[4] = {'L', 'R', 'A', 'T'};

using BitRow = std::vector<std::uint64_t>;

std::size_t popcount_and(const BitRow& a, const BitRow& b) {
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.size(); ++w) n += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return n;
}

template <typename T>
void put_le(std::ostream& out, T v) {
  char buf[sizeof(T)];
  for (std::size_t k = 0; k < sizeof(T); ++k) buf[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  out.write(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw Error(ErrorCode::kParseError, std::string("table file truncated at ") + what);
  }
  T v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) v |= static_cast<T>(buf[k]) << (8 * k);
  return v;
}

}  // namespace

AssignmentTable preprocess_select_assignments(const SparseBinaryVector& text,
                                              const ShiftReductionParams& params) {
  if (text.empty()) throw Error(ErrorCode::kInvalidArgument, "text has no nonzeros");
  if (!covers_domain(params, text.domain_size())) {
    throw Error(ErrorCode::kInvalidArgument, "params do not cover the text domain");
  }
  const std::size_t variants = std::size_t{1} << params.c;
  const std::size_t columns = text.count() * variants;
  const std::size_t pool = static_cast<std::size_t>(params.c) * 2 * columns;
  const std::size_t rows = std::min<std::size_t>(pool, params.q);
  // A column can collide with each other column on at most c assignments,
  // so it stays singleton on all but c * (columns - 1) rows.
  if (rows <= static_cast<std::size_t>(params.c) * (columns - 1)) {
    throw Error(ErrorCode::kAssignmentPoolExhausted,
                "q=" + std::to_string(params.q) + " leaves " + std::to_string(rows) +
                    " assignments; coverage needs more than " +
                    std::to_string(static_cast<std::size_t>(params.c) * (columns - 1)));
  }
  if (static_cast<std::uint64_t>(rows) * columns > kMaxTableBits) {
    throw Error(ErrorCode::kInvalidArgument, "assignment table exceeds 2^32 bits");
  }

  AssignmentTable table;
  table.params = params;
  table.text_fingerprint = fingerprint(text);
  table.columns = columns;
  table.pool_size = pool;
  table.full_pool = rows == pool;

  const std::size_t words = (columns + 63) / 64;
  std::vector<BitRow> bits(rows, BitRow(words, 0));
  std::vector<std::uint32_t> bucket_count(params.q, 0);
  std::vector<std::uint64_t> evals(columns);
  std::vector<std::size_t> column_fill(columns, 0);
  table.rows.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::uint64_t a = r;
    table.rows[r] = a;
    const detail::AssignmentEvaluator eval(params, a);
    for (std::size_t x = 0; x < text.count(); ++x) {
      const std::uint64_t base = eval.base_eval(text.support()[x]);
      for (std::size_t v = 0; v < variants; ++v) {
        const std::uint64_t b = eval.variant_eval(base, static_cast<std::uint32_t>(v));
        evals[x * variants + v] = b;
        ++bucket_count[b];
      }
    }
    for (std::size_t col = 0; col < columns; ++col) {
      if (bucket_count[evals[col]] == 1) {
        bits[r][col / 64] |= std::uint64_t{1} << (col % 64);
        ++column_fill[col];
      }
    }
    for (std::uint64_t b : evals) bucket_count[b] = 0;
  }
  table.min_row_fill = *std::min_element(column_fill.begin(), column_fill.end());
  if (table.full_pool) {
    check_internal(2 * table.min_row_fill >= rows, "assignment table column less than half full");
  }

  BitRow alive(words, 0);
  for (std::size_t col = 0; col < columns; ++col) alive[col / 64] |= std::uint64_t{1} << (col % 64);
  std::size_t remaining = columns;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_cover = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t cover = popcount_and(bits[r], alive);
      if (cover > best_cover) {
        best = r;
        best_cover = cover;
      }
    }
    if (best_cover == 0) {
      throw Error(ErrorCode::kAssignmentPoolExhausted, "some polynomial is never a singleton");
    }
    table.selected.push_back(table.rows[best]);
    for (std::size_t w = 0; w < words; ++w) alive[w] &= ~bits[best][w];
    remaining -= best_cover;
  }
  if (table.full_pool) {
    // Each pick covers at least half of what is left.
    check_internal(table.selected.size() <= static_cast<std::size_t>(std::bit_width(columns)),
                   "greedy selection exceeded the halving bound");
  }
  return table;
}

AssignmentTable preprocess_select_assignments(const SparseBinaryVector& text) {
  return preprocess_select_assignments(
      text, choose_params(text.domain_size(), text.count(), true));
}

MatchResult sparse_match_shift_deterministic(const SparseBinaryVector& text,
                                             const SparseBinaryVector& pattern,
                                             const AssignmentTable& table) {
  if (fingerprint(text) != table.text_fingerprint) {
    throw Error(ErrorCode::kStaleTable, "table was built for a different text");
  }
  if (!covers_domain(table.params, text.domain_size()) || table.selected.empty()) {
    throw Error(ErrorCode::kStaleTable, "table parameters do not fit this text");
  }
  if (pattern.empty()) throw Error(ErrorCode::kEmptyPattern, "pattern has no nonzeros");
  make_family(Family::kShift, text, pattern);

  const Index last = text.domain_size() - pattern.domain_size();
  const Index p0 = pattern.support().front();
  const auto m = static_cast<std::int64_t>(pattern.count());
  const std::uint64_t q = table.params.q;

  std::vector<Index> alive;
  for (Index t : text.support()) {
    if (t >= p0 && t - p0 <= last) alive.push_back(t - p0);
  }

  for (std::uint64_t a : table.selected) {
    if (alive.empty()) break;
    const detail::AssignmentEvaluator eval(table.params, a);
    std::vector<std::int64_t> tmarks(q, 0);
    std::vector<std::int64_t> pmarks(q, 0);
    for (Index t : text.support()) {
      const std::uint64_t base = eval.base_eval(t);
      for (std::uint32_t v = 0; v < eval.variant_count(); ++v) ++tmarks[eval.variant_eval(base, v)];
    }
    for (Index j : pattern.support()) ++pmarks[eval.base_eval(j)];
    const DenseIntVector counts = cyclic_correlate(tmarks, pmarks);
    std::erase_if(alive, [&](Index i) { return counts[eval.base_eval(i)] < m; });
  }

  MatchResult result;
  const MembershipIndex members(text.support());
  for (Index i : alive) {
    ++result.counts_checked;
    if (verify_shift_match(members, text.domain_size(), pattern, i)) result.positions.push_back(i);
  }
  return result;
}

void save_table(std::ostream& out, const AssignmentTable& table) {
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, kTableFormatVersion);
  put_le<std::uint64_t>(out, table.params.q);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.params.c));
  put_le<std::uint64_t>(out, table.text_fingerprint);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.selected.size()));
  for (std::uint64_t a : table.selected) put_le<std::uint64_t>(out, a);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing table");
}

void save_table(const std::filesystem::path& path, const AssignmentTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  save_table(out, table);
}

AssignmentTable load_table(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw Error(ErrorCode::kParseError, "not an assignment table (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kTableFormatVersion) {
    throw Error(ErrorCode::kParseError, "unsupported table version " + std::to_string(version));
  }
  AssignmentTable table;
  const auto q = get_le<std::uint64_t>(in, "q");
  const auto c = get_le<std::uint32_t>(in, "c");
  if (c > 32) throw Error(ErrorCode::kParseError, "degree bound out of range");
  try {
    table.params = make_shift_params(q, static_cast<int>(c));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseError, "invalid table parameters: " + e.detail());
  }
  table.text_fingerprint = get_le<std::uint64_t>(in, "fingerprint");
  const auto count = get_le<std::uint32_t>(in, "count");
  for (std::uint32_t k = 0; k < count; ++k) {
    const auto a = get_le<std::uint64_t>(in, "assignment");
    if (a >= q) throw Error(ErrorCode::kParseError, "assignment outside F_q");
    table.selected.push_back(a);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::kParseError, "trailing bytes after table");
  }
  return table;
}

AssignmentTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return load_table(in);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.detail());
  }
}

}  // namespace sparseconv
