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

#include "sparseconv/bench.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "sparseconv/error.hpp"
#include "sparseconv/instance.hpp"
#include "sparseconv/oracle.hpp"
#include "sparseconv/shift_matcher.hpp"
#include "sparseconv/xor_matcher.hpp"

namespace sparseconv {
namespace {

std::uint64_t parse_u64(const std::string& s, const char* field) {
  const auto v = parse_index(s);
  if (!v || *v > UINT64_MAX) throw Error(ErrorCode::kParseError, std::string("bad CSV field ") + field);
  return static_cast<std::uint64_t>(*v);
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kOracle:
      return "oracle";
    case Algorithm::kLasVegas:
      return "lasvegas";
    case Algorithm::kDeterministic:
      return "det";
    case Algorithm::kMask:
      return "mask";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kOracle, Algorithm::kLasVegas, Algorithm::kDeterministic,
                      Algorithm::kMask}) {
    if (algorithm_name(a) == name) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

MatchResult run_matcher(Algorithm algo, Family family, const SparseBinaryVector& text,
                        const SparseBinaryVector& pattern, const MatchOptions& options) {
  if (family == Family::kXor) {
    switch (algo) {
      case Algorithm::kOracle:
        return oracle_match_xor(text, pattern);
      case Algorithm::kLasVegas:
        return sparse_match_xor(text, pattern,
                                {options.oversize_factor, options.max_rounds, options.seed});
      case Algorithm::kMask:
        return sparse_match_xor_mask(text, pattern, options.seed);
      case Algorithm::kDeterministic:
        break;
    }
    throw Error(ErrorCode::kInvalidArgument, "algorithm det is shift-only");
  }
  switch (algo) {
    case Algorithm::kOracle:
      return oracle_match_shift(text, pattern);
    case Algorithm::kLasVegas:
      return sparse_match_shift_lasvegas(text, pattern, {options.seed, options.max_rounds});
    case Algorithm::kDeterministic:
      return sparse_match_shift_deterministic(text, pattern, preprocess_select_assignments(text));
    case Algorithm::kMask:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "algorithm mask is xor-only");
}

BenchRecord run_bench_cell(const BenchCell& cell) {
  InstanceSpec spec;
  spec.family = cell.family;
  spec.text_domain = cell.domain_size;
  spec.noise = cell.n;
  spec.pattern_count = cell.m;
  spec.planted = cell.planted;
  spec.seed = cell.seed;
  const Instance inst = gen_instance(spec);

  MatchOptions options = cell.options;
  options.seed = cell.seed;
  MatchResult result;
  std::chrono::steady_clock::duration elapsed{};
  if (cell.algorithm == Algorithm::kDeterministic && cell.family == Family::kShift) {
    const AssignmentTable table = preprocess_select_assignments(inst.text);
    const auto start = std::chrono::steady_clock::now();
    result = sparse_match_shift_deterministic(inst.text, inst.pattern, table);
    elapsed = std::chrono::steady_clock::now() - start;
  } else {
    const auto start = std::chrono::steady_clock::now();
    result = run_matcher(cell.algorithm, cell.family, inst.text, inst.pattern, options);
    elapsed = std::chrono::steady_clock::now() - start;
  }

  BenchRecord r;
  r.algorithm = std::string(algorithm_name(cell.algorithm));
  r.family = std::string(family_name(cell.family));
  r.domain_size = cell.domain_size;
  r.n = cell.n;
  r.m = cell.m;
  r.planted = cell.planted;
  r.seed = cell.seed;
  r.rounds_used = result.rounds_used;
  r.candidates_verified = result.counts_checked;
  const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count();
  r.wall_time_nanos = ns > 0 ? static_cast<std::uint64_t>(ns) : 1;
  r.output_size = result.positions.size();
  return r;
}

std::string format_bench_row(const BenchRecord& r) {
  std::ostringstream out;
  out << r.algorithm << ',' << r.family << ',' << to_string(r.domain_size) << ',' << r.n << ','
      << r.m << ',' << r.planted << ',' << r.seed << ',' << r.rounds_used << ','
      << r.candidates_verified << ',' << r.wall_time_nanos << ',' << r.output_size;
  return out.str();
}

void append_bench_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& rows) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for appending");
  if (fresh) out << kBenchSchemaComment << '\n' << kBenchHeader << '\n';
  for (const BenchRecord& r : rows) out << format_bench_row(r) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

std::vector<BenchRecord> read_bench_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<BenchRecord> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == kBenchHeader) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 11) throw Error(ErrorCode::kParseError, "CSV row needs 11 fields: " + line);
    BenchRecord r;
    r.algorithm = f[0];
    r.family = f[1];
    const auto domain = parse_index(f[2]);
    if (!domain) throw Error(ErrorCode::kParseError, "bad CSV field N");
    r.domain_size = *domain;
    r.n = parse_u64(f[3], "n");
    r.m = parse_u64(f[4], "m");
    r.planted = parse_u64(f[5], "planted");
    r.seed = parse_u64(f[6], "seed");
    r.rounds_used = static_cast<std::uint32_t>(parse_u64(f[7], "rounds_used"));
    r.candidates_verified = parse_u64(f[8], "candidates_verified");
    r.wall_time_nanos = parse_u64(f[9], "wall_time_nanos");
    r.output_size = parse_u64(f[10], "output_size");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace sparseconv
