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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sparseconv/sparse_vector.hpp"

namespace sparseconv {

enum class Algorithm { kOracle, kLasVegas, kDeterministic, kMask };

std::string_view algorithm_name(Algorithm a);
// Throws INVALID_ARGUMENT for unknown names.
Algorithm parse_algorithm(std::string_view name);

struct MatchOptions {
  std::uint64_t seed = 0;
  std::uint32_t max_rounds = 4;
  std::uint32_t oversize_factor = 8;
};

// Dispatches to the matcher for (family, algorithm). The deterministic
// algorithm builds its assignment table first; mask is XOR only.
MatchResult run_matcher(Algorithm algo, Family family, const SparseBinaryVector& text,
                        const SparseBinaryVector& pattern, const MatchOptions& options);

struct BenchRecord {
  std::string algorithm;
  std::string family;
  Index domain_size = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t planted = 0;
  std::uint64_t seed = 0;
  std::uint32_t rounds_used = 0;
  std::uint64_t candidates_verified = 0;
  std::uint64_t wall_time_nanos = 0;
  std::size_t output_size = 0;
};

struct BenchCell {
  Algorithm algorithm = Algorithm::kLasVegas;
  Family family = Family::kShift;
  Index domain_size = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t planted = 0;
  std::uint64_t seed = 0;
  MatchOptions options;
};

// Generates the instance for the cell and times the matcher call alone
// (table construction for the deterministic matcher is excluded).
BenchRecord run_bench_cell(const BenchCell& cell);

inline constexpr std::string_view kBenchSchemaComment = "# sparseconv bench schema v1";
inline constexpr std::string_view kBenchHeader =
    "algorithm,family,N,n,m,planted,seed,rounds_used,candidates_verified,wall_time_nanos,output_size";

std::string format_bench_row(const BenchRecord& r);

// Appends rows; a new or empty file first receives the schema comment and
// the header line.
void append_bench_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& rows);

// Parses rows written by append_bench_csv (comment and header skipped).
std::vector<BenchRecord> read_bench_csv(const std::filesystem::path& path);

}  // namespace sparseconv
