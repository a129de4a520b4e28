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
#include <span>
#include <string>

#include "sparseconv/sparse_vector.hpp"

namespace sparseconv {

// Sparse vector text format (.sv):
//
//   # optional comment lines
//   N=<decimal domain size>
//   <index>
//   <index>
//   ...
//
// Indices are decimal, strictly ascending and < N. Blank lines are ignored.
// Errors are PARSE_ERROR with the 1-based line number in the message.
SparseBinaryVector read_sparse(std::istream& in);
SparseBinaryVector read_sparse(const std::filesystem::path& path);

void write_sparse(std::ostream& out, const SparseBinaryVector& v);
void write_sparse(const std::filesystem::path& path, const SparseBinaryVector& v);

// Canonical serialization, identical to what write_sparse emits.
std::string serialize_sparse(const SparseBinaryVector& v);

// 64-bit FNV-1a of the canonical serialization.
std::uint64_t fingerprint(const SparseBinaryVector& v);

// Match output: one decimal position per line, ascending, trailing newline.
void write_positions(std::ostream& out, std::span<const Index> positions);
void write_positions(const std::filesystem::path& path,
                     std::span<const Index> positions);

}  // namespace sparseconv
