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

#include "sparseconv/sv_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sparseconv/error.hpp"

namespace sparseconv {
namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

SparseBinaryVector read_sparse(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  Index domain = 0;
  std::vector<Index> support;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (!line.starts_with("N=")) parse_error(line_no, "expected N=<size> header");
      const auto n = parse_index(line.substr(2));
      if (!n) parse_error(line_no, "bad domain size '" + std::string(line.substr(2)) + "'");
      domain = *n;
      have_header = true;
      continue;
    }
    const auto idx = parse_index(line);
    if (!idx) parse_error(line_no, "bad index '" + std::string(line) + "'");
    if (*idx >= domain) {
      parse_error(line_no, "index " + to_string(*idx) + " out of range for N=" + to_string(domain));
    }
    if (!support.empty() && *idx <= support.back()) {
      parse_error(line_no, *idx == support.back() ? "duplicate index " + to_string(*idx)
                                                   : "index " + to_string(*idx) + " not ascending");
    }
    support.push_back(*idx);
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failure");
  if (!have_header) parse_error(line_no + 1, "missing N=<size> header");
  return SparseBinaryVector(domain, std::move(support));
}

SparseBinaryVector read_sparse(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return read_sparse(in);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.detail());
  }
}

std::string serialize_sparse(const SparseBinaryVector& v) {
  std::string out = "N=" + to_string(v.domain_size()) + "\n";
  for (Index i : v.support()) {
    out += to_string(i);
    out += '\n';
  }
  return out;
}

void write_sparse(std::ostream& out, const SparseBinaryVector& v) {
  out << serialize_sparse(v);
}

void write_sparse(const std::filesystem::path& path, const SparseBinaryVector& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  write_sparse(out, v);
  if (!out) throw Error(ErrorCode::kIoError, "write failure on " + path.string());
}

std::uint64_t fingerprint(const SparseBinaryVector& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_sparse(v)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_positions(std::ostream& out, std::span<const Index> positions) {
  for (Index i : positions) out << to_string(i) << '\n';
}

void write_positions(const std::filesystem::path& path,
                     std::span<const Index> positions) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  write_positions(out, positions);
  if (!out) throw Error(ErrorCode::kIoError, "write failure on " + path.string());
}

}  // namespace sparseconv
