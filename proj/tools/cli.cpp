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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sparseconv/bench.hpp"
#include "sparseconv/error.hpp"
#include "sparseconv/instance.hpp"
#include "sparseconv/oracle.hpp"
#include "sparseconv/prime_search.hpp"
#include "sparseconv/shift_matcher.hpp"
#include "sparseconv/sv_io.hpp"

namespace sparseconv::cli {
namespace {

// Raised for inconsistent command lines; maps to the validation exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Index parse_decimal(const std::string& text, const std::string& flag) {
  const auto v = parse_index(text);
  if (!v) throw UsageError(flag + ": expected a decimal integer, got '" + text + "'");
  return *v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& flag) {
  const Index v = parse_decimal(text, flag);
  if (v > UINT64_MAX) throw UsageError(flag + ": value exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::uint32_t parse_u32(const std::string& text, const std::string& flag) {
  const std::uint64_t v = parse_u64(text, flag);
  if (v > UINT32_MAX) throw UsageError(flag + ": value exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

Family parse_family(const std::string& s) {
  if (s == "xor") return Family::kXor;
  if (s == "shift") return Family::kShift;
  throw UsageError("--mode must be xor or shift");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

void write_output(const std::string& path, std::span<const Index> positions, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_positions(out, positions);
  } else {
    write_positions(std::filesystem::path(path), positions);
  }
}

struct Flags {
  std::string text;
  std::string pattern;
  std::string output;
  std::string seed;
  std::string mode = "shift";
  std::string algo = "lasvegas";
  bool check = false;
  std::string rounds = "4";
  std::string oversize = "8";
};

MatchOptions options_from(const Flags& f) {
  MatchOptions o;
  o.seed = f.seed.empty() ? 0 : parse_u64(f.seed, "--seed");
  o.max_rounds = parse_u32(f.rounds, "--rounds");
  o.oversize_factor = parse_u32(f.oversize, "--oversize");
  if (o.max_rounds == 0) throw UsageError("--rounds must be >= 1");
  return o;
}

int cmd_gen(const Flags& f, const std::string& domain, const std::string& pattern_domain,
            const std::string& noise, const std::string& count, const std::string& planted,
            const std::string& planted_out, std::ostream& err) {
  if (f.seed.empty()) throw UsageError("gen: --seed is required");
  if (f.text.empty() || f.pattern.empty()) throw UsageError("gen: -t and -p output paths are required");
  InstanceSpec spec;
  spec.family = parse_family(f.mode);
  spec.text_domain = parse_decimal(domain, "--domain");
  spec.pattern_domain = pattern_domain.empty() ? 0 : parse_decimal(pattern_domain, "--pattern-domain");
  spec.noise = parse_u64(noise, "--noise");
  spec.pattern_count = parse_u64(count, "--count");
  spec.planted = parse_u64(planted, "--planted");
  spec.seed = parse_u64(f.seed, "--seed");
  const Instance inst = gen_instance(spec);
  write_sparse(std::filesystem::path(f.text), inst.text);
  write_sparse(std::filesystem::path(f.pattern), inst.pattern);
  if (!planted_out.empty()) write_positions(std::filesystem::path(planted_out), inst.planted_positions);
  err << "text=" << inst.text.count() << " pattern=" << inst.pattern.count()
      << " planted=" << inst.planted_positions.size() << '\n';
  return kExitOk;
}

int cmd_match(const Flags& f, const std::string& table_path, std::ostream& out, std::ostream& err) {
  if (f.text.empty() || f.pattern.empty()) throw UsageError("match: -t and -p are required");
  const Family family = parse_family(f.mode);
  const Algorithm algo = parse_algorithm(f.algo);
  if ((algo == Algorithm::kLasVegas || algo == Algorithm::kMask) && f.seed.empty()) {
    throw UsageError("match: --seed is required for randomized algorithms");
  }
  if (!table_path.empty() && algo != Algorithm::kDeterministic) {
    throw UsageError("match: --table only applies to --algo det");
  }
  const MatchOptions options = options_from(f);
  const SparseBinaryVector text = read_sparse(std::filesystem::path(f.text));
  const SparseBinaryVector pattern = read_sparse(std::filesystem::path(f.pattern));

  MatchResult result;
  if (!table_path.empty()) {
    if (family != Family::kShift) throw UsageError("match: --table needs --mode shift");
    result = sparse_match_shift_deterministic(text, pattern,
                                              load_table(std::filesystem::path(table_path)));
  } else {
    result = run_matcher(algo, family, text, pattern, options);
  }

#ifdef SPARSECONV_FAULT_INJECTION
  // Test-only build: corrupt the result so --check has something to catch.
  if (result.positions.empty()) {
    result.positions.push_back(0);
  } else {
    result.positions.pop_back();
  }
#endif

  if (f.check) {
    const MatchResult expected = family == Family::kXor ? oracle_match_xor(text, pattern)
                                                        : oracle_match_shift(text, pattern);
    if (expected.positions != result.positions) {
      err << "check failed: " << algorithm_name(algo) << " returned " << result.positions.size()
          << " matches, oracle " << expected.positions.size() << '\n';
      return kExitInternal;
    }
  }
  write_output(f.output, result.positions, out);
  err << "matches=" << result.positions.size() << " rounds=" << result.rounds_used
      << " candidates=" << result.counts_checked << " fallback=" << (result.used_fallback ? 1 : 0)
      << (f.check ? " check=ok" : "") << '\n';
  return kExitOk;
}

int cmd_preprocess(const Flags& f, std::ostream& err) {
  if (f.text.empty() || f.output.empty()) throw UsageError("preprocess: -t and -o are required");
  const SparseBinaryVector text = read_sparse(std::filesystem::path(f.text));
  const AssignmentTable table = preprocess_select_assignments(text);
  save_table(std::filesystem::path(f.output), table);
  err << "q=" << table.params.q << " c=" << table.params.c << " columns=" << table.columns
      << " rows=" << table.rows.size() << " selected=" << table.selected.size() << '\n';
  return kExitOk;
}

int cmd_findprime(const Flags& f, const std::string& indices, const std::string& pool,
                  const std::string& pool_count, const std::string& pool_bits, std::ostream& out) {
  std::vector<Index> values;
  if (!f.text.empty() && !indices.empty()) throw UsageError("findprime: give -t or --indices, not both");
  if (!f.text.empty()) {
    values = read_sparse(std::filesystem::path(f.text)).support();
  } else if (!indices.empty()) {
    for (const auto& s : split(indices, ',')) values.push_back(parse_decimal(s, "--indices"));
  } else {
    throw UsageError("findprime: -t or --indices is required");
  }
  std::uint64_t p = 0;
  if (!pool.empty()) {
    std::vector<std::uint64_t> primes;
    for (const auto& s : split(pool, ',')) primes.push_back(parse_u64(s, "--pool"));
    p = exp_prime_search(values, primes);
  } else {
    PrimeSearchConfig config;
    config.prime_count = parse_u64(pool_count, "--pool-count");
    config.prime_bits = static_cast<int>(parse_u32(pool_bits, "--pool-bits"));
    p = exp_prime_search(values, config);
  }
  out << p << '\n';
  return kExitOk;
}

int cmd_bench(const Flags& f, const std::vector<std::string>& grid, const std::string& seeds,
              const std::string& csv, std::ostream& err) {
  if (csv.empty()) throw UsageError("bench: --csv is required");
  const Family family = parse_family(f.mode);
  const Algorithm algo = parse_algorithm(f.algo);
  const MatchOptions options = options_from(f);
  const std::uint64_t seed_base = options.seed;
  const std::uint64_t seed_count = parse_u64(seeds, "--seeds");
  if (seed_count == 0) throw UsageError("--seeds must be >= 1");

  // Defaults give sparse matches; "m=n" ties the pattern size to n.
  std::map<std::string, std::vector<std::string>> axes = {
      {"N", {"1048576"}}, {"n", {"1024"}}, {"m", {"16"}}, {"planted", {"1"}}};
  for (const auto& g : grid) {
    const auto eq = g.find('=');
    if (eq == std::string::npos) throw UsageError("--grid expects key=v1,v2,...");
    const std::string key = g.substr(0, eq);
    if (!axes.contains(key)) throw UsageError("--grid key must be one of N, n, m, planted");
    axes[key] = split(g.substr(eq + 1), ',');
    if (axes[key].empty()) throw UsageError("--grid " + key + " has no values");
  }

  std::vector<BenchRecord> rows;
  for (const auto& ns : axes["N"]) {
    for (const auto& nn : axes["n"]) {
      for (const auto& ms : axes["m"]) {
        for (const auto& ps : axes["planted"]) {
          for (std::uint64_t k = 0; k < seed_count; ++k) {
            BenchCell cell;
            cell.algorithm = algo;
            cell.family = family;
            cell.domain_size = parse_decimal(ns, "--grid N");
            cell.n = parse_u64(nn, "--grid n");
            cell.m = ms == "n" ? cell.n : parse_u64(ms, "--grid m");
            cell.planted = parse_u64(ps, "--grid planted");
            cell.seed = seed_base + k;
            cell.options = options;
            rows.push_back(run_bench_cell(cell));
            // Rows go out as they finish so an interrupted grid keeps its data.
            append_bench_csv(std::filesystem::path(csv), {rows.back()});
          }
        }
      }
    }
  }
  err << "rows=" << rows.size() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse binary convolution matcher"};
  app.require_subcommand(1);
  Flags f;

  const auto shared = [&f](CLI::App* sub) {
    sub->add_option("-t,--text", f.text, "text .sv path");
    sub->add_option("-p,--pattern", f.pattern, "pattern .sv path");
    sub->add_option("-o,--output", f.output, "output path");
    sub->add_option("--seed", f.seed, "u64 seed (decimal)");
    sub->add_option("--mode,--family", f.mode, "xor or shift");
    sub->add_option("--algo", f.algo, "oracle, lasvegas, det or mask");
    sub->add_flag("--check", f.check, "compare against the oracle");
    sub->add_option("--rounds", f.rounds, "maximum randomized rounds");
    sub->add_option("--oversize", f.oversize, "XOR bucket oversize factor");
  };

  std::string domain = "1048576", pattern_domain, noise = "1024", count = "16", planted = "1",
              planted_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a seeded instance");
  shared(gen);
  gen->add_option("-N,--domain", domain, "text domain size");
  gen->add_option("--pattern-domain", pattern_domain, "pattern domain size");
  gen->add_option("-n,--noise", noise, "noise nonzeros");
  gen->add_option("-m,--count", count, "pattern nonzeros");
  gen->add_option("--planted", planted, "planted copies");
  gen->add_option("--planted-out", planted_out, "write planted positions here");

  std::string table_path;
  CLI::App* match = app.add_subcommand("match", "find all matches");
  shared(match);
  match->add_option("--table", table_path, "assignment table for --algo det");

  CLI::App* pre = app.add_subcommand("preprocess", "build the deterministic assignment table");
  shared(pre);

  std::string indices, pool, pool_count = "4096", pool_bits = "20";
  CLI::App* fp = app.add_subcommand("findprime", "prime separating a set of indices");
  shared(fp);
  fp->add_option("--indices", indices, "comma separated decimal indices");
  fp->add_option("--pool", pool, "explicit comma separated prime pool");
  fp->add_option("--pool-count", pool_count, "number of pool primes");
  fp->add_option("--pool-bits", pool_bits, "bits per pool prime");

  std::vector<std::string> grid;
  std::string seeds = "1", csv;
  CLI::App* bench = app.add_subcommand("bench", "seeded benchmark grid");
  shared(bench);
  bench->add_option("--grid", grid, "key=v1,v2 (keys N, n, m, planted); repeatable")->take_all();
  bench->add_option("--seeds", seeds, "seeds per grid cell");
  bench->add_option("--csv", csv, "CSV file to append to");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (gen->parsed()) return cmd_gen(f, domain, pattern_domain, noise, count, planted, planted_out, err);
    if (match->parsed()) return cmd_match(f, table_path, out, err);
    if (pre->parsed()) return cmd_preprocess(f, err);
    if (fp->parsed()) return cmd_findprime(f, indices, pool, pool_count, pool_bits, out);
    if (bench->parsed()) return cmd_bench(f, grid, seeds, csv, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kInternal ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitValidation;
}

}  // namespace sparseconv::cli
