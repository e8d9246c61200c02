#pragma once

#include <string>
#include <vector>

#include "csplit/manifest.hpp"

namespace csplit {

struct SweepOptions {
  std::uint64_t seed = 0;
  std::size_t max_dim = 6;
  std::size_t cases = 40;  // per suite; the spectral suite runs a fifth of this
  std::size_t oracle_budget = 16;
  std::size_t ss_s = 3, ss_t = 2;
  std::string dump_dir;
};

struct SweepFailure {
  std::string suite;
  std::size_t id = 0;
  std::uint64_t seed = 0;
  std::string detail;
  Json manifest;  // standalone reproduction, with a "reproduce" command
  std::string dump_path;
};

struct SuiteTally {
  std::string name;
  std::size_t passed = 0, failed = 0, skipped = 0;
};

struct SweepResult {
  std::vector<SuiteTally> suites;
  std::vector<SweepFailure> failures;

  bool passed() const { return failures.empty(); }
  Json to_json() const;
};

/// Cross-method agreement suites over generated instances of the manifest's algebra:
/// decider vs oracle, Sha^1 three ways, duality exactness and spectral collapse (the
/// last two in the arrow context only). Cases are seeded individually from `seed`.
SweepResult corpus_sweep(const Manifest& m, const SweepOptions& opts);

/// Seed of case `id` of suite `suite`.
std::uint64_t case_seed(std::uint64_t seed, std::size_t suite, std::size_t id);

}  // namespace csplit
