#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csplit/manifest.hpp"

namespace csplit {

/// Flag overrides; unset fields fall back to the manifest.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_dim;
  std::optional<std::size_t> oracle_budget;
  std::optional<std::size_t> resolution_length;
  std::optional<std::pair<std::size_t, std::size_t>> ss_bounds;
  std::size_t cases = 40;  // corpus cases per suite
  std::string dump_dir;    // where failing corpus cases are written; empty disables
};

struct Report {
  enum class Status { kOk, kFalsified };

  std::string command;
  std::vector<std::string> args;
  std::string digest;
  Json result;
  Status status = Status::kOk;
  std::string message;
  double seconds = 0;  // shown in the text rendering only, so JSON stays reproducible

  Json to_json() const;
  std::string to_text() const;
  /// 0 for completed computations, 3 for falsified instances or broken invariants.
  int exit_code() const { return status == Status::kOk ? 0 : 3; }
};

/// Runs one of: ext M N n | sha Y X n | relext Y X n | split D | duality f g t | ss Y X |
/// oracle D | corpus. Throws InvalidInput for bad commands or arguments.
Report run_command(const Manifest& m, const std::string& command, const std::vector<std::string>& args,
                   const RunOptions& opts = {});

/// Exit status for an exception escaping run_command: 2 for invalid input, 3 otherwise.
int exit_code_for(const std::exception& e);

}  // namespace csplit
