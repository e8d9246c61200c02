#include <iostream>

#include <CLI11.hpp>

#include "csplit/commands.hpp"
#include "csplit/errors.hpp"

namespace {

std::pair<std::size_t, std::size_t> parse_bounds(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw csplit::InvalidInput("--ss-bounds expects s,t");
  try {
    std::size_t a = 0, b = 0;
    std::size_t sa = std::stoul(s.substr(0, comma), &a), sb = std::stoul(s.substr(comma + 1), &b);
    if (a != comma || b != s.size() - comma - 1) throw std::invalid_argument(s);
    return {sa, sb};
  } catch (const std::logic_error&) {
    throw csplit::InvalidInput("--ss-bounds expects s,t, got \"" + s + "\"");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact compatible-splitting computations over finite-field algebras"};
  std::string manifest_path, command, format = "json", ss_bounds;
  std::vector<std::string> args;
  csplit::RunOptions opts;
  std::uint64_t seed = 0;
  std::size_t max_dim = 0, budget = 0, length = 0;

  app.add_option("manifest", manifest_path, "JSON manifest")->required();
  app.add_option("command", command, "ext | sha | relext | split | duality | ss | oracle | corpus")->required();
  app.add_option("args", args, "command arguments (object names, degrees)");
  auto* seed_opt = app.add_option("--seed", seed, "corpus seed (overrides the manifest)");
  auto* dim_opt = app.add_option("--max-dim", max_dim, "largest generated module dimension");
  auto* budget_opt = app.add_option("--oracle-budget", budget, "largest retraction-space dimension the oracle enumerates");
  app.add_option("--ss-bounds", ss_bounds, "spectral sequence bounds s,t");
  auto* len_opt = app.add_option("--resolution-length", length, "length of free resolutions");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cases", opts.cases, "cases per corpus suite");
  app.add_option("--dump-dir", opts.dump_dir, "directory for failing corpus manifests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*seed_opt) opts.seed = seed;
    if (*dim_opt) opts.max_dim = max_dim;
    if (*budget_opt) opts.oracle_budget = budget;
    if (*len_opt) opts.resolution_length = length;
    if (!ss_bounds.empty()) opts.ss_bounds = parse_bounds(ss_bounds);
    csplit::Manifest m = csplit::Manifest::load(manifest_path);
    csplit::Report r = csplit::run_command(m, command, args, opts);
    if (format == "json") std::cout << r.to_json().dump(2) << "\n";
    else std::cout << r.to_text();
    return r.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "csplit: " << e.what() << "\n";
    return csplit::exit_code_for(e);
  }
}
