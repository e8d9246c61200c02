#include "csplit/sweep.hpp"

#include <filesystem>
#include <fstream>

#include "csplit/commands.hpp"
#include "csplit/corpus.hpp"
#include "csplit/splitting.hpp"

namespace csplit {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Case {
  Json manifest;
  std::string command;
  std::vector<std::string> args;
};

using Builder = Case (*)(const Manifest&, const SweepOptions&, CorpusGenerator&, std::size_t);

Json case_base(const Manifest& m, const SweepOptions& o) {
  Json base = m.source();
  base["bounds"] = {{"resolution_length", m.bounds().resolution_length},
                    {"ss", {o.ss_s, o.ss_t}},
                    {"oracle_budget", o.oracle_budget},
                    {"max_dim", o.max_dim}};
  return base;
}

// The name of a context object in the written manifest.
std::string add_object(const Manifest& m, ManifestWriter& w, CorpusGenerator& gen, std::size_t max_dim) {
  if (m.arrow_context()) return w.add_morphism(gen.next_morphism(max_dim));
  return w.add_module(gen.next_module_in(0, max_dim));
}

Case oracle_case(const Manifest& m, const SweepOptions& o, CorpusGenerator& gen, std::size_t) {
  ManifestWriter w(case_base(m, o));
  std::string d = w.add_diagram(random_split_diagram(gen, o.max_dim));
  return {w.json(), "oracle", {d}};
}

Case sha_case(const Manifest& m, const SweepOptions& o, CorpusGenerator& gen, std::size_t) {
  ManifestWriter w(case_base(m, o));
  std::string y = add_object(m, w, gen, o.max_dim);
  std::string x = add_object(m, w, gen, o.max_dim);
  return {w.json(), "sha", {y, x, "1"}};
}

Case duality_case(const Manifest& m, const SweepOptions& o, CorpusGenerator& gen, std::size_t id) {
  ManifestWriter w(case_base(m, o));
  std::string f = w.add_morphism(gen.next_morphism(o.max_dim));
  std::string g = w.add_morphism(gen.next_morphism(o.max_dim));
  return {w.json(), "duality", {f, g, std::to_string(1 + id % 2)}};
}

Case spectral_case(const Manifest& m, const SweepOptions& o, CorpusGenerator& gen, std::size_t) {
  ManifestWriter w(case_base(m, o));
  // Smaller objects: every column of the double complex is resolved separately.
  std::size_t budget = std::max<std::size_t>(2, o.max_dim * 2 / 3);
  std::string y = w.add_morphism(gen.next_morphism(budget));
  std::string x = w.add_morphism(gen.next_morphism(budget));
  return {w.json(), "ss", {y, x}};
}

struct Suite {
  const char* name;
  Builder build;
  bool arrow_only;
  bool reduced;
};

const Suite kSuites[] = {
    {"decider_vs_oracle", oracle_case, false, false},
    {"sha_three_ways", sha_case, false, false},
    {"duality", duality_case, true, false},
    {"spectral", spectral_case, true, true},
};

}  // namespace

std::uint64_t case_seed(std::uint64_t seed, std::size_t suite, std::size_t id) {
  return splitmix(splitmix(seed ^ (0x100000001B3ULL * (suite + 1))) + id);
}

Json SweepResult::to_json() const {
  Json s = Json::array();
  for (const auto& t : suites)
    s.push_back({{"suite", t.name}, {"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}});
  Json f = Json::array();
  for (const auto& x : failures) {
    Json e = {{"suite", x.suite}, {"case", x.id}, {"case_seed", x.seed}, {"detail", x.detail}};
    if (!x.dump_path.empty()) e["dump"] = x.dump_path;
    else e["manifest"] = x.manifest;
    f.push_back(e);
  }
  return {{"suites", s}, {"failures", f}, {"passed", passed()}};
}

SweepResult corpus_sweep(const Manifest& m, const SweepOptions& opts) {
  SweepResult out;
  if (!opts.dump_dir.empty()) std::filesystem::create_directories(opts.dump_dir);
  for (std::size_t si = 0; si < std::size(kSuites); ++si) {
    const Suite& suite = kSuites[si];
    if (suite.arrow_only && !m.arrow_context()) continue;
    SuiteTally tally;
    tally.name = suite.name;
    const std::size_t n = suite.reduced ? opts.cases / 5 + 1 : opts.cases;
    for (std::size_t id = 0; id < n; ++id) {
      const std::uint64_t seed = case_seed(opts.seed, si, id);
      CorpusGenerator gen(m.algebra(), opts.max_dim, seed);
      Case c = suite.build(m, opts, gen, id);
      std::string detail;
      try {
        Manifest cm = Manifest::parse(c.manifest);
        Report r = run_command(cm, c.command, c.args, RunOptions{});
        if (r.status == Report::Status::kFalsified) {
          detail = r.message;
        } else if (c.command == "oracle" && r.result.at("verdict") == "refused") {
          ++tally.skipped;
          continue;
        }
      } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
      }
      if (detail.empty()) {
        ++tally.passed;
        continue;
      }
      ++tally.failed;
      SweepFailure fail{suite.name, id, seed, detail, c.manifest, ""};
      fail.manifest["seed"] = seed;
      fail.manifest["reproduce"] = {{"command", c.command}, {"args", c.args}};
      if (!opts.dump_dir.empty()) {
        auto path = std::filesystem::path(opts.dump_dir) / (std::string(suite.name) + "_" + std::to_string(id) + ".json");
        std::ofstream(path) << fail.manifest.dump(2) << "\n";
        fail.dump_path = path.string();
      }
      out.failures.push_back(std::move(fail));
    }
    out.suites.push_back(tally);
  }
  return out;
}

}  // namespace csplit
