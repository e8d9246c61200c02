#include "csplit/commands.hpp"

#include <chrono>
#include <sstream>

#include "csplit/errors.hpp"
#include "csplit/spectral.hpp"
#include "csplit/sweep.hpp"

namespace csplit {

namespace {

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw InvalidInput(std::string("expected a nonnegative integer for ") + what + ", got \"" + s + "\"");
  return v;
}

void need_args(const std::vector<std::string>& args, std::size_t n, const char* usage) {
  if (args.size() != n) throw InvalidInput(std::string("usage: ") + usage);
}

std::size_t resolution_length(const Manifest& m, const RunOptions& o) {
  return o.resolution_length.value_or(m.bounds().resolution_length);
}

void check_degree(std::size_t n, std::size_t extra, std::size_t len) {
  if (n + extra > len)
    throw InvalidInput("degree " + std::to_string(n) + " needs resolution length >= " + std::to_string(n + extra) +
                       " (--resolution-length is " + std::to_string(len) + ")");
}

Json subspace_json(const Subspace& s) { return matrix_to_json(s.basis); }

void falsify(Report& r, const std::string& why) {
  r.status = Report::Status::kFalsified;
  if (!r.message.empty()) r.message += "; ";
  r.message += why;
}

Json ranks_json(const FreeResolution& res) { return res.ranks(); }

// ---- commands ----

void cmd_ext(const Manifest& m, const std::vector<std::string>& args, const RunOptions& o, Report& r) {
  need_args(args, 3, "ext M N n");
  const std::size_t n = parse_count(args[2], "n");
  check_degree(n, 1, resolution_length(m, o));
  ModuleRep a = ModuleRep::zero(m.algebra()), b = a;
  std::string over = "algebra";
  if (m.modules().count(args[0]) && m.modules().count(args[1])) {
    a = m.module(args[0]);
    b = m.module(args[1]);
  } else if (m.morphisms().count(args[0]) && m.morphisms().count(args[1])) {
    ArrowCategory cat(m.algebra());
    a = cat.to_module(m.morphism(args[0]));
    b = cat.to_module(m.morphism(args[1]));
    over = "triangular";
  } else {
    throw InvalidInput("ext needs two module names or two morphism names");
  }
  ExtGroup e(resolve_shared(a, n + 1), b, n);
  r.result = {{"over", over},
              {"degree", n},
              {"dim", e.dim()},
              {"resolution_ranks", ranks_json(*e.resolution())},
              {"class_representatives", matrix_to_json(e.reps())}};
}

void cmd_sha(const Manifest& m, const std::vector<std::string>& args, const RunOptions& o, Report& r) {
  need_args(args, 3, "sha Y X n");
  const std::size_t n = parse_count(args[2], "n");
  check_degree(n, 1, resolution_length(m, o));
  ModuleRep y = m.object(args[0]), x = m.object(args[1]);
  ShaGroup sha = sha_n(m.context(), y, x, n);
  r.result = {{"context", m.context().kind()},
              {"degree", n},
              {"dim", sha.dim()},
              {"ext_dim", sha.ext->dim()},
              {"basis", subspace_json(sha.kernel)}};
  if (n == 1) {
    // Three descriptions of Sha^1 must agree.
    std::size_t rel = relative_ext(m.context(), y, x, 1).dim();
    HurewiczReport hr = hurewicz_check(m.context(), y, x);
    r.result["relative_ext_dim"] = rel;
    r.result["hurewicz"] = {{"cokernel_dim", hr.cokernel_dim}, {"holds", hr.holds}, {"detail", hr.detail}};
    std::size_t third = hr.cokernel_dim;
    if (m.arrow_context()) {
      third = sha1_cokernel(m.morphism(args[0]), m.morphism(args[1])).dim();
      r.result["sha1_cokernel_dim"] = third;
    }
    if (!hr.holds) falsify(r, "Hurewicz comparison failed: " + hr.detail);
    if (rel != sha.dim() || third != sha.dim())
      falsify(r, "Sha^1 descriptions disagree (kernel " + std::to_string(sha.dim()) + ", relative Ext " +
                     std::to_string(rel) + ", cokernel " + std::to_string(third) + ")");
  }
}

void cmd_relext(const Manifest& m, const std::vector<std::string>& args, const RunOptions& o, Report& r) {
  need_args(args, 3, "relext Y X n");
  const std::size_t n = parse_count(args[2], "n");
  check_degree(n, 1, resolution_length(m, o));
  ModuleRep y = m.object(args[0]), x = m.object(args[1]);
  BarResolution bar = bar_resolution(m.context(), y, n + 2);
  if (auto why = bar.check()) throw InvariantViolation("bar resolution: " + *why);
  RelativeExt rel = relative_ext(bar, x, n);
  r.result = {{"context", m.context().kind()}, {"degree", n}, {"dim", rel.dim()}, {"hom_dim", rel.hom_dim}};
  if (m.arrow_context() && n >= 2 && rel.dim() != 0)
    falsify(r, "relative Ext in degree " + std::to_string(n) + " is nonzero in the arrow context");
}

Json certificate_json(const SplittingCertificate& c) {
  return {{"r_top", matrix_to_json(c.r_top.mat())},
          {"r_bottom", matrix_to_json(c.r_bot.mat())},
          {"s_top", matrix_to_json(c.s_top.mat())},
          {"s_bottom", matrix_to_json(c.s_bot.mat())}};
}

void cmd_split(const Manifest& m, const std::vector<std::string>& args, const RunOptions&, Report& r) {
  need_args(args, 1, "split D");
  const SplitDiagram& d = m.diagram(args[0]);
  SplitDecision dec = decide_compatible_split(d);
  Json ob = {{"u", matrix_to_json(dec.obstruction.u.mat())},
             {"coords", matrix_to_json(dec.obstruction.coords.transpose())},
             {"vanishes", dec.obstruction.vanishes}};
  r.result = {{"verdict", dec.splits() ? "compatible_splitting" : "obstructed"},
              {"sha1_dim", dec.sha_dim},
              {"obstruction", ob}};
  if (dec.certificate) r.result["certificate"] = certificate_json(*dec.certificate);
  // Independent dimension check through Ext over the triangular algebra.
  ArrowContext ac(m.algebra());
  std::size_t ext_dim = sha_n(ac, ac.object(d.h), ac.object(d.f), 1).dim();
  r.result["sha1_dim_from_ext"] = ext_dim;
  if (ext_dim != dec.sha_dim) falsify(r, "cokernel formula and Ext kernel give different Sha^1 dimensions");
}

void cmd_oracle(const Manifest& m, const std::vector<std::string>& args, const RunOptions& o, Report& r) {
  need_args(args, 1, "oracle D");
  const SplitDiagram& d = m.diagram(args[0]);
  OracleResult res = brute_force_oracle(d, o.oracle_budget.value_or(m.bounds().oracle_budget));
  static const char* names[] = {"exists", "none", "refused"};
  r.result = {{"verdict", names[static_cast<int>(res.verdict)]},
              {"space_dim", res.space_dim},
              {"pairs_tested", res.pairs_tested},
              {"detail", res.detail}};
  if (res.witness)
    r.result["witness"] = {{"r_top", matrix_to_json(res.witness->first.mat())},
                           {"r_bottom", matrix_to_json(res.witness->second.mat())}};
  if (res.verdict != OracleResult::Verdict::kRefused) {
    bool decided = decide_compatible_split(d).splits();
    r.result["decider_agrees"] = decided == (res.verdict == OracleResult::Verdict::kExists);
    if (!r.result["decider_agrees"].get<bool>()) falsify(r, "decider and brute-force oracle disagree");
  }
}

void cmd_duality(const Manifest& m, const std::vector<std::string>& args, const RunOptions& o, Report& r) {
  need_args(args, 3, "duality f g t");
  const std::size_t t = parse_count(args[2], "t");
  if (t == 0) throw InvalidInput("duality needs t >= 1");
  check_degree(t + 1, 1, resolution_length(m, o));
  const ModuleMorphism& f = m.morphism(args[0]);
  const ModuleMorphism& g = m.morphism(args[1]);
  ArrowContext ac(m.algebra());
  DualityReport rep = duality_sequence(ac, f, g, t);
  std::size_t independent = sha_n(ac, ac.object(f), ac.object(g), t + 1).dim();
  r.result = {{"t", t},
              {"dims", rep.dims},
              {"exact", rep.exact},
              {"alternating_sum_zero", rep.alternating_sum_zero},
              {"sha_next_from_sequence", rep.sha_next_from_sequence},
              {"sha_next_independent", independent}};
  if (!rep.holds()) falsify(r, "duality sequence: " + rep.describe());
  if (independent != rep.sha_next_from_sequence || independent != rep.dims[5])
    falsify(r, "Sha^{t+1} from the sequence differs from the independent computation");
}

void cmd_ss(const Manifest& m, const std::vector<std::string>& args, const RunOptions& o, Report& r) {
  need_args(args, 2, "ss Y X");
  auto [sm, tm] = o.ss_bounds.value_or(std::make_pair(m.bounds().ss_s, m.bounds().ss_t));
  ModuleRep y = m.object(args[0]), x = m.object(args[1]);
  SplittingSpectralSequence ss(m.context(), y, x, sm, tm);
  auto table = [&](const SSPage& p) {
    Json rows = Json::array();
    for (std::size_t s = 0; s <= sm; ++s) {
      Json row = Json::array();
      for (std::size_t t = 0; t <= tm; ++t) {
        auto d = p.dim(s, t);
        row.push_back(d ? Json(*d) : Json(nullptr));
      }
      rows.push_back(row);
    }
    return rows;
  };
  auto ranks = [&](const SSPage& p) {
    Json out = Json::array();
    for (std::size_t s = 0; s <= sm; ++s)
      for (std::size_t t = 0; t <= tm; ++t)
        if (p.d[s][t]) out.push_back({{"s", s}, {"t", t}, {"rank", rank(*p.d[s][t])}});
    return out;
  };
  const bool hereditary = m.arrow_context();
  E2Report e2 = e2_page(ss);
  CollapseReport col = verify_collapse(ss);
  static const char* states[] = {"zero", "unverifiable", "nonzero"};
  Json interior = Json::array();
  for (const auto& v : col.interior)
    interior.push_back({{"s", v.s}, {"t", v.t}, {"e2", v.e2_dim}, {"e3", v.e3_dim}, {"state", states[static_cast<int>(v.state)]}});
  Json boundary = Json::array();
  for (const auto& [s, t] : col.boundary) boundary.push_back({s, t});
  r.result = {{"context", m.context().kind()},
              {"bounds", {sm, tm}},
              {"e1", table(ss.e1())},
              {"e2", table(ss.e2())},
              {"d1_ranks", ranks(ss.e1())},
              {"d2_ranks", ranks(ss.e2())},
              {"rows_exact", ss.row_cohomology_vanishes()},
              {"sha_match", e2.sha_match},
              {"e2_checks", {{"bottom_zero", e2.bottom_zero}, {"column1_zero", e2.column1_zero},
                             {"high_columns_zero", e2.high_columns_zero}}},
              {"collapse", {{"interior", interior}, {"boundary", boundary}, {"holds", col.holds}}}};
  if (!ss.row_cohomology_vanishes()) falsify(r, "double complex rows are not exact");
  if (!ss.d1_squares_to_zero()) falsify(r, "d_1 o d_1 != 0");
  if (!e2.holds(hereditary)) falsify(r, "E_2 identification failed " + e2.detail);
  if (!col.holds) falsify(r, "nonzero E_infinity at an interior position");
  if (hereditary) {
    Matrix d = ss.d2(0, 1);
    bool inv = d.rows() == d.cols() && rank(d) == d.rows();
    r.result["d2_corner_invertible"] = inv;
    if (!inv) falsify(r, "d_2 at (0,1) is not invertible");
  }
}

void cmd_corpus(const Manifest& m, const std::vector<std::string>& args, const RunOptions& o, Report& r) {
  need_args(args, 0, "corpus");
  SweepOptions so;
  so.seed = o.seed.value_or(m.seed());
  so.max_dim = o.max_dim.value_or(m.bounds().max_dim);
  so.cases = o.cases;
  so.oracle_budget = o.oracle_budget.value_or(m.bounds().oracle_budget);
  auto [sm, tm] = o.ss_bounds.value_or(std::make_pair(m.bounds().ss_s, m.bounds().ss_t));
  so.ss_s = sm;
  so.ss_t = tm;
  so.dump_dir = o.dump_dir;
  SweepResult res = corpus_sweep(m, so);
  r.result = res.to_json();
  r.result["seed"] = so.seed;
  if (!res.passed()) falsify(r, std::to_string(res.failures.size()) + " corpus case(s) failed");
}

// Appends "key: value" lines for a JSON payload.
void render(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  if (j.is_array() && !j.empty() && j[0].is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << "  " << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

Json Report::to_json() const {
  Json j = {{"command", command},
            {"args", args},
            {"manifest_digest", digest},
            {"status", status == Status::kOk ? "ok" : "falsified"},
            {"result", result}};
  if (!message.empty()) j["message"] = message;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << command;
  for (const auto& a : args) os << " " << a;
  os << "  [manifest " << digest << "]\n";
  os << "status: " << (status == Status::kOk ? "ok" : "FALSIFIED") << "\n";
  if (!message.empty()) os << "message: " << message << "\n";
  render(result, "", os);
  os << "time: " << seconds << " s\n";
  return os.str();
}

Report run_command(const Manifest& m, const std::string& command, const std::vector<std::string>& args,
                   const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = command;
  r.args = args;
  r.digest = m.digest();
  if (command == "ext") cmd_ext(m, args, opts, r);
  else if (command == "sha") cmd_sha(m, args, opts, r);
  else if (command == "relext") cmd_relext(m, args, opts, r);
  else if (command == "split") cmd_split(m, args, opts, r);
  else if (command == "oracle") cmd_oracle(m, args, opts, r);
  else if (command == "duality") cmd_duality(m, args, opts, r);
  else if (command == "ss") cmd_ss(m, args, opts, r);
  else if (command == "corpus") cmd_corpus(m, args, opts, r);
  else throw InvalidInput("unknown command \"" + command + "\" (ext, sha, relext, split, duality, ss, oracle, corpus)");
  if (r.status == Report::Status::kFalsified && command != "corpus") {
    r.result["reproduction"] = {{"manifest", m.source()}, {"command", command}, {"args", args}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int exit_code_for(const std::exception& e) { return dynamic_cast<const InvalidInput*>(&e) ? 2 : 3; }

}  // namespace csplit
