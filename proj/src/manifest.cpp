#include "csplit/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "csplit/corpus.hpp"
#include "csplit/errors.hpp"

namespace csplit {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InvalidInput(where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t as_size(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) bad(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string as_name(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a name");
  return j.get<std::string>();
}

AlgebraPtr parse_algebra(const Json& j, std::uint32_t p, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  if (j.contains("preset")) {
    const std::string preset = as_name(j.at("preset"), where + ".preset");
    if (preset == "field") return make_truncated_poly(p, 1);
    const std::size_t n = as_size(need(j, "n", where), where + ".n");
    if (n == 0) bad(where + ".n", "must be positive");
    if (preset == "truncated_poly") return make_truncated_poly(p, n);
    if (preset == "cyclic_group") return make_cyclic_group_algebra(p, n);
    bad(where + ".preset", "unknown preset \"" + preset + "\" (field, truncated_poly, cyclic_group)");
  }
  const std::size_t d = as_size(need(j, "dim", where), where + ".dim");
  AlgebraData data{PrimeField(p), d, {}, {}, j.value("name", std::string("explicit")), std::nullopt};
  const Json& sc = need(j, "structure_constants", where);
  if (!sc.is_array() || sc.size() != d * d * d) bad(where + ".structure_constants", "expected dim^3 integers");
  for (const auto& v : sc) {
    if (!v.is_number_integer()) bad(where + ".structure_constants", "expected integers");
    data.constants.push_back(v.get<std::int64_t>());
  }
  const Json& unit = need(j, "unit", where);
  if (!unit.is_array() || unit.size() != d) bad(where + ".unit", "expected dim integers");
  for (const auto& v : unit) {
    if (!v.is_number_integer()) bad(where + ".unit", "expected integers");
    data.unit.push_back(v.get<std::int64_t>());
  }
  if (j.contains("nilpotent_ideal")) {
    const Json& cols = j.at("nilpotent_ideal");
    if (!cols.is_array()) bad(where + ".nilpotent_ideal", "expected a list of vectors");
    Matrix m(data.field, d, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!cols[c].is_array() || cols[c].size() != d) bad(where + ".nilpotent_ideal", "vectors need dim entries");
      for (std::size_t r = 0; r < d; ++r) m.set(r, c, cols[c][r].get<std::int64_t>());
    }
    data.nilpotent_ideal = m;
  }
  if (auto v = validate(data)) bad(where, "not a unital associative algebra: " + v->message);
  return std::make_shared<const Algebra>(std::move(data));
}

std::vector<Matrix> parse_actions(const Json& j, const AlgebraPtr& a, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != a->dim()) bad(where, "expected one action matrix per algebra basis element");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(matrix_from_json(j[i], a->field(), dim, dim, where + "[" + std::to_string(i) + "]"));
  return out;
}

ModuleRep parse_module(const Json& j, const AlgebraPtr& a, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  try {
    if (j.contains("free")) return free_module(a, as_size(j.at("free"), where + ".free"));
    if (j.contains("zero")) return ModuleRep::zero(a);
    if (j.contains("jordan")) {
      std::vector<std::size_t> blocks;
      for (const auto& b : j.at("jordan")) blocks.push_back(as_size(b, where + ".jordan"));
      return jordan_module(a, blocks);
    }
    const std::size_t dim = as_size(need(j, "dim", where), where + ".dim");
    return ModuleRep(a, dim, parse_actions(need(j, "action", where), a, dim, where + ".action"));
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    bad(where, msg);
  }
}

std::unique_ptr<SplittingContext> parse_context(const Json& j, const AlgebraPtr& a, bool& restriction,
                                                const std::string& where) {
  restriction = false;
  if (j.is_null()) return std::make_unique<ArrowContext>(a);
  const std::string kind = as_name(need(j, "kind", where), where + ".kind");
  if (kind == "arrow") return std::make_unique<ArrowContext>(a);
  if (kind != "restriction") bad(where + ".kind", "unknown context \"" + kind + "\" (arrow, restriction)");
  restriction = true;
  const Json& maps = need(j, "maps", where);
  if (!maps.is_array() || maps.empty()) bad(where + ".maps", "expected a nonempty list of ring maps");
  std::vector<RingMapSpec> specs;
  const std::uint32_t p = a->field().p();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string w = where + ".maps[" + std::to_string(i) + "]";
    const Json& m = maps[i];
    if (m.contains("preset")) {
      if (as_name(m.at("preset"), w + ".preset") != "cyclic_subgroup") bad(w + ".preset", "unknown ring map preset");
      const std::size_t n = as_size(need(m, "n", w), w + ".n");
      const std::size_t sub = as_size(need(m, "m", w), w + ".m");
      if (a->name() != make_cyclic_group_algebra(p, n)->name())
        bad(w, "cyclic_subgroup needs the cyclic_group algebra of order n");
      AlgebraEmbedding e = cyclic_subgroup_embedding(p, n, sub);
      specs.push_back({e.sub, e.inclusion, e.free_basis});
    } else {
      AlgebraPtr sub = parse_algebra(need(m, "sub", w), p, w + ".sub");
      Matrix inc = matrix_from_json(need(m, "inclusion", w), a->field(), a->dim(), sub->dim(), w + ".inclusion");
      const Json& fb = need(m, "free_basis", w);
      const std::size_t rank = fb.is_array() && !fb.empty() && fb[0].is_array() ? fb[0].size() : 0;
      specs.push_back({sub, inc, matrix_from_json(fb, a->field(), a->dim(), rank, w + ".free_basis")});
    }
  }
  try {
    return std::make_unique<RestrictionContext>(make_restriction_context(a, specs));
  } catch (const InvalidInput& e) {
    bad(where, e.what());
  }
}

}  // namespace

Matrix matrix_from_json(const Json& j, const PrimeField& f, std::size_t rows, std::size_t cols,
                        const std::string& where) {
  if (!j.is_array()) bad(where, "expected a matrix (list of rows)");
  if (rows == 0) {
    if (!j.empty()) bad(where, "expected 0 rows");
    return Matrix(f, 0, cols);
  }
  if (j.size() != rows) bad(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      bad(where, "row " + std::to_string(r) + " should have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number_integer()) bad(where, "entries must be integers");
      m.set(r, c, j[r][c].get<std::int64_t>());
    }
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_rows()) rows.push_back(r);
  return rows;
}

Json module_to_json(const ModuleRep& m) {
  Json acts = Json::array();
  for (const auto& a : m.actions()) acts.push_back(matrix_to_json(a));
  return {{"dim", m.dim()}, {"action", acts}};
}

Manifest Manifest::parse(const Json& j) {
  if (!j.is_object()) bad("manifest", "expected a JSON object");
  Manifest m;
  m.source_ = j;
  const Json& fj = need(j, "field", "manifest");
  if (!fj.is_number_integer() || fj.get<std::int64_t>() < 2 || fj.get<std::int64_t>() > 2147483647 ||
      !is_prime(fj.get<std::uint64_t>()))
    bad("field", "must be a prime between 2 and 2^31-1");
  const auto p = fj.get<std::uint32_t>();
  m.algebra_ = parse_algebra(need(j, "algebra", "manifest"), p, "algebra");

  if (j.contains("modules")) {
    if (!j.at("modules").is_object()) bad("modules", "expected an object of named modules");
    for (const auto& [name, mj] : j.at("modules").items())
      m.modules_.emplace(name, parse_module(mj, m.algebra_, "modules." + name));
  }
  if (j.contains("morphisms")) {
    if (!j.at("morphisms").is_object()) bad("morphisms", "expected an object of named morphisms");
    for (const auto& [name, mj] : j.at("morphisms").items()) {
      const std::string w = "morphisms." + name;
      auto end = [&](const char* key) -> const ModuleRep& {
        const std::string name = as_name(need(mj, key, w), w + "." + key);
        if (!m.modules_.count(name)) bad(w + "." + key, "unknown module \"" + name + "\"");
        return m.modules_.at(name);
      };
      const ModuleRep& src = end("source");
      const ModuleRep& dst = end("target");
      Matrix mat = matrix_from_json(need(mj, "matrix", w), m.field(), dst.dim(), src.dim(), w + ".matrix");
      try {
        m.morphisms_.emplace(name, ModuleMorphism(src, dst, mat));
      } catch (const InvalidInput& e) {
        bad(w, e.what());
      }
    }
  }
  if (j.contains("diagrams")) {
    if (!j.at("diagrams").is_object()) bad("diagrams", "expected an object of named diagrams");
    for (const auto& [name, dj] : j.at("diagrams").items()) {
      const std::string w = "diagrams." + name;
      auto ref = [&](const char* key) -> const ModuleMorphism& {
        const std::string name = as_name(need(dj, key, w), w + "." + key);
        if (!m.morphisms_.count(name)) bad(w + "." + key, "unknown morphism \"" + name + "\"");
        return m.morphisms_.at(name);
      };
      auto opt = [&](const char* key) -> std::optional<ModuleMorphism> {
        if (!dj.contains(key)) return std::nullopt;
        return ref(key);
      };
      SplitDiagram d{ref("f"),       ref("g"),        ref("h"),         ref("i_top"),     ref("p_top"),
                     ref("i_bottom"), ref("p_bottom"), opt("r_top"),     opt("r_bottom"), opt("s_top"),
                     opt("s_bottom")};
      if (auto why = diagram_defect(d)) bad(w, *why);
      m.diagrams_.emplace(name, std::move(d));
    }
  }
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (b.contains("resolution_length"))
      m.bounds_.resolution_length = as_size(b.at("resolution_length"), "bounds.resolution_length");
    if (b.contains("oracle_budget")) m.bounds_.oracle_budget = as_size(b.at("oracle_budget"), "bounds.oracle_budget");
    if (b.contains("max_dim")) m.bounds_.max_dim = as_size(b.at("max_dim"), "bounds.max_dim");
    if (b.contains("ss")) {
      const Json& ss = b.at("ss");
      if (!ss.is_array() || ss.size() != 2) bad("bounds.ss", "expected [s_max, t_max]");
      m.bounds_.ss_s = as_size(ss[0], "bounds.ss");
      m.bounds_.ss_t = as_size(ss[1], "bounds.ss");
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) bad("seed", "expected an integer");
    m.seed_ = j.at("seed").get<std::uint64_t>();
  }
  m.context_ = parse_context(j.contains("context") ? j.at("context") : Json(), m.algebra_, m.restriction_, "context");
  return m;
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open manifest " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("manifest " + path + " is not valid JSON: " + e.what());
  }
  return parse(j);
}

const ModuleRep& Manifest::module(const std::string& name) const {
  auto it = modules_.find(name);
  if (it == modules_.end()) throw InvalidInput("unknown module \"" + name + "\"");
  return it->second;
}

const ModuleMorphism& Manifest::morphism(const std::string& name) const {
  auto it = morphisms_.find(name);
  if (it == morphisms_.end()) throw InvalidInput("unknown morphism \"" + name + "\"");
  return it->second;
}

const SplitDiagram& Manifest::diagram(const std::string& name) const {
  auto it = diagrams_.find(name);
  if (it == diagrams_.end()) throw InvalidInput("unknown diagram \"" + name + "\"");
  return it->second;
}

ModuleRep Manifest::object(const std::string& name) const {
  if (restriction_) return module(name);
  auto it = morphisms_.find(name);
  if (it == morphisms_.end())
    throw InvalidInput("\"" + name + "\" is not a morphism; objects of the arrow context are morphisms");
  return static_cast<const ArrowContext&>(*context_).object(it->second);
}

std::string Manifest::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : source_.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ManifestWriter::ManifestWriter(const Json& base) {
  for (const char* key : {"field", "algebra", "context", "bounds"})
    if (base.contains(key)) out_[key] = base.at(key);
  out_["modules"] = Json::object();
  out_["morphisms"] = Json::object();
}

std::string ManifestWriter::add_module(const ModuleRep& m) {
  for (const auto& [mod, name] : modules_)
    if (mod == m) return name;
  std::string name = "M" + std::to_string(modules_.size());
  modules_.emplace_back(m, name);
  out_["modules"][name] = module_to_json(m);
  return name;
}

std::string ManifestWriter::add_morphism(const ModuleMorphism& m) {
  std::string name = "f" + std::to_string(morphisms_++);
  out_["morphisms"][name] = {
      {"source", add_module(m.source())}, {"target", add_module(m.target())}, {"matrix", matrix_to_json(m.mat())}};
  return name;
}

std::string ManifestWriter::add_diagram(const SplitDiagram& d) {
  Json dj = {{"f", add_morphism(d.f)},         {"g", add_morphism(d.g)},         {"h", add_morphism(d.h)},
             {"i_top", add_morphism(d.i_top)}, {"p_top", add_morphism(d.p_top)}, {"i_bottom", add_morphism(d.i_bot)},
             {"p_bottom", add_morphism(d.p_bot)}};
  if (d.r_top) dj["r_top"] = add_morphism(*d.r_top);
  if (d.r_bot) dj["r_bottom"] = add_morphism(*d.r_bot);
  if (d.s_top) dj["s_top"] = add_morphism(*d.s_top);
  if (d.s_bot) dj["s_bottom"] = add_morphism(*d.s_bot);
  std::string name = "D" + std::to_string(diagrams_++);
  out_["diagrams"][name] = dj;
  return name;
}

void ManifestWriter::set_reproduce(const std::string& command, const std::vector<std::string>& args) {
  out_["reproduce"] = {{"command", command}, {"args", args}};
}

}  // namespace csplit
