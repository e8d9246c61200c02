#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "csplit/context.hpp"
#include "csplit/splitting.hpp"

namespace csplit {

using Json = nlohmann::json;

struct Bounds {
  std::size_t resolution_length = 4;
  std::size_t ss_s = 3;
  std::size_t ss_t = 2;
  std::size_t oracle_budget = 16;
  std::size_t max_dim = 6;
};

/// A validated problem description. Every name resolves and every matrix has been
/// shape-checked and verified (intertwiners, exact rows, algebra laws) on load.
class Manifest {
 public:
  /// Throws InvalidInput naming the offending entry.
  static Manifest parse(const Json& j);
  static Manifest load(const std::string& path);

  const Json& source() const { return source_; }
  const PrimeField& field() const { return algebra_->field(); }
  const AlgebraPtr& algebra() const { return algebra_; }
  const std::map<std::string, ModuleRep>& modules() const { return modules_; }
  const std::map<std::string, ModuleMorphism>& morphisms() const { return morphisms_; }
  const std::map<std::string, SplitDiagram>& diagrams() const { return diagrams_; }
  const Bounds& bounds() const { return bounds_; }
  std::uint64_t seed() const { return seed_; }
  bool arrow_context() const { return !restriction_; }
  /// The splitting context; an arrow context over the algebra unless a restriction
  /// context was specified.
  const SplittingContext& context() const { return *context_; }

  const ModuleRep& module(const std::string& name) const;
  const ModuleMorphism& morphism(const std::string& name) const;
  const SplitDiagram& diagram(const std::string& name) const;
  /// An object of the context: a morphism name (arrow context) or a module name.
  ModuleRep object(const std::string& name) const;

  /// FNV-1a digest of the canonical JSON.
  std::string digest() const;

 private:
  Json source_;
  AlgebraPtr algebra_;
  std::map<std::string, ModuleRep> modules_;
  std::map<std::string, ModuleMorphism> morphisms_;
  std::map<std::string, SplitDiagram> diagrams_;
  Bounds bounds_;
  std::uint64_t seed_ = 0;
  bool restriction_ = false;
  std::shared_ptr<const SplittingContext> context_;
};

Json matrix_to_json(const Matrix& m);
/// Row-major integer rows, reduced mod p (negative entries allowed).
Matrix matrix_from_json(const Json& j, const PrimeField& f, std::size_t rows, std::size_t cols, const std::string& where);
Json module_to_json(const ModuleRep& m);

/// Builds manifests for reproduction dumps: names modules and morphisms as they are added.
class ManifestWriter {
 public:
  /// Copies field, algebra, context and bounds from `base`.
  explicit ManifestWriter(const Json& base);

  std::string add_module(const ModuleRep& m);
  std::string add_morphism(const ModuleMorphism& m);
  std::string add_diagram(const SplitDiagram& d);
  void set_seed(std::uint64_t seed) { out_["seed"] = seed; }
  void set_reproduce(const std::string& command, const std::vector<std::string>& args);
  const Json& json() const { return out_; }

 private:
  Json out_;
  std::vector<std::pair<ModuleRep, std::string>> modules_;
  std::size_t morphisms_ = 0, diagrams_ = 0;
};

}  // namespace csplit
