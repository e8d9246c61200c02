#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csplit/algebra.hpp"
#include "csplit/linalg.hpp"

namespace csplit {

/// A finite-dimensional left module: one action matrix per algebra basis element.
/// Cheap to copy (shared immutable payload).
class ModuleRep {
 public:
  /// Validates the representation laws; throws InvalidInput.
  ModuleRep(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action);

  /// Skips validation. For constructions that are modules by construction
  /// (free modules, kernels, cokernels, sums).
  static ModuleRep trusted(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action);
  static ModuleRep zero(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return impl_->algebra; }
  const PrimeField& field() const { return impl_->algebra->field(); }
  std::size_t dim() const { return impl_->dim; }
  const Matrix& action(std::size_t i) const { return impl_->action[i]; }
  const std::vector<Matrix>& actions() const { return impl_->action; }
  /// Action of an algebra element given in coordinates (algebra.dim x 1).
  Matrix act(const Matrix& element) const;

  /// Empty if the representation laws hold, otherwise a description.
  std::optional<std::string> check() const;

  friend bool operator==(const ModuleRep& a, const ModuleRep& b);

 private:
  struct Impl {
    AlgebraPtr algebra;
    std::size_t dim;
    std::vector<Matrix> action;
  };
  explicit ModuleRep(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// An intertwiner source -> target; `mat` is target.dim x source.dim.
class ModuleMorphism {
 public:
  /// Validates mat * act_source(e_i) = act_target(e_i) * mat; throws InvalidInput.
  ModuleMorphism(ModuleRep source, ModuleRep target, Matrix mat);
  static ModuleMorphism trusted(ModuleRep source, ModuleRep target, Matrix mat);
  static ModuleMorphism identity(const ModuleRep& m);
  static ModuleMorphism zero(const ModuleRep& source, const ModuleRep& target);

  const ModuleRep& source() const { return source_; }
  const ModuleRep& target() const { return target_; }
  const Matrix& mat() const { return mat_; }

  bool is_intertwiner() const;

 private:
  struct TrustedTag {};
  ModuleMorphism(ModuleRep source, ModuleRep target, Matrix mat, TrustedTag);
  ModuleRep source_;
  ModuleRep target_;
  Matrix mat_;
};

/// g o f.
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
ModuleMorphism operator+(const ModuleMorphism& a, const ModuleMorphism& b);
ModuleMorphism operator-(const ModuleMorphism& a, const ModuleMorphism& b);

void require_same_algebra(const ModuleRep& a, const ModuleRep& b, const char* where);

/// Intertwiner space Hom_A(M, N), with flattened coordinates.
class HomSpace {
 public:
  HomSpace(ModuleRep source, ModuleRep target);

  const ModuleRep& source() const { return source_; }
  const ModuleRep& target() const { return target_; }
  std::size_t dim() const { return flat_.cols(); }
  /// Columns are row-major flattenings of the basis morphisms.
  const Matrix& flat_basis() const { return flat_; }
  ModuleMorphism element(std::size_t i) const;
  std::vector<ModuleMorphism> basis() const;
  /// Morphism with coordinates `coords` (dim x 1).
  ModuleMorphism combine(const Matrix& coords) const;
  /// Coordinates of an intertwiner given as a matrix (must lie in the space).
  Matrix coords(const Matrix& mat) const;

 private:
  ModuleRep source_;
  ModuleRep target_;
  Matrix flat_;
  Matrix left_inv_;
};

std::vector<ModuleMorphism> hom_basis(const ModuleRep& m, const ModuleRep& n);

struct KernelResult {
  ModuleRep module;
  ModuleMorphism inclusion;
};
struct CokernelResult {
  ModuleRep module;
  ModuleMorphism projection;
};
KernelResult kernel_module(const ModuleMorphism& f);
CokernelResult cokernel_module(const ModuleMorphism& f);
/// Image of f as a submodule of the target, with the inclusion.
KernelResult image_module(const ModuleMorphism& f);

/// Submodule spanned by the columns of `basis` (must be invariant), with its inclusion.
KernelResult submodule(const ModuleRep& m, const Matrix& basis);

struct DirectSum {
  ModuleRep sum;
  ModuleMorphism inject_first, inject_second, project_first, project_second;
};
DirectSum direct_sum(const ModuleRep& m, const ModuleRep& n);
ModuleRep direct_sum_of(const std::vector<ModuleRep>& parts);

/// A retraction r with r o f = id, or nullopt when none exists.
std::optional<ModuleMorphism> is_split_mono(const ModuleMorphism& f);
/// A section s with f o s = id, or nullopt when none exists.
std::optional<ModuleMorphism> is_split_epi(const ModuleMorphism& f);

bool is_mono(const ModuleMorphism& f);
bool is_epi(const ModuleMorphism& f);
bool is_iso(const ModuleMorphism& f);

/// A^rank with the left regular action on each summand; coordinates are
/// generator-major (index g*dim A + b).
ModuleRep free_module(const AlgebraPtr& a, std::size_t rank);

/// Restriction of scalars along an algebra map sub -> big (matrix big.dim x sub.dim).
ModuleRep restrict_scalars(const ModuleRep& m, const AlgebraPtr& sub, const Matrix& inclusion);

/// Module with the given actions transported along an invertible change of basis:
/// new coordinates = basis^{-1} * old coordinates.
ModuleRep change_basis(const ModuleRep& m, const Matrix& basis);

}  // namespace csplit
