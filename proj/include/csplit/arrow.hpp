#pragma once

#include <memory>
#include <optional>

#include "csplit/homology.hpp"

namespace csplit {

/// An object X -> Y of the arrow category is just a morphism of A-modules.
using ArrowObject = ModuleMorphism;

/// A commuting square b o src = dst o a.
struct ArrowMorphism {
  ArrowObject src, dst;
  ModuleMorphism a;  // dom src -> dom dst
  ModuleMorphism b;  // cod src -> cod dst

  bool commutes() const;
};

/// A T-module split into its two idempotent pieces. `basis` has the X basis
/// vectors followed by the Y basis vectors (in the original coordinates), so
/// the module is change_basis(to_module(arrow), basis^{-1}) of the original.
struct TriangularSplit {
  ArrowObject arrow;
  Matrix basis;
};

/// Mod(A)^(->) realized as modules over T = triangular(A).
/// E11 acts on X, E22 on Y and E21 (x) a acts as X -> Y, x -> a.f(x).
class ArrowCategory {
 public:
  explicit ArrowCategory(AlgebraPtr base);

  const AlgebraPtr& base() const { return base_; }
  const AlgebraPtr& tri() const { return tri_; }

  /// T-module on X (+) Y.
  ModuleRep to_module(const ArrowObject& f) const;
  ModuleMorphism to_module_map(const ArrowMorphism& m) const;
  /// Inverse of to_module up to the recorded change of basis; the identity basis
  /// for modules built by to_module.
  TriangularSplit from_module(const ModuleRep& m) const;
  /// Components of a T-module map, in the split coordinates of source and target.
  ArrowMorphism from_module_map(const ModuleMorphism& phi) const;

  /// Coordinates in T of E (x) a for an element a of A (coordinates).
  Matrix element(TriBlock block, const Matrix& a) const;

 private:
  AlgebraPtr base_;
  AlgebraPtr tri_;
};

ArrowMorphism identity_arrow(const ArrowObject& f);
ArrowMorphism compose(const ArrowMorphism& g, const ArrowMorphism& f);

/// FG f = (X -[id;0]-> X (+) Y).
ArrowObject fg_arrow(const ArrowObject& f);
/// Counit FG f -> f with components (id_X, [f id_Y]).
ArrowMorphism counit_arrow(const ArrowObject& f);

/// Kernel of the counit: (0 -> X) embedded in FG f by x -> (x, -f x), together with
/// m = [[id, 0], [f, id]] on X (+) Y and its inverse; m^{-1} carries X (+) 0 onto the
/// kernel and [f id] o m^{-1} = [0 id].
struct KerCounit {
  ArrowObject kernel;
  ArrowMorphism inclusion;
  Matrix m;
  Matrix m_inv;

  /// Empty when 0 -> kernel -> FG f -> f -> 0 is exact and m, m^{-1} behave as stated.
  std::optional<std::string> check(const ArrowObject& f) const;
};
KerCounit ker_counit_arrow(const ArrowObject& f);

/// E-projective objects are the split monomorphisms; the witness is a retraction.
std::optional<ModuleMorphism> is_E_projective(const ArrowObject& f);
/// E-injective objects are the split epimorphisms; the witness is a section.
std::optional<ModuleMorphism> is_E_injective(const ArrowObject& f);

/// dom (resp. cod) of a free T-resolution, as a free A-resolution of dom (resp. cod)
/// of the resolved module. dom T^r = A^r and cod T^r = A^{2r}.
FreeResolution evaluate_dom(const ArrowCategory& cat, const FreeResolution& res);
FreeResolution evaluate_cod(const ArrowCategory& cat, const FreeResolution& res);

/// Ext^n_T(f, g) -> Ext^n_A(X, V) and -> Ext^n_A(Y, W) for f: X -> Y, g: V -> W.
struct EvalMaps {
  std::shared_ptr<const ExtGroup> arrow_ext;  // Ext^n_T(f, g)
  std::shared_ptr<const ExtGroup> dom_ext;    // Ext^n_A(X, V)
  std::shared_ptr<const ExtGroup> cod_ext;    // Ext^n_A(Y, W)
  Matrix to_dom;
  Matrix to_cod;
};
EvalMaps eval_ext_maps(const ArrowCategory& cat, const ArrowObject& f, const ArrowObject& g, std::size_t degree);

/// Same, for an already computed Ext^n_T between two T-modules.
EvalMaps eval_ext_maps(const ArrowCategory& cat, std::shared_ptr<const ExtGroup> arrow_ext);

}  // namespace csplit
