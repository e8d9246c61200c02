#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csplit/arrow.hpp"

namespace csplit {

/// C = Mod(algebra) with a faithful exact G into a product of module categories and
/// its left adjoint F. Implementations supply FG, the counit and G on morphisms.
class SplittingContext {
 public:
  virtual ~SplittingContext() = default;

  virtual const AlgebraPtr& algebra() const = 0;
  virtual std::string kind() const = 0;
  /// The counit FG Y -> Y (an epimorphism).
  virtual ModuleMorphism counit(const ModuleRep& y) const = 0;
  /// FG on morphisms, between the sources of the counits.
  virtual ModuleMorphism fg_map(const ModuleMorphism& phi) const = 0;
  /// G on morphisms: one component per factor category.
  virtual std::vector<ModuleMorphism> forget(const ModuleMorphism& phi) const = 0;

  ModuleRep fg(const ModuleRep& y) const { return counit(y).source(); }
};

class ArrowContext final : public SplittingContext {
 public:
  explicit ArrowContext(AlgebraPtr base) : cat_(std::move(base)) {}

  const AlgebraPtr& algebra() const override { return cat_.tri(); }
  std::string kind() const override { return "arrow"; }
  ModuleMorphism counit(const ModuleRep& y) const override;
  ModuleMorphism fg_map(const ModuleMorphism& phi) const override;
  std::vector<ModuleMorphism> forget(const ModuleMorphism& phi) const override;

  const ArrowCategory& category() const { return cat_; }
  ModuleRep object(const ArrowObject& f) const { return cat_.to_module(f); }

 private:
  ArrowCategory cat_;
};

/// G = product of restrictions along embeddings B_i -> A, F = sum of inductions
/// A (x)_{B_i} -, built from the freeness witnesses.
class RestrictionContext final : public SplittingContext {
 public:
  /// Throws InvalidInput if the list is empty or the embeddings do not share a big algebra.
  explicit RestrictionContext(std::vector<AlgebraEmbedding> embeddings);

  const AlgebraPtr& algebra() const override { return big_; }
  std::string kind() const override { return "restriction"; }
  ModuleMorphism counit(const ModuleRep& y) const override;
  ModuleMorphism fg_map(const ModuleMorphism& phi) const override;
  std::vector<ModuleMorphism> forget(const ModuleMorphism& phi) const override;

  const std::vector<AlgebraEmbedding>& embeddings() const { return emb_; }
  ModuleRep restrict(const ModuleRep& y, std::size_t i) const;
  ModuleMorphism restrict(const ModuleMorphism& phi, std::size_t i) const;
  /// A (x)_{B_i} z for a B_i-module z; coordinates (k, c) = b_k (x) z_c.
  ModuleRep induce(const ModuleRep& z, std::size_t i) const;
  /// F_i G_i y -> y, b_k (x) y -> b_k y.
  ModuleMorphism induced_counit(const ModuleRep& y, std::size_t i) const;

 private:
  std::vector<AlgebraEmbedding> emb_;
  std::vector<Matrix> right_inv_;
  AlgebraPtr big_;
};

/// Builds a restriction context from raw ring maps; throws InvalidInput naming the
/// first map for which induction is not exact (not injective / not free).
struct RingMapSpec {
  AlgebraPtr sub;
  Matrix inclusion;
  Matrix free_basis;
};
RestrictionContext make_restriction_context(const AlgebraPtr& big, const std::vector<RingMapSpec>& maps);

/// Sha^n(Y, X): kernel of Ext^n(Y, X) -> Ext^n(FG Y, X) induced by the counit.
struct ShaGroup {
  std::shared_ptr<const ExtGroup> ext;     // Ext^n(Y, X)
  std::shared_ptr<const ExtGroup> fg_ext;  // Ext^n(FG Y, X)
  Matrix restriction;                      // the induced map, in class coordinates
  Subspace kernel;                         // Sha^n inside Ext^n(Y, X) coordinates

  std::size_t dim() const { return kernel.dim(); }
};
ShaGroup sha_n(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x, std::size_t n);
/// Same, inside an already computed Ext^n(Y, X) (keeps its class coordinates).
ShaGroup sha_in(const SplittingContext& ctx, std::shared_ptr<const ExtGroup> ext);

/// U_0 = Y, U_i = FG V_{i-1}, V_0 = Y, V_i = ker(U_i -> V_{i-1}).
struct BarResolution {
  std::vector<ModuleRep> u;                // U_0..U_S
  std::vector<ModuleRep> v;                // V_0..V_S
  std::vector<ModuleMorphism> counit;      // counit[i]: U_i -> V_{i-1}, i >= 1 (index 0 unused: identity)
  std::vector<ModuleMorphism> inclusion;   // inclusion[i]: V_i -> U_i (index 0: identity)
  std::vector<ModuleMorphism> boundary;    // boundary[i]: U_i -> U_{i-1}, i >= 1 (index 0: identity)

  std::size_t length() const { return u.size() - 1; }
  /// Empty when every splice 0 -> V_i -> U_i -> V_{i-1} -> 0 is exact and consecutive
  /// boundaries compose to zero.
  std::optional<std::string> check() const;
};
BarResolution bar_resolution(const SplittingContext& ctx, const ModuleRep& y, std::size_t length);

/// H^n of Hom(U_1, X) -> Hom(U_2, X) -> ..., with U_1 in degree 0.
struct RelativeExt {
  std::size_t degree;
  std::size_t hom_dim;         // dim Hom(U_{n+1}, X)
  Subquotient presentation;    // in HomSpace(U_{n+1}, X) coordinates

  std::size_t dim() const { return presentation.dim(); }
};
RelativeExt relative_ext(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x, std::size_t n);
RelativeExt relative_ext(const BarResolution& bar, const ModuleRep& x, std::size_t n);

/// Degree-1 comparison: coker(Hom(FG Y, X) -> Hom(ker eps_Y, X)) against Sha^1(Y, X),
/// including the map of cokernel classes into Sha^1 through the connecting map.
struct HurewiczReport {
  std::size_t cokernel_dim = 0;
  std::size_t sha_dim = 0;
  std::size_t connecting_rank = 0;
  bool holds = false;
  std::string detail;
};
HurewiczReport hurewicz_check(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x);

/// Every map ker eps_Y -> X extends over FG Y, or a map that does not.
struct LiftingResult {
  bool holds = false;
  std::optional<ModuleMorphism> counterexample;  // ker eps_Y -> X
};
LiftingResult lifting_criterion(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x);

/// dim Ext^n_A(F_i G_i Y, X) against dim Ext^n_{B_i}(Y|, X|) for every embedding.
struct ChangeOfRingsReport {
  std::vector<std::size_t> induced_dims;
  std::vector<std::size_t> restricted_dims;
  bool holds = false;
};
ChangeOfRingsReport change_of_rings_check(const RestrictionContext& ctx, const ModuleRep& y, const ModuleRep& x,
                                          std::size_t n);

/// An exact sequence 0 -> X -> E_1 -> ... -> E_n -> Y -> 0 as its n+1 maps.
struct SplitDetection {
  bool splits_in_c = false;
  bool splits_after_g = false;
};
/// Empty if the maps form an exact sequence starting with a mono and ending with an epi.
std::optional<std::string> exact_sequence_defect(const std::vector<ModuleMorphism>& maps);
/// All short pieces 0 -> ker d_j -> E_j -> im d_j -> 0 split. Assumes exactness.
bool sequence_splits(const std::vector<ModuleMorphism>& maps);
/// Throws InvalidInput if the sequence is not exact.
SplitDetection split_detection(const SplittingContext& ctx, const std::vector<ModuleMorphism>& maps);

/// Empty when FG carries the short exact sequence to a short exact sequence and the
/// counit is natural on both maps.
std::optional<std::string> fg_exactness_defect(const SplittingContext& ctx, const ModuleMorphism& i,
                                               const ModuleMorphism& p);

/// Every map P -> target(e) lifts through e.
bool lifts_against(const ModuleRep& p, const ModuleMorphism& e);

}  // namespace csplit
