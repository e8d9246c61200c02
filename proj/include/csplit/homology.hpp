#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csplit/module.hpp"

namespace csplit {

/// Full matrix of the module map A^r -> target sending generator g to column g of
/// `gen_images`. Column g*dim A + b is action(e_b) applied to that image.
Matrix map_from_free(const ModuleRep& target, const Matrix& gen_images);
/// Same, for a free target A^s (gen_images has s*dim A rows), without building A^s.
Matrix free_map_matrix(const Algebra& a, const Matrix& gen_images);

/// Generators of m: standard basis vectors completing a basis of I*m, where I is
/// the algebra's nilpotent ideal. Columns are vectors of m.
Matrix cover_generators(const ModuleRep& m);

/// A free resolution ... -> P_1 -> P_0 -> M -> 0 with P_i = A^{r_i}, stored as images
/// of free generators.
class FreeResolution {
 public:
  /// images[0]: dim M x r_0, the augmentation on generators; images[i] for i >= 1:
  /// (dim A * r_{i-1}) x r_i, the differential P_i -> P_{i-1} on generators.
  FreeResolution(ModuleRep module, std::vector<Matrix> images);

  const ModuleRep& module() const { return module_; }
  const AlgebraPtr& algebra() const { return module_.algebra(); }
  /// Highest computed homological degree.
  std::size_t length() const { return images_.size() - 1; }
  std::size_t rank(std::size_t i) const { return images_[i].cols(); }
  std::vector<std::size_t> ranks() const;
  std::size_t free_dim(std::size_t i) const { return rank(i) * algebra()->dim(); }
  const Matrix& generator_images(std::size_t i) const { return images_[i]; }
  /// Full matrix of P_i -> P_{i-1}; degree 0 is the augmentation P_0 -> M.
  const Matrix& differential(std::size_t i) const { return full_[i]; }
  ModuleRep free_module(std::size_t i) const;

  /// Empty when the augmentation is epi, d o d = 0 and ker = im at every degree
  /// below the top; otherwise the first failure.
  std::optional<std::string> check() const;

 private:
  ModuleRep module_;
  std::vector<Matrix> images_;
  std::vector<Matrix> full_;
};

using ResolutionPtr = std::shared_ptr<const FreeResolution>;

/// Free resolution through homological degree `length`.
FreeResolution resolve(const ModuleRep& m, std::size_t length);
ResolutionPtr resolve_shared(const ModuleRep& m, std::size_t length);

/// Cochains Hom_A(A^r, N) are identified with N^r (generator-major: index g*dim N + c).
Matrix cochain_from_images(const Matrix& images);
Matrix images_from_cochain(const Matrix& cochain, std::size_t target_dim, std::size_t rank);

/// Matrix of Hom(P, N) -> Hom(P', N), phi -> phi o F, for a free map F: P' -> P given by
/// generator images (rank P * dim A) x rank P'.
Matrix cochain_pullback(const ModuleRep& n, const Matrix& gen_images, std::size_t source_rank);
/// Matrix of phi -> g o phi on cochains over `rank` generators.
Matrix cochain_postcompose(const Matrix& g, std::size_t rank);

/// Ext^n(M, N) as cocycles modulo coboundaries in Hom(P_n, N).
class ExtGroup {
 public:
  ExtGroup(ResolutionPtr res, ModuleRep target, std::size_t degree);

  std::size_t degree() const { return degree_; }
  const ModuleRep& source() const { return res_->module(); }
  const ModuleRep& target() const { return target_; }
  const ResolutionPtr& resolution() const { return res_; }
  std::size_t dim() const { return sq_.dim(); }
  std::size_t cochain_dim() const { return sq_.ambient_dim(); }
  const Subspace& cocycles() const { return sq_.numerator; }
  const Subspace& coboundaries() const { return sq_.denominator; }
  const Subquotient& presentation() const { return sq_; }
  /// Coboundary C^n -> C^{n+1}.
  const Matrix& coboundary() const { return delta_; }
  /// Class coordinates of a cochain; throws InvariantViolation if it is not a cocycle.
  Matrix class_of(const Matrix& cochain) const;
  /// Columns are representative cocycles of the basis classes.
  const Matrix& reps() const { return sq_.reps; }
  bool is_cocycle(const Matrix& cochain) const;

 private:
  ResolutionPtr res_;
  ModuleRep target_;
  std::size_t degree_;
  Matrix delta_;
  Subquotient sq_;
};

ExtGroup ext_group(const ModuleRep& m, const ModuleRep& n, std::size_t degree);

/// An element of Ext^1 given by a cocycle, with its class coordinates.
struct ExtClass {
  std::shared_ptr<const ExtGroup> parent;
  Matrix cocycle;
  Matrix coords;

  bool is_zero() const { return coords.is_zero(); }
};

/// Generator images of a chain map between resolutions, degree 0..depth.
using ChainMap = std::vector<Matrix>;

/// Lift f: src.module -> tgt.module to P^src -> P^tgt through degree `depth`.
ChainMap lift_chain_map(const ModuleMorphism& f, const FreeResolution& src, const FreeResolution& tgt,
                        std::size_t depth);
/// General lift starting at degree `offset` of src: `start` gives the images of the
/// generators of src P_offset in tgt.module, and must vanish on the image of
/// src P_{offset+1}. Component j maps src P_{offset+j} -> tgt P_j.
ChainMap lift_along(const Matrix& start, const FreeResolution& src, std::size_t offset, const FreeResolution& tgt,
                    std::size_t depth);

/// Matrix of Ext^n(f, g): Ext^n(M, N) -> Ext^n(M', N') in class coordinates,
/// for f: M' -> M (first slot, contravariant) and g: N -> N' (covariant).
Matrix induced_ext_map(const ExtGroup& from, const ExtGroup& to, const ModuleMorphism& f, const ModuleMorphism& g);
Matrix induced_ext_map(const ModuleMorphism& f, const ModuleMorphism& g, std::size_t degree);

/// Empty if 0 -> K -i-> E -p-> M -> 0 is exact, otherwise where it fails.
std::optional<std::string> ses_defect(const ModuleMorphism& i, const ModuleMorphism& p);

/// Class of 0 -> N -i-> E -p-> M -> 0 in Ext^1(M, N); throws InvalidInput if not exact.
ExtClass yoneda_class_of_ses(const ModuleMorphism& i, const ModuleMorphism& p);

/// Images of the generators of P_1 (resolving M) in K, for a short exact sequence
/// 0 -> K -i-> E -p-> M -> 0: lift the augmentation through p, restrict to P_1.
Matrix connecting_cocycle(const ModuleMorphism& i, const ModuleMorphism& p, const FreeResolution& res_m);

/// Connecting map Ext^t(K, N) -> Ext^{t+1}(M, N) for 0 -> K -i-> E -p-> M -> 0.
/// `ext_k` is Ext^t(K, N) and `ext_m` is Ext^{t+1}(M, N) (resolution length >= t+2).
Matrix connecting_map(const ModuleMorphism& i, const ModuleMorphism& p, const ExtGroup& ext_k,
                      const ExtGroup& ext_m);
/// Degree-0 form: Hom(K, N) (coordinates in HomSpace(K, N)) -> Ext^1(M, N).
Matrix connecting_map_from_hom(const ModuleMorphism& i, const ModuleMorphism& p, const HomSpace& hom_kn,
                               const ExtGroup& ext_m);

}  // namespace csplit
