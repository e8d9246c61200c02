#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "csplit/module.hpp"

namespace csplit {

/// Deterministic seeded stream of modules and morphisms over a fixed algebra.
/// Modules are cokernels of random maps between free modules, so every
/// emitted module is a valid representation by construction.
class CorpusGenerator {
 public:
  CorpusGenerator(AlgebraPtr algebra, std::size_t max_dim, std::uint64_t seed);

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t max_dim() const { return max_dim_; }

  /// Module of dimension <= max_dim (possibly zero).
  ModuleRep next_module();
  /// Module with dimension in [lo, hi].
  ModuleRep next_module_in(std::size_t lo, std::size_t hi);
  /// Uniformly random element of Hom(m, n).
  ModuleMorphism random_morphism(const ModuleRep& m, const ModuleRep& n);
  /// Morphism between corpus modules with dim source + dim target <= max_total.
  ModuleMorphism next_morphism(std::size_t max_total);

  std::uint64_t next_u64() { return rng_(); }
  std::size_t uniform(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  PrimeField::Elem random_scalar() { return static_cast<PrimeField::Elem>(rng_() % algebra_->field().p()); }
  Matrix random_matrix(std::size_t rows, std::size_t cols);

 private:
  AlgebraPtr algebra_;
  std::size_t max_dim_;
  std::mt19937_64 rng_;
};

/// Module over F_p[x]/(x^n) given by a list of Jordan block sizes (each in 1..n);
/// x acts by the shift e_j -> e_{j+1} inside each block.
ModuleRep jordan_module(const AlgebraPtr& truncated_poly, const std::vector<std::size_t>& blocks);

/// All modules over F_p[x]/(x^n) of dimension <= max_dim up to isomorphism,
/// ordered by dimension then by partition (largest parts first).
std::vector<ModuleRep> truncated_poly_modules(const AlgebraPtr& truncated_poly, std::size_t max_dim);

}  // namespace csplit
