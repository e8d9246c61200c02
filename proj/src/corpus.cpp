#include "csplit/corpus.hpp"

#include <functional>

#include "csplit/errors.hpp"

namespace csplit {

CorpusGenerator::CorpusGenerator(AlgebraPtr algebra, std::size_t max_dim, std::uint64_t seed)
    : algebra_(std::move(algebra)), max_dim_(max_dim), rng_(seed) {}

Matrix CorpusGenerator::random_matrix(std::size_t rows, std::size_t cols) {
  Matrix m(algebra_->field(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_scalar();
  return m;
}

ModuleRep CorpusGenerator::next_module() { return next_module_in(0, max_dim_); }

ModuleRep CorpusGenerator::next_module_in(std::size_t lo, std::size_t hi) {
  const std::size_t d = algebra_->dim();
  const std::size_t max_rank = hi / d + 2;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::size_t b = 1 + uniform(max_rank);
    const std::size_t a = uniform(b + 2);
    ModuleRep target = free_module(algebra_, b);
    // images of the a generators of A^a: arbitrary vectors of A^b, or (half the time)
    // vectors of I A^b for the nilpotent ideal I, which keeps the quotient from collapsing
    Matrix gens = random_matrix(b * d, a);
    const Matrix& ideal = algebra_->nilpotent_ideal();
    for (std::size_t g = 0; g < a; ++g) {
      if (ideal.cols() == 0 || uniform(2) == 0) continue;
      for (std::size_t blk = 0; blk < b; ++blk) gens.set_block(blk * d, g, ideal * random_matrix(ideal.cols(), 1));
    }
    Matrix full(algebra_->field(), b * d, a * d);
    for (std::size_t g = 0; g < a; ++g)
      for (std::size_t e = 0; e < d; ++e) full.set_block(0, g * d + e, target.action(e) * gens.column(g));
    auto f = ModuleMorphism::trusted(free_module(algebra_, a), target, full);
    auto c = cokernel_module(f);
    if (c.module.dim() >= lo && c.module.dim() <= hi) return c.module;
  }
  throw InvalidInput("corpus: could not generate a module with dimension in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
}

ModuleMorphism CorpusGenerator::random_morphism(const ModuleRep& m, const ModuleRep& n) {
  HomSpace hom(m, n);
  return hom.combine(random_matrix(hom.dim(), 1));
}

ModuleMorphism CorpusGenerator::next_morphism(std::size_t max_total) {
  // Half the budget first, so both ends are usually nonzero.
  ModuleRep m = next_module_in(0, (max_total + 1) / 2);
  ModuleRep n = next_module_in(0, max_total - m.dim());
  if (uniform(2) == 1) std::swap(m, n);
  return random_morphism(m, n);
}

ModuleRep jordan_module(const AlgebraPtr& a, const std::vector<std::size_t>& blocks) {
  const std::size_t n = a->dim();
  std::size_t dim = 0;
  for (auto b : blocks) {
    if (b == 0 || b > n) throw InvalidInput("jordan_module: block size out of range");
    dim += b;
  }
  Matrix shift(a->field(), dim, dim);
  std::size_t off = 0;
  for (auto b : blocks) {
    for (std::size_t j = 0; j + 1 < b; ++j) shift(off + j + 1, off + j) = 1;
    off += b;
  }
  std::vector<Matrix> act;
  Matrix power = Matrix::identity(a->field(), dim);
  for (std::size_t k = 0; k < n; ++k) {
    act.push_back(power);
    power = power * shift;
  }
  return ModuleRep(a, dim, std::move(act));
}

std::vector<ModuleRep> truncated_poly_modules(const AlgebraPtr& a, std::size_t max_dim) {
  const std::size_t n = a->dim();
  std::vector<ModuleRep> out;
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t largest) {
    if (remaining == 0) {
      out.push_back(jordan_module(a, parts));
      return;
    }
    for (std::size_t p = std::min(largest, remaining); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  for (std::size_t dim = 0; dim <= max_dim; ++dim) rec(dim, n);
  return out;
}

}  // namespace csplit
