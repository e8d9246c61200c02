#include <doctest.h>

#include "csplit/algebra.hpp"
#include "csplit/corpus.hpp"
#include "csplit/errors.hpp"
#include "csplit/linalg.hpp"
#include "oracles.hpp"

using namespace csplit;

TEST_CASE("truncated polynomial presets") {
  auto k = make_truncated_poly(2, 1);
  CHECK(k->dim() == 1);
  auto a = make_truncated_poly(2, 2);
  CHECK(a->dim() == 2);
  CHECK(a->constant(1, 1, 0) == 0);
  CHECK(a->constant(1, 1, 1) == 0);
  auto b = make_truncated_poly(3, 3);
  CHECK(b->dim() == 3);
  // x^2 * x = 0
  for (std::size_t k2 = 0; k2 < 3; ++k2) CHECK(b->constant(2, 1, k2) == 0);
  CHECK(b->constant(1, 1, 2) == 1);
}

TEST_CASE("cyclic group algebras") {
  CHECK(make_cyclic_group_algebra(2, 1)->dim() == 1);
  auto c4 = make_cyclic_group_algebra(2, 4);
  CHECK(c4->dim() == 4);
  CHECK(c4->constant(3, 2, 1) == 1);  // t^3 t^2 = t
  // F_2[C_2] with u = t - 1 satisfies u^2 = 0, matching F_2[u]/u^2.
  auto c2 = make_cyclic_group_algebra(2, 2);
  Matrix u = Matrix::column_vector(c2->field(), {1, 1});
  CHECK(c2->multiply(u, u).is_zero());
  auto dual = make_truncated_poly(2, 2);
  Matrix iso = Matrix::from_rows(c2->field(), {{1, 1}, {0, 1}});  // columns 1, u
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Matrix prod = c2->multiply(iso.column(i), iso.column(j));
      Matrix expect(c2->field(), 2, 1);
      for (std::size_t k = 0; k < 2; ++k)
        if (dual->constant(i, j, k)) expect = expect + iso.column(k);
      CHECK(prod == expect);
    }
}

TEST_CASE("presets validate for small p and n") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK_FALSE(validate(make_truncated_poly(p, n)->data()).has_value());
      CHECK_FALSE(validate(make_cyclic_group_algebra(p, n)->data()).has_value());
      CHECK_FALSE(validate(triangular(make_truncated_poly(p, n))->data()).has_value());
    }
}

TEST_CASE("validation rejects broken data") {
  AlgebraData d = make_truncated_poly(2, 2)->data();
  d.constants[(0 * 2 + 1) * 2 + 1] = 0;  // 1 * x = 0
  CHECK(validate(d).has_value());
  CHECK_THROWS_AS(Algebra{d}, InvalidInput);
  AlgebraData empty{PrimeField(2), 0, {}, {}, "empty", std::nullopt};
  CHECK(validate(empty).has_value());
}

TEST_CASE("triangular algebra") {
  auto k = make_truncated_poly(2, 1);
  auto t = triangular(k);
  REQUIRE(t->dim() == 3);
  // A_2 path algebra: E21 = E22 E21 E11, and E11 E21 = 0.
  std::size_t e11 = tri_index(TriBlock::kE11, 0, 1), e21 = tri_index(TriBlock::kE21, 0, 1),
              e22 = tri_index(TriBlock::kE22, 0, 1);
  CHECK(t->constant(e22, e21, e21) == 1);
  CHECK(t->constant(e21, e11, e21) == 1);
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(t->constant(e11, e21, c) == 0);
    CHECK(t->constant(e11, e22, c) == 0);
  }
  Matrix unit = Matrix::column_vector(k->field(), {1, 0, 1});
  CHECK(t->unit() == unit);
  CHECK(triangular(make_truncated_poly(2, 2))->dim() == 6);
  // Orthogonal idempotents summing to 1.
  Matrix a = Matrix::column_vector(k->field(), {1, 0, 0}), b = Matrix::column_vector(k->field(), {0, 0, 1});
  CHECK(t->multiply(a, a) == a);
  CHECK(t->multiply(b, b) == b);
  CHECK(t->multiply(a, b).is_zero());
  CHECK(a + b == t->unit());
}

TEST_CASE("cyclic subgroup embeddings") {
  auto e = cyclic_subgroup_embedding(2, 4, 2);
  CHECK(e.rank() == 2);
  CHECK(cyclic_subgroup_embedding(2, 3, 3).rank() == 1);
  CHECK(cyclic_subgroup_embedding(2, 4, 1).rank() == 4);
  CHECK_THROWS_AS(cyclic_subgroup_embedding(2, 4, 3), InvalidInput);
}

TEST_CASE("modules: free, sums, kernels, cokernels") {
  auto a = make_truncated_poly(2, 2);
  auto k = jordan_module(a, {1});
  auto A = free_module(a, 1);
  CHECK(free_module(a, 0).dim() == 0);
  CHECK(A.dim() == 2);
  CHECK(A.act(a->unit()).is_identity());
  CHECK(direct_sum(k, A).sum.dim() == 3);
  auto ds = direct_sum(A, ModuleRep::zero(a));
  CHECK(ds.sum == A);
  CHECK(compose(ds.project_first, ds.inject_first).mat().is_identity());

  // Hom(k, k) has dim 1; Hom(A, k (+) A) has dim 3.
  CHECK(HomSpace(k, k).dim() == 1);
  CHECK(oracle::all_homs(k, k).size() == 2);
  auto m = direct_sum(k, A).sum;
  CHECK(HomSpace(A, m).dim() == m.dim());
  CHECK(HomSpace(ModuleRep::zero(a), m).dim() == 0);

  // x on A: kernel is the socle, cokernel is k.
  ModuleMorphism x(A, A, A.action(1));
  auto ker = kernel_module(x);
  CHECK(ker.module.dim() == 1);
  CHECK(ker.module == k);
  auto cok = cokernel_module(x);
  CHECK(cok.module.dim() == 1);
  CHECK(kernel_module(ModuleMorphism::identity(A)).module.dim() == 0);
  CHECK(cokernel_module(ModuleMorphism::identity(A)).module.dim() == 0);
  CHECK(kernel_module(ModuleMorphism::zero(A, k)).module.dim() == 2);
}

TEST_CASE("split mono and split epi") {
  auto a = make_truncated_poly(2, 2);
  auto k = jordan_module(a, {1});
  auto A = free_module(a, 1);
  ModuleMorphism socle(k, A, Matrix::from_rows(a->field(), {{0}, {1}}));
  ModuleMorphism top(A, k, Matrix::from_rows(a->field(), {{1, 0}}));
  CHECK_FALSE(is_split_mono(socle).has_value());
  CHECK_FALSE(is_split_epi(top).has_value());
  CHECK(is_split_mono(ModuleMorphism::identity(A)).has_value());
  auto ds = direct_sum(k, A);
  auto r = is_split_mono(ds.inject_first);
  REQUIRE(r);
  CHECK(compose(*r, ds.inject_first).mat().is_identity());
  auto s = is_split_epi(ds.project_second);
  REQUIRE(s);
  CHECK(compose(ds.project_second, *s).mat().is_identity());
}

TEST_CASE("corpus over F_2[x]/x^2 decomposes into k and A") {
  auto a = make_truncated_poly(2, 2);
  CorpusGenerator gen(a, 6, 5);
  CorpusGenerator again(a, 6, 5);
  for (int i = 0; i < 100; ++i) {
    ModuleRep m = gen.next_module();
    CHECK(m == again.next_module());
    CHECK_FALSE(m.check().has_value());
    CHECK(m.dim() <= 6);
    // With b copies of A and c copies of k: dim = 2b + c and rank x = b.
    std::size_t b = rank(m.action(1));
    CHECK(2 * b <= m.dim());
    CHECK(kernel_basis(m.action(1)).dim() == m.dim() - b);
    ModuleMorphism f = gen.next_morphism(6);
    CHECK(f.mat() == again.next_morphism(6).mat());
    CHECK(f.is_intertwiner());
    auto ker = kernel_module(f);
    auto cok = cokernel_module(f);
    CHECK(ker.module.dim() + image_module(f).module.dim() == f.source().dim());
    CHECK(cok.module.dim() == f.target().dim() - rank(f.mat()));
  }
}

TEST_CASE("module validation") {
  auto a = make_truncated_poly(2, 2);
  std::vector<Matrix> bad{Matrix::identity(a->field(), 1), Matrix::identity(a->field(), 1)};  // x acts as 1
  CHECK_THROWS_AS(ModuleRep(a, 1, bad), InvalidInput);
  auto k = jordan_module(a, {1});
  auto A = free_module(a, 1);
  CHECK_THROWS_AS(ModuleMorphism(k, A, Matrix::from_rows(a->field(), {{1}, {0}})), InvalidInput);
}
