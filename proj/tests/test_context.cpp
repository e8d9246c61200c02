#include <doctest.h>

#include "csplit/context.hpp"
#include "csplit/corpus.hpp"
#include "csplit/errors.hpp"
#include "csplit/linalg.hpp"
#include "oracles.hpp"

using namespace csplit;

namespace {

ModuleRep trivial(const AlgebraPtr& a) {
  std::vector<Matrix> act(a->dim(), Matrix::identity(a->field(), 1));
  return ModuleRep(a, 1, act);
}

RestrictionContext c2_in_c4() { return RestrictionContext({cyclic_subgroup_embedding(2, 4, 2)}); }

}  // namespace

TEST_CASE("restriction context basics") {
  auto ctx = c2_in_c4();
  auto k = trivial(ctx.algebra());
  ModuleMorphism e = ctx.counit(k);
  CHECK(e.source().dim() == 2);
  CHECK(is_epi(e));
  CHECK(ctx.restrict(k, 0).dim() == 1);
  // Induction from C_2 of the trivial module is F_2[C_4/C_2]: t acts as a swap.
  ModuleRep ind = ctx.induce(ctx.restrict(k, 0), 0);
  CHECK(ind.dim() == 2);
  CHECK_FALSE(ind.check().has_value());
  CHECK(rank(ind.action(1) + Matrix::identity(ind.field(), 2)) == 1);

  CorpusGenerator gen(ctx.algebra(), 4, 1);
  for (int i = 0; i < 20; ++i) {
    ModuleMorphism phi = gen.next_morphism(6);
    ModuleMorphism fphi = ctx.fg_map(phi);
    CHECK(fphi.is_intertwiner());
    // Naturality of the counit.
    CHECK(phi.mat() * ctx.counit(phi.source()).mat() == ctx.counit(phi.target()).mat() * fphi.mat());
    CHECK(is_epi(ctx.counit(phi.source())));
  }
}

TEST_CASE("restriction context validation") {
  auto big = make_truncated_poly(2, 1);
  auto sub = make_truncated_poly(2, 2);
  Matrix inc = Matrix::from_rows(big->field(), {{1, 0}});
  Matrix basis = Matrix::from_rows(big->field(), {{1}});
  CHECK_THROWS_AS(make_restriction_context(big, {{sub, inc, basis}}), InvalidInput);
  try {
    make_restriction_context(big, {{sub, inc, basis}});
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("ring map 0") != std::string::npos);
  }
  CHECK_THROWS_AS(RestrictionContext({}), InvalidInput);
}

TEST_CASE("Sha in the restriction context") {
  auto ctx = c2_in_c4();
  auto k = trivial(ctx.algebra());
  ShaGroup s = sha_n(ctx, k, k, 1);
  CHECK(s.dim() == 1);
  CHECK(s.ext->dim() == 1);
  CHECK(s.restriction.is_zero());
  HurewiczReport hr = hurewicz_check(ctx, k, k);
  CHECK(hr.holds);
  CHECK(hr.cokernel_dim == 1);
  CHECK(hr.sha_dim == 1);
  for (std::size_t n = 0; n <= 3; ++n) {
    ChangeOfRingsReport cr = change_of_rings_check(ctx, k, k, n);
    CHECK(cr.holds);
    CHECK(cr.induced_dims == std::vector<std::size_t>{1});
    CHECK(cr.restricted_dims == std::vector<std::size_t>{1});
  }
  // Free modules are E-projective.
  auto A = free_module(ctx.algebra(), 1);
  for (std::size_t n = 1; n <= 2; ++n) CHECK(sha_n(ctx, A, k, n).dim() == 0);
  CHECK(relative_ext(ctx, A, k, 1).dim() == 0);
  CHECK(change_of_rings_check(ctx, A, k, 1).induced_dims == std::vector<std::size_t>{0});
}

TEST_CASE("arrow context: intro pair") {
  auto kf = make_truncated_poly(2, 1);
  ArrowContext ctx(kf);
  auto zero = ModuleRep::zero(kf);
  auto one = free_module(kf, 1);
  ModuleRep y = ctx.object(ModuleMorphism::zero(one, zero));
  ModuleRep x = ctx.object(ModuleMorphism::zero(zero, one));
  CHECK(sha_n(ctx, y, x, 1).dim() == 1);
  CHECK(relative_ext(ctx, y, x, 1).dim() == 1);
  HurewiczReport hr = hurewicz_check(ctx, y, x);
  CHECK(hr.holds);
  CHECK(hr.cokernel_dim == 1);
  LiftingResult lr = lifting_criterion(ctx, y, x);
  CHECK_FALSE(lr.holds);
  REQUIRE(lr.counterexample);
  CHECK_FALSE(lr.counterexample->mat().is_zero());
  // Y = id_k is E-projective.
  ModuleRep p = ctx.object(ModuleMorphism::identity(one));
  CHECK(sha_n(ctx, p, x, 1).dim() == 0);
  CHECK(lifting_criterion(ctx, p, x).holds);
  CHECK(hurewicz_check(ctx, p, x).cokernel_dim == 0);
}

TEST_CASE("arrow context corpus: bar resolution, Hurewicz, lifting") {
  auto a = make_truncated_poly(2, 2);
  ArrowContext ctx(a);
  CorpusGenerator gen(a, 4, 17);
  for (int i = 0; i < 25; ++i) {
    ModuleRep y = ctx.object(gen.next_morphism(5)), x = ctx.object(gen.next_morphism(5));
    BarResolution bar = bar_resolution(ctx, y, 4);
    CHECK_FALSE(bar.check().has_value());
    std::size_t sha1 = sha_n(ctx, y, x, 1).dim();
    CHECK(relative_ext(bar, x, 1).dim() == sha1);
    CHECK(relative_ext(bar, x, 2).dim() == 0);
    CHECK(lifting_criterion(ctx, y, x).holds == (sha1 == 0));
    CHECK(hurewicz_check(ctx, y, x).holds);
  }
}

TEST_CASE("split detection") {
  auto a = make_truncated_poly(2, 2);
  auto k = jordan_module(a, {1});
  auto A = free_module(a, 1);
  auto ds = direct_sum(k, A);

  // 0 -> k -> A -> k -> 0 restricted to the field.
  auto f2 = make_truncated_poly(2, 1);
  RestrictionContext rctx({make_embedding(f2, a, Matrix::from_rows(a->field(), {{1}, {0}}),
                                          Matrix::identity(a->field(), 2))});
  ModuleMorphism i(k, A, Matrix::from_rows(a->field(), {{0}, {1}}));
  ModuleMorphism p(A, k, Matrix::from_rows(a->field(), {{1, 0}}));
  SplitDetection nonsplit = split_detection(rctx, {i, p});
  CHECK_FALSE(nonsplit.splits_in_c);
  CHECK(nonsplit.splits_after_g);
  SplitDetection split = split_detection(rctx, {ds.inject_first, ds.project_second});
  CHECK(split.splits_in_c);
  CHECK(split.splits_after_g);
  CHECK_THROWS_AS(split_detection(rctx, {i, ModuleMorphism::zero(A, k)}), InvalidInput);
  CHECK_FALSE(fg_exactness_defect(rctx, i, p).has_value());
}

TEST_CASE("intro diagram as a sequence of arrows") {
  auto kf = make_truncated_poly(2, 1);
  ArrowContext ctx(kf);
  const ArrowCategory& cat = ctx.category();
  auto zero = ModuleRep::zero(kf);
  auto one = free_module(kf, 1);
  auto id = ModuleMorphism::identity(one);
  ArrowObject f = ModuleMorphism::zero(zero, one), g = id, h = ModuleMorphism::zero(one, zero);
  ModuleMorphism in = cat.to_module_map({f, g, ModuleMorphism::zero(zero, one), id});
  ModuleMorphism out = cat.to_module_map({g, h, id, ModuleMorphism::zero(one, zero)});
  SplitDetection sd = split_detection(ctx, {in, out});
  CHECK_FALSE(sd.splits_in_c);
  CHECK(sd.splits_after_g);
}

TEST_CASE("lifting against the counit") {
  auto ctx = c2_in_c4();
  auto k = trivial(ctx.algebra());
  auto A = free_module(ctx.algebra(), 1);
  CHECK(lifts_against(A, ctx.counit(k)));
  CHECK_FALSE(lifts_against(k, ctx.counit(k)));
}
