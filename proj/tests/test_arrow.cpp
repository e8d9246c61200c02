#include <doctest.h>

#include "csplit/arrow.hpp"
#include "csplit/corpus.hpp"
#include "csplit/linalg.hpp"
#include "oracles.hpp"

using namespace csplit;

namespace {

struct Fixture {
  AlgebraPtr k = make_truncated_poly(2, 1);
  ModuleRep zero = ModuleRep::zero(k);
  ModuleRep one = free_module(k, 1);
  ArrowObject id = ModuleMorphism::identity(one);
  ArrowObject into = ModuleMorphism::zero(zero, one);  // 0 -> k
  ArrowObject onto = ModuleMorphism::zero(one, zero);  // k -> 0
  ArrowCategory cat{k};
};

}  // namespace

TEST_CASE("arrows as triangular modules") {
  Fixture fx;
  ModuleRep m = fx.cat.to_module(fx.id);
  CHECK(m.dim() == 2);
  // E21 acts as the unique isomorphism from the X slot to the Y slot.
  Matrix e21 = m.action(tri_index(TriBlock::kE21, 0, 1));
  CHECK(e21 == Matrix::from_rows(fx.k->field(), {{0, 0}, {1, 0}}));
  ModuleRep s = fx.cat.to_module(fx.into);
  CHECK(s.dim() == 1);
  CHECK(s.action(tri_index(TriBlock::kE21, 0, 1)).is_zero());
  CHECK(s.action(tri_index(TriBlock::kE22, 0, 1)).is_identity());
  CHECK(fx.cat.to_module(ModuleMorphism::zero(fx.zero, fx.zero)).dim() == 0);
}

TEST_CASE("round trip through triangular modules") {
  Fixture fx;
  for (const auto& f : {fx.id, fx.into, fx.onto}) {
    TriangularSplit back = fx.cat.from_module(fx.cat.to_module(f));
    CHECK(back.arrow.mat() == f.mat());
    CHECK(back.basis.is_identity());
  }
  auto a = make_truncated_poly(2, 2);
  ArrowCategory cat(a);
  CorpusGenerator gen(a, 4, 21);
  for (int i = 0; i < 40; ++i) {
    ArrowObject f = gen.next_morphism(6);
    ModuleRep m = cat.to_module(f);
    CHECK_FALSE(m.check().has_value());
    TriangularSplit back = cat.from_module(m);
    CHECK(back.arrow.source() == f.source());
    CHECK(back.arrow.target() == f.target());
    CHECK(back.arrow.mat() == f.mat());
    // T-module maps are exactly commuting squares.
    ArrowObject g = gen.next_morphism(6);
    std::size_t squares = 0;
    for (const auto& a0 : oracle::all_homs(f.source(), g.source()))
      for (const auto& b0 : oracle::all_homs(f.target(), g.target())) {
        int p = 2;
        if (oracle::mul(b0, oracle::to_mat(f.mat()), f.target().dim(), f.source().dim(), p) ==
            oracle::mul(oracle::to_mat(g.mat()), a0, g.source().dim(), f.source().dim(), p))
          ++squares;
      }
    CHECK(HomSpace(m, cat.to_module(g)).dim() == oracle::log_p(squares, 2));
  }
}

TEST_CASE("FG and the counit") {
  Fixture fx;
  ArrowObject fg = fg_arrow(fx.id);
  CHECK(fg.source().dim() == 1);
  CHECK(fg.target().dim() == 2);
  CHECK(fg.mat() == Matrix::from_rows(fx.k->field(), {{1}, {0}}));
  ArrowMorphism e = counit_arrow(fx.id);
  CHECK(e.commutes());
  CHECK(e.a.mat().is_identity());
  CHECK(e.b.mat() == Matrix::from_rows(fx.k->field(), {{1, 1}}));

  ArrowMorphism e0 = counit_arrow(fx.into);
  CHECK(fg_arrow(fx.into).source().dim() == 0);
  CHECK(e0.b.mat().is_identity());
  ArrowMorphism e1 = counit_arrow(fx.onto);
  CHECK(fg_arrow(fx.onto).target().dim() == 1);
  CHECK(e1.a.mat().is_identity());
  CHECK(e1.b.mat().rows() == 0);

  auto a = make_truncated_poly(3, 2);
  CorpusGenerator gen(a, 4, 3);
  for (int i = 0; i < 30; ++i) {
    ArrowObject f = gen.next_morphism(6);
    ArrowMorphism c = counit_arrow(f);
    CHECK(c.commutes());
    CHECK(is_epi(c.a));
    CHECK(is_epi(c.b));
    KerCounit kc = ker_counit_arrow(f);
    CHECK_FALSE(kc.check(f).has_value());
    CHECK(kc.kernel.source().dim() == 0);
    CHECK(kc.kernel.target() == f.source());
  }
}

TEST_CASE("kernel of the counit") {
  Fixture fx;
  KerCounit kc = ker_counit_arrow(fx.onto);
  CHECK(kc.kernel.target().dim() == 1);
  KerCounit kid = ker_counit_arrow(fx.id);
  CHECK(kid.inclusion.b.mat() == Matrix::from_rows(fx.k->field(), {{1}, {1}}));  // [id; -id] over F_2
  auto k3 = make_truncated_poly(3, 1);
  auto one3 = free_module(k3, 1);
  KerCounit k3id = ker_counit_arrow(ModuleMorphism::identity(one3));
  CHECK(k3id.inclusion.b.mat() == Matrix::from_rows(k3->field(), {{1}, {-1}}));
  CHECK(ker_counit_arrow(ModuleMorphism::zero(fx.zero, fx.zero)).kernel.target().dim() == 0);
}

TEST_CASE("E-projective and E-injective objects") {
  Fixture fx;
  CHECK(is_E_projective(fx.id).has_value());
  CHECK(is_E_injective(fx.id).has_value());
  CHECK(is_E_injective(fx.onto).has_value());
  CHECK_FALSE(is_E_projective(fx.onto).has_value());
  auto a = make_truncated_poly(2, 2);
  auto k = jordan_module(a, {1});
  auto A = free_module(a, 1);
  CHECK_FALSE(is_E_projective(ModuleMorphism(k, A, Matrix::from_rows(a->field(), {{0}, {1}}))).has_value());
}

TEST_CASE("evaluation maps") {
  Fixture fx;
  // f = (k -> 0), g = (0 -> k): both evaluation targets vanish in degree 1.
  EvalMaps m1 = eval_ext_maps(fx.cat, fx.onto, fx.into, 1);
  CHECK(m1.dom_ext->dim() == 0);
  CHECK(m1.cod_ext->dim() == 0);
  CHECK(m1.arrow_ext->dim() == 1);
  // Degree 0 evaluation is injective and sends the identity square to (id, id).
  auto a = make_truncated_poly(2, 2);
  ArrowCategory cat(a);
  CorpusGenerator gen(a, 4, 8);
  for (int i = 0; i < 20; ++i) {
    ArrowObject f = gen.next_morphism(6), g = gen.next_morphism(6);
    EvalMaps m0 = eval_ext_maps(cat, f, g, 0);
    CHECK(rank(vstack(m0.to_dom, m0.to_cod)) == m0.arrow_ext->dim());
    auto evf = evaluate_dom(cat, *resolve_shared(cat.to_module(f), 2));
    CHECK_FALSE(evf.check().has_value());
    CHECK_FALSE(evaluate_cod(cat, *resolve_shared(cat.to_module(f), 2)).check().has_value());
  }
}
