#include <doctest.h>

#include <set>

#include "csplit/corpus.hpp"
#include "csplit/errors.hpp"
#include "csplit/homology.hpp"
#include "csplit/linalg.hpp"
#include "oracles.hpp"

using namespace csplit;

namespace {

// dim Ext^1_{F_p[x]/x^n}(M, N): extensions have x acting by [[x_N, c], [0, x_M]] with
// (x_E)^n = 0; count such c and divide by the c of the form x_N phi - phi x_M.
std::size_t ext1_by_extensions(const ModuleRep& m, const ModuleRep& n) {
  const int p = static_cast<int>(m.field().p());
  const std::size_t nilp = m.algebra()->dim();
  const std::size_t dm = m.dim(), dn = n.dim(), de = dm + dn;
  oracle::Mat xm = oracle::to_mat(m.action(1)), xn = oracle::to_mat(n.action(1));
  std::size_t cocycles = 0;
  oracle::for_each_matrix(dn, dm, p, [&](const oracle::Mat& c) {
    oracle::Mat x = oracle::zeros(de, de);
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dn; ++j) x[i][j] = xn[i][j];
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dm; ++j) x[dn + i][dn + j] = xm[i][j];
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dm; ++j) x[i][dn + j] = c[i][j];
    oracle::Mat power = oracle::identity(de);
    for (std::size_t k = 0; k < nilp; ++k) power = oracle::mul(power, x, de, de, p);
    if (power == oracle::zeros(de, de)) ++cocycles;
  });
  std::set<std::uint64_t> boundaries;
  oracle::for_each_matrix(dn, dm, p, [&](const oracle::Mat& phi) {
    oracle::Mat a = oracle::mul(xn, phi, dn, dm, p), b = oracle::mul(phi, xm, dm, dm, p);
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dm; ++j) a[i][j] = (a[i][j] - b[i][j] + p) % p;
    boundaries.insert(oracle::encode(a, p));
  });
  return oracle::log_p(cocycles / boundaries.size(), p);
}

}  // namespace

TEST_CASE("resolutions are exact") {
  auto a = make_truncated_poly(2, 2);
  auto A = free_module(a, 1);
  auto free_res = resolve(A, 3);
  CHECK(free_res.rank(0) == 1);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(free_res.rank(i) == 0);
  auto k = jordan_module(a, {1});
  auto res = resolve(k, 3);
  CHECK_FALSE(res.check().has_value());
  CHECK(res.ranks() == std::vector<std::size_t>{1, 1, 1, 1});
  auto zero = resolve(ModuleRep::zero(a), 3);
  for (std::size_t i = 0; i <= 3; ++i) CHECK(zero.rank(i) == 0);

  CorpusGenerator gen(make_cyclic_group_algebra(3, 3), 5, 2);
  for (int i = 0; i < 20; ++i) CHECK_FALSE(resolve(gen.next_module(), 3).check().has_value());
}

TEST_CASE("Ext over F_2[x]/x^2") {
  auto a = make_truncated_poly(2, 2);
  auto k = jordan_module(a, {1});
  auto res = resolve_shared(k, 4);
  for (std::size_t n = 0; n <= 3; ++n) CHECK(ExtGroup(res, k, n).dim() == 1);
  auto A = free_module(a, 1);
  auto ares = resolve_shared(A, 3);
  for (std::size_t n = 1; n <= 2; ++n) CHECK(ExtGroup(ares, k, n).dim() == 0);
  CHECK(ext_group(k, k, 1).dim() == ext1_by_extensions(k, k));
  auto field = make_truncated_poly(2, 1);
  auto kk = free_module(field, 1);
  CHECK(ext_group(kk, kk, 1).dim() == 0);
}

TEST_CASE("Ext^1 against extension counting on small modules") {
  for (auto a : {make_truncated_poly(2, 2), make_truncated_poly(2, 3), make_truncated_poly(3, 2)}) {
    auto mods = truncated_poly_modules(a, 3);
    for (const auto& m : mods)
      for (const auto& n : mods) {
        if (m.dim() * n.dim() > 6) continue;
        CHECK(ext_group(m, n, 1).dim() == ext1_by_extensions(m, n));
      }
  }
}

TEST_CASE("Hom dimensions against enumeration") {
  auto a = make_truncated_poly(2, 3);
  auto mods = truncated_poly_modules(a, 3);
  for (const auto& m : mods)
    for (const auto& n : mods) {
      std::size_t count = oracle::all_homs(m, n).size();
      CHECK(HomSpace(m, n).dim() == oracle::log_p(count, 2));
      CHECK(ext_group(m, n, 0).dim() == HomSpace(m, n).dim());
    }
}

TEST_CASE("chain map lifts and induced maps") {
  auto a = make_truncated_poly(2, 2);
  CorpusGenerator gen(a, 4, 9);
  for (int i = 0; i < 20; ++i) {
    ModuleMorphism f = gen.next_morphism(6);
    auto rs = resolve(f.source(), 3), rt = resolve(f.target(), 3);
    ChainMap lift = lift_chain_map(f, rs, rt, 3);
    // Augmentation square and every higher square commute.
    const Matrix& top = rt.differential(0);
    CHECK(top * free_map_matrix(*a, lift[0]) == f.mat() * rs.differential(0));
    for (std::size_t j = 1; j <= 3; ++j)
      CHECK(rt.differential(j) * free_map_matrix(*a, lift[j]) ==
            free_map_matrix(*a, lift[j - 1]) * rs.differential(j));
    auto id_src = ModuleMorphism::identity(f.source());
    for (std::size_t n = 0; n <= 2; ++n) {
      Matrix id_map = induced_ext_map(id_src, id_src, n);
      CHECK(id_map.is_identity());
    }
  }
}

TEST_CASE("Yoneda classes") {
  auto a = make_truncated_poly(2, 2);
  auto k = jordan_module(a, {1});
  auto A = free_module(a, 1);
  ModuleMorphism i(k, A, Matrix::from_rows(a->field(), {{0}, {1}}));
  ModuleMorphism p(A, k, Matrix::from_rows(a->field(), {{1, 0}}));
  ExtClass c = yoneda_class_of_ses(i, p);
  CHECK_FALSE(c.is_zero());
  CHECK(c.parent->dim() == 1);
  auto ds = direct_sum(k, k);
  CHECK(yoneda_class_of_ses(ds.inject_first, ds.project_second).is_zero());
  auto zero = ModuleRep::zero(a);
  CHECK(yoneda_class_of_ses(ModuleMorphism::zero(zero, k), ModuleMorphism::identity(k)).is_zero());
  CHECK_THROWS_AS(yoneda_class_of_ses(i, ModuleMorphism::zero(A, k)), InvalidInput);
}

TEST_CASE("induced map along a split epi is injective on Ext^1") {
  auto a = make_truncated_poly(2, 2);
  CorpusGenerator gen(a, 4, 13);
  for (int i = 0; i < 15; ++i) {
    ModuleRep m = gen.next_module(), n = gen.next_module();
    auto ds = direct_sum(m, n);
    // Ext^1(M, N) -> Ext^1(M (+) N, N) along the projection M (+) N -> M.
    Matrix e = induced_ext_map(ds.project_first, ModuleMorphism::identity(n), 1);
    CHECK(rank(e) == e.cols());
  }
}
