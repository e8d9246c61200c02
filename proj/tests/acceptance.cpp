// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "csplit/context.hpp"
#include "csplit/corpus.hpp"
#include "csplit/errors.hpp"
#include "csplit/linalg.hpp"
#include "csplit/manifest.hpp"
#include "csplit/spectral.hpp"
#include "csplit/splitting.hpp"
#include "oracles.hpp"

using namespace csplit;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      note << "FIRST FAILURE: " << why << "; ";
    }
  }
};

ModuleRep trivial(const AlgebraPtr& a) {
  std::vector<Matrix> act(a->dim(), Matrix::identity(a->field(), 1));
  return ModuleRep(a, 1, act);
}

// 1. The shipped fixture is obstructed with a one-dimensional Sha^1 over F_2, F_3, F_5.
void intro_counterexample(Outcome& out) {
  Json src = Manifest::load(std::string(CSPLIT_FIXTURES) + "/intro_example.json").source();
  for (int p : {2, 3, 5}) {
    src["field"] = p;
    Manifest m = Manifest::parse(src);
    const SplitDiagram& d = m.diagram("intro_example");
    SplitDecision dec = decide_compatible_split(d);
    out.require(!dec.splits(), "intro diagram split over F_" + std::to_string(p));
    out.require(!dec.obstruction.coords.is_zero(), "zero obstruction over F_" + std::to_string(p));
    out.require(dec.sha_dim == 1, "dim Sha^1 = " + std::to_string(dec.sha_dim) + " over F_" + std::to_string(p));
    if (p <= 3) {
      OracleResult o = brute_force_oracle(d);
      out.require(o.verdict == OracleResult::Verdict::kNone, "oracle found a splitting over F_" + std::to_string(p));
    }
  }
  out.note << "obstructed with dim Sha^1 = 1 over F_2, F_3, F_5";
}

// 2. Decider and brute-force oracle agree; certificates re-verify.
void oracle_equivalence(Outcome& out) {
  const std::size_t target = 1000;
  for (auto a : {make_truncated_poly(2, 2), make_cyclic_group_algebra(2, 4)}) {
    CorpusGenerator gen(a, 6, 2024);
    std::size_t compared = 0, refused = 0, split = 0, max_space = 0;
    while (compared < target) {
      SplitDiagram d = random_split_diagram(gen, 6);
      out.require(d.total_dim() <= 6, "diagram over budget");
      out.require(!diagram_defect(d).has_value(), "generator produced an invalid diagram");
      OracleResult o = brute_force_oracle(d, 16);
      if (o.verdict == OracleResult::Verdict::kRefused) {
        ++refused;
        out.require(refused < 10 * target, "oracle refuses almost everything");
        if (!out.pass) return;
        continue;
      }
      ++compared;
      max_space = std::max(max_space, o.space_dim);
      SplitDecision dec = decide_compatible_split(d);
      out.require(dec.splits() == (o.verdict == OracleResult::Verdict::kExists),
                  "decider and oracle disagree on case " + std::to_string(compared) + " over " + a->name());
      if (dec.splits()) {
        ++split;
        const auto& c = *dec.certificate;
        out.require(!c.defect(d).has_value(), "certificate fails replay over " + a->name());
        out.require(d.f.mat() * c.r_top.mat() == c.r_bot.mat() * d.g.mat() &&
                        d.g.mat() * c.s_top.mat() == c.s_bot.mat() * d.h.mat() &&
                        c.r_top.mat() * d.i_top.mat() == Matrix::identity(a->field(), d.f.source().dim()) &&
                        d.p_bot.mat() * c.s_bot.mat() == Matrix::identity(a->field(), d.h.target().dim()),
                    "certificate identities fail over " + a->name());
      }
    }
    out.note << a->name() << ": " << compared << " compared (" << split << " split, " << compared - split
             << " obstructed, " << refused << " over oracle budget, max space dim " << max_space << "); ";
  }
}

// 3. dim sha1_cokernel = dim sha_n = dim relative_ext in degree 1.
void sha_three_ways(Outcome& out) {
  std::size_t arrow_pairs = 0, nonzero = 0;
  for (auto a : {make_truncated_poly(2, 2), make_cyclic_group_algebra(2, 4), make_truncated_poly(3, 2)}) {
    ArrowContext ctx(a);
    CorpusGenerator gen(a, 6, 99);
    for (int i = 0; i < 200; ++i) {
      ModuleMorphism h = gen.next_morphism(6), f = gen.next_morphism(6);
      std::size_t c = sha1_cokernel(h, f).dim();
      std::size_t s = sha_n(ctx, ctx.object(h), ctx.object(f), 1).dim();
      std::size_t r = relative_ext(ctx, ctx.object(h), ctx.object(f), 1).dim();
      out.require(c == s && s == r, "arrow pair " + std::to_string(i) + " over " + a->name() + ": " +
                                        std::to_string(c) + "/" + std::to_string(s) + "/" + std::to_string(r));
      ++arrow_pairs;
      if (s) ++nonzero;
    }
  }
  std::size_t restr_pairs = 0, restr_nonzero = 0;
  std::vector<RestrictionContext> contexts{RestrictionContext({cyclic_subgroup_embedding(2, 4, 2)}),
                                           RestrictionContext({cyclic_subgroup_embedding(3, 3, 1)})};
  for (const auto& ctx : contexts) {
    CorpusGenerator gen(ctx.algebra(), 4, 5);
    for (int i = 0; i < 150; ++i) {
      ModuleRep y = gen.next_module_in(0, 4), x = gen.next_module_in(0, 4);
      std::size_t s = sha_n(ctx, y, x, 1).dim();
      std::size_t r = relative_ext(ctx, y, x, 1).dim();
      HurewiczReport hr = hurewicz_check(ctx, y, x);
      out.require(hr.holds && hr.cokernel_dim == s && s == r,
                  "restriction pair " + std::to_string(i) + ": " + std::to_string(hr.cokernel_dim) + "/" +
                      std::to_string(s) + "/" + std::to_string(r));
      ++restr_pairs;
      if (s) ++restr_nonzero;
    }
  }
  out.require(arrow_pairs >= 200 && restr_pairs >= 50, "too few pairs");
  out.note << arrow_pairs << " arrow pairs (" << nonzero << " with Sha^1 != 0), " << restr_pairs
           << " restriction pairs (" << restr_nonzero << " nonzero; third method is the Hurewicz cokernel)";
}

// All morphisms between modules with dim source + dim target <= max_total.
std::vector<ModuleMorphism> all_morphisms(const AlgebraPtr& a, std::size_t max_total) {
  std::vector<ModuleMorphism> out;
  auto mods = truncated_poly_modules(a, max_total);
  for (const auto& m : mods)
    for (const auto& n : mods) {
      if (m.dim() + n.dim() > max_total) continue;
      HomSpace hom(m, n);
      const int p = static_cast<int>(a->field().p());
      oracle::for_each_matrix(hom.dim(), 1, p, [&](const oracle::Mat& c) {
        Matrix coords(a->field(), hom.dim(), 1);
        for (std::size_t i = 0; i < hom.dim(); ++i) coords(i, 0) = static_cast<PrimeField::Elem>(c[i][0]);
        out.push_back(hom.combine(coords));
      });
    }
  return out;
}

// 4. Split monic h kills Sha^1(h, -); otherwise some f witnesses Sha^1(h, f) != 0. Dually for f.
void split_criteria(Outcome& out) {
  for (auto a : {make_truncated_poly(2, 1), make_truncated_poly(2, 2)}) {
    std::vector<ModuleMorphism> family = all_morphisms(a, 4);
    std::size_t split_monos = 0, split_epis = 0, pairs = 0;
    for (const auto& h : family) {
      bool mono = is_split_mono(h).has_value();
      out.require(mono == oracle::has_retraction(h), "is_split_mono disagrees with enumeration");
      bool witnessed = false;
      for (const auto& f : family) {
        if (mono || !witnessed) {
          std::size_t d = sha1_cokernel(h, f).dim();
          ++pairs;
          if (mono) out.require(d == 0, "split monic h with Sha^1(h, f) != 0 over " + a->name());
          if (d) witnessed = true;
        }
      }
      if (mono) ++split_monos;
      else out.require(witnessed, "no witness f for a non-split-monic h over " + a->name());
    }
    for (const auto& f : family) {
      bool epi = is_split_epi(f).has_value();
      out.require(epi == oracle::has_section(f), "is_split_epi disagrees with enumeration");
      bool witnessed = false;
      for (const auto& h : family) {
        if (epi || !witnessed) {
          std::size_t d = sha1_cokernel(h, f).dim();
          ++pairs;
          if (epi) out.require(d == 0, "split epic f with Sha^1(h, f) != 0 over " + a->name());
          if (d) witnessed = true;
        }
      }
      if (epi) ++split_epis;
      else out.require(witnessed, "no witness h for a non-split-epic f over " + a->name());
    }
    // Larger h and f from the corpus, tested against the exhaustive family and the
    // canonical witnesses (0 -> source h) and (target f -> 0).
    CorpusGenerator gen(a, 4, 404);
    std::size_t sampled = 0;
    for (int i = 0; i < 150; ++i) {
      ModuleMorphism h = gen.next_morphism(8), f = gen.next_morphism(8);
      ModuleRep zero = ModuleRep::zero(a);
      bool mono = is_split_mono(h).has_value(), epi = is_split_epi(f).has_value();
      std::size_t wh = sha1_cokernel(h, ModuleMorphism::zero(zero, h.source())).dim();
      std::size_t wf = sha1_cokernel(ModuleMorphism::zero(f.target(), zero), f).dim();
      out.require(mono == (wh == 0), "sampled h: split monic iff Sha^1(h, 0 -> source) = 0 fails");
      out.require(epi == (wf == 0), "sampled f: split epic iff Sha^1(target -> 0, f) = 0 fails");
      for (const auto& g : family) {
        if (mono) out.require(sha1_cokernel(h, g).dim() == 0, "sampled split monic h with Sha^1 != 0");
        if (epi) out.require(sha1_cokernel(g, f).dim() == 0, "sampled split epic f with Sha^1 != 0");
      }
      sampled += 2;
    }
    out.note << a->name() << ": " << family.size() << " morphisms (" << split_monos << " split monic, " << split_epis
             << " split epic), " << pairs << " exhaustive pairs, " << sampled << " sampled larger morphisms; ";
  }
}

// 5. Relative Ext vanishes in degrees 2 and 3 in the arrow context.
void hereditary_vanishing(Outcome& out) {
  std::size_t pairs = 0, degree_one = 0;
  for (auto a : {make_truncated_poly(2, 2), make_cyclic_group_algebra(2, 4), make_truncated_poly(3, 2)}) {
    ArrowContext ctx(a);
    CorpusGenerator gen(a, 6, 55);
    for (int i = 0; i < 150; ++i) {
      ModuleRep y = ctx.object(gen.next_morphism(6)), x = ctx.object(gen.next_morphism(6));
      BarResolution bar = bar_resolution(ctx, y, 5);
      out.require(!bar.check().has_value(), "bar resolution not exact");
      for (std::size_t n : {2u, 3u})
        out.require(relative_ext(bar, x, n).dim() == 0,
                    "relative Ext^" + std::to_string(n) + " != 0 over " + a->name());
      if (relative_ext(bar, x, 1).dim()) ++degree_one;
      ++pairs;
    }
  }
  out.note << pairs << " pairs, all zero in degrees 2 and 3 (" << degree_one << " nonzero in degree 1)";
}

// 6. Six-term sequence exact at t = 1; its Sha^2 matches sha_n.
void duality(Outcome& out) {
  auto a = make_truncated_poly(2, 2);
  ArrowContext ctx(a);
  CorpusGenerator gen(a, 6, 66);
  std::size_t pairs = 0, sha2 = 0;
  for (int i = 0; i < 300; ++i) {
    ModuleMorphism f = gen.next_morphism(6), g = gen.next_morphism(6);
    DualityReport r = duality_sequence(ctx, f, g, 1);
    out.require(r.holds(), "pair " + std::to_string(i) + ": " + r.describe());
    std::size_t independent = sha_n(ctx, ctx.object(f), ctx.object(g), 2).dim();
    out.require(r.dims[5] == independent && r.sha_next_from_sequence == independent,
                "Sha^2 mismatch on pair " + std::to_string(i));
    if (independent) ++sha2;
    ++pairs;
  }
  out.note << pairs << " pairs over F_2[x]/x^2 exact at all five nodes (" << sha2 << " with Sha^2 != 0)";
}

// 7. Spectral sequence with bounds (3, 2): collapse, E_2 identifications, invertible corner d_2.
void spectral(Outcome& out) {
  std::size_t pairs = 0, nontrivial_d2 = 0, interior = 0;
  for (auto a : {make_truncated_poly(2, 2), make_truncated_poly(3, 2)}) {
    ArrowContext ctx(a);
    CorpusGenerator gen(a, 6, 77);
    for (int i = 0; i < 30; ++i) {
      ModuleRep y = ctx.object(gen.next_morphism(6)), x = ctx.object(gen.next_morphism(6));
      SplittingSpectralSequence ss(ctx, y, x, 3, 2);
      out.require(ss.row_cohomology_vanishes() && ss.d1_squares_to_zero(), "double complex check failed");
      E2Report e2 = e2_page(ss);
      for (bool m : e2.sha_match) out.require(m, "E_2^{0,t} != Sha^t " + e2.detail);
      out.require(e2.column1_zero, "E_2^{1,t} != 0");
      out.require(e2.bottom_zero, "E_2^{0,0} or E_2^{1,0} != 0");
      CollapseReport c = verify_collapse(ss);
      out.require(c.holds, "nonzero interior E_infinity");
      for (const auto& v : c.interior)
        out.require(v.state == PositionVerdict::State::kZero,
                    "interior (" + std::to_string(v.s) + "," + std::to_string(v.t) + ") not verified zero");
      interior += c.interior.size();
      Matrix d = double_complex_d2(ctx, y, x, 0, 1, 3, 2);
      out.require(d.rows() == d.cols() && rank(d) == d.rows(), "d_2 at (0,1) not invertible");
      if (d.rows()) ++nontrivial_d2;
      ++pairs;
    }
  }
  out.note << pairs << " pairs, " << interior << " interior positions all zero, " << nontrivial_d2
           << " with a nonzero invertible d_2 at (0,1)";
}

// 8. Change of rings along F_2[C_2] in F_2[C_4]; the non-exact induction is rejected.
void change_of_rings(Outcome& out) {
  RestrictionContext ctx({cyclic_subgroup_embedding(2, 4, 2)});
  ModuleRep k = trivial(ctx.algebra());
  for (std::size_t n = 0; n <= 3; ++n) {
    ChangeOfRingsReport r = change_of_rings_check(ctx, k, k, n);
    out.require(r.holds && r.induced_dims == std::vector<std::size_t>{1} &&
                    r.restricted_dims == std::vector<std::size_t>{1},
                "degree " + std::to_string(n) + " dims differ from 1");
  }
  auto kf = make_truncated_poly(2, 1);
  auto kx = make_truncated_poly(2, 2);
  bool rejected = false;
  std::string why;
  try {
    make_restriction_context(kf, {{kx, Matrix::from_rows(kf->field(), {{1, 0}}), Matrix::identity(kf->field(), 1)}});
  } catch (const InvalidInput& e) {
    rejected = true;
    why = e.what();
  }
  out.require(rejected, "k[x]/x^2 -> k accepted as a restriction context");
  out.note << "Ext^n dims 1 = 1 for n = 0..3; negative control rejected (" << why << ")";
}

// 9. Sha^1(k, k) for C_2 in C_4 against enumeration of all two-dimensional extensions.
void restriction_sha(Outcome& out) {
  RestrictionContext ctx({cyclic_subgroup_embedding(2, 4, 2)});
  ModuleRep k = trivial(ctx.algebra());
  std::size_t sha = sha_n(ctx, k, k, 1).dim();

  // E = F_2^2 with k = span(e_1) a submodule and trivial quotient: the generator t acts by
  // T with T e_1 = e_1, T e_2 = e_2 + c e_1 and T^4 = 1. Equivalences are the maps
  // [[1, a], [0, 1]]; a class restricts split to C_2 when T^2 fixes some (x, 1).
  const int p = 2;
  std::set<std::uint64_t> classes, split_classes;
  std::size_t extensions = 0;
  oracle::for_each_matrix(2, 2, p, [&](const oracle::Mat& t) {
    if (t[0][0] != 1 || t[1][0] != 0 || t[1][1] != 1) return;
    oracle::Mat t2 = oracle::mul(t, t, 2, 2, p), t4 = oracle::mul(t2, t2, 2, 2, p);
    if (t4 != oracle::identity(2)) return;
    ++extensions;
    // Canonical representative of the class: the smallest conjugate.
    std::uint64_t best = ~0ULL;
    oracle::for_each_matrix(1, 1, p, [&](const oracle::Mat& s) {
      oracle::Mat g{{1, s[0][0]}, {0, 1}}, gi{{1, (p - s[0][0]) % p}, {0, 1}};
      best = std::min(best, oracle::encode(oracle::mul(oracle::mul(g, t, 2, 2, p), gi, 2, 2, p), p));
    });
    classes.insert(best);
    bool restricts_split = false;
    for (int x = 0; x < p; ++x) {
      oracle::Mat v{{x}, {1}};
      if (oracle::mul(t2, v, 2, 1, p) == v) restricts_split = true;
    }
    if (restricts_split) split_classes.insert(best);
  });
  std::size_t brute = oracle::log_p(split_classes.size(), p);
  out.require(sha == 1, "dim Sha^1 = " + std::to_string(sha));
  out.require(brute == sha, "enumeration gives dim " + std::to_string(brute));
  out.require(oracle::log_p(classes.size(), p) == 1, "Ext^1 enumeration not one-dimensional");
  out.note << "dim Sha^1 = " << sha << "; " << extensions << " extensions, " << classes.size() << " classes, "
           << split_classes.size() << " split over C_2";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0 means no runtime bound
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "intro counterexample", 1.0, intro_counterexample},
      {2, "oracle equivalence", 300.0, oracle_equivalence},
      {3, "Sha^1 three-way agreement", 0, sha_three_ways},
      {4, "split monic / split epic criteria", 0, split_criteria},
      {5, "hereditary vanishing", 0, hereditary_vanishing},
      {6, "duality sequence", 0, duality},
      {7, "spectral sequence collapse", 600.0, spectral},
      {8, "change of rings", 0, change_of_rings},
      {9, "restriction-context Sha", 0, restriction_sha},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0) out.require(secs < c.limit_seconds, "runtime over limit");
    if (!out.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.3f s", out.pass ? "PASS" : "FAIL", c.id, c.name, out.note.str().c_str(), secs);
    if (c.limit_seconds > 0) std::printf(", limit %.0f s", c.limit_seconds);
    std::printf(")\n");
  }
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
