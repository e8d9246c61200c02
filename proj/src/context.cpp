#include "csplit/context.hpp"

#include "csplit/errors.hpp"

namespace csplit {

// ---- arrow context ----

ModuleMorphism ArrowContext::counit(const ModuleRep& y) const {
  TriangularSplit split = cat_.from_module(y);
  ModuleMorphism eps = cat_.to_module_map(counit_arrow(split.arrow));
  return ModuleMorphism::trusted(eps.source(), y, split.basis * eps.mat());
}

ModuleMorphism ArrowContext::fg_map(const ModuleMorphism& phi) const {
  ArrowMorphism m = cat_.from_module_map(phi);
  ModuleRep src = cat_.to_module(fg_arrow(m.src));
  ModuleRep dst = cat_.to_module(fg_arrow(m.dst));
  return ModuleMorphism::trusted(src, dst, block_diag({m.a.mat(), m.a.mat(), m.b.mat()}));
}

std::vector<ModuleMorphism> ArrowContext::forget(const ModuleMorphism& phi) const {
  ArrowMorphism m = cat_.from_module_map(phi);
  return {m.a, m.b};
}

// ---- restriction context ----

RestrictionContext::RestrictionContext(std::vector<AlgebraEmbedding> embeddings) : emb_(std::move(embeddings)) {
  if (emb_.empty()) throw InvalidInput("restriction context needs at least one ring map");
  big_ = emb_.front().big;
  for (const auto& e : emb_) {
    if (e.big != big_) throw InvalidInput("restriction context: ring maps must share the target algebra");
    auto inv = inverse(e.right_structure);
    if (!inv) throw InvalidInput("restriction context: freeness witness is not invertible");
    right_inv_.push_back(*inv);
  }
}

ModuleRep RestrictionContext::restrict(const ModuleRep& y, std::size_t i) const {
  return restrict_scalars(y, emb_.at(i).sub, emb_.at(i).inclusion);
}

ModuleMorphism RestrictionContext::restrict(const ModuleMorphism& phi, std::size_t i) const {
  return ModuleMorphism::trusted(restrict(phi.source(), i), restrict(phi.target(), i), phi.mat());
}

ModuleRep RestrictionContext::induce(const ModuleRep& z, std::size_t i) const {
  const AlgebraEmbedding& e = emb_.at(i);
  if (z.algebra() != e.sub) throw InvalidInput("induce: module is not over the sub algebra");
  const PrimeField& f = z.field();
  const std::size_t r = e.rank(), ds = e.sub->dim(), dz = z.dim(), db = big_->dim();
  std::vector<Matrix> action;
  action.reserve(db);
  for (std::size_t a = 0; a < db; ++a) {
    Matrix ea(f, db, 1);
    ea(a, 0) = 1;
    Matrix act(f, r * dz, r * dz);
    for (std::size_t j = 0; j < r; ++j) {
      // a * b_j = sum_k b_k * s_kj
      Matrix s = right_inv_[i] * big_->multiply(ea, e.free_basis.column(j));
      for (std::size_t k = 0; k < r; ++k) act.set_block(k * dz, j * dz, z.act(s.block(k * ds, 0, ds, 1)));
    }
    action.push_back(std::move(act));
  }
  return ModuleRep::trusted(big_, r * dz, std::move(action));
}

ModuleMorphism RestrictionContext::induced_counit(const ModuleRep& y, std::size_t i) const {
  const AlgebraEmbedding& e = emb_.at(i);
  ModuleRep fgy = induce(restrict(y, i), i);
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < e.rank(); ++k) blocks.push_back(y.act(e.free_basis.column(k)));
  return ModuleMorphism::trusted(fgy, y, hstack(blocks));
}

ModuleMorphism RestrictionContext::counit(const ModuleRep& y) const {
  if (y.algebra() != big_) throw InvalidInput("counit: module is not over the context algebra");
  std::vector<ModuleRep> parts;
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < emb_.size(); ++i) {
    ModuleMorphism c = induced_counit(y, i);
    parts.push_back(c.source());
    blocks.push_back(c.mat());
  }
  return ModuleMorphism::trusted(direct_sum_of(parts), y, hstack(blocks));
}

ModuleMorphism RestrictionContext::fg_map(const ModuleMorphism& phi) const {
  std::vector<Matrix> blocks;
  for (const auto& e : emb_)
    for (std::size_t k = 0; k < e.rank(); ++k) blocks.push_back(phi.mat());
  return ModuleMorphism::trusted(counit(phi.source()).source(), counit(phi.target()).source(), block_diag(blocks));
}

std::vector<ModuleMorphism> RestrictionContext::forget(const ModuleMorphism& phi) const {
  std::vector<ModuleMorphism> out;
  for (std::size_t i = 0; i < emb_.size(); ++i) out.push_back(restrict(phi, i));
  return out;
}

RestrictionContext make_restriction_context(const AlgebraPtr& big, const std::vector<RingMapSpec>& maps) {
  std::vector<AlgebraEmbedding> emb;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (auto why = validate_embedding(maps[i].sub, big, maps[i].inclusion, maps[i].free_basis))
      throw InvalidInput("ring map " + std::to_string(i) + " (" + maps[i].sub->name() + " -> " + big->name() +
                         "): " + *why);
    emb.push_back(make_embedding(maps[i].sub, big, maps[i].inclusion, maps[i].free_basis));
  }
  return RestrictionContext(std::move(emb));
}

// ---- obstruction groups ----

ShaGroup sha_in(const SplittingContext& ctx, std::shared_ptr<const ExtGroup> ext) {
  const std::size_t n = ext->degree();
  ModuleMorphism eps = ctx.counit(ext->source());
  auto fg_ext = std::make_shared<const ExtGroup>(resolve_shared(eps.source(), n + 1), ext->target(), n);
  Matrix res = induced_ext_map(*ext, *fg_ext, eps, ModuleMorphism::identity(ext->target()));
  Subspace ker = kernel_basis(res);
  return {std::move(ext), fg_ext, res, ker};
}

ShaGroup sha_n(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x, std::size_t n) {
  return sha_in(ctx, std::make_shared<const ExtGroup>(resolve_shared(y, n + 1), x, n));
}

BarResolution bar_resolution(const SplittingContext& ctx, const ModuleRep& y, std::size_t length) {
  BarResolution bar;
  auto id = ModuleMorphism::identity(y);
  bar.u.push_back(y);
  bar.v.push_back(y);
  bar.counit.push_back(id);
  bar.inclusion.push_back(id);
  bar.boundary.push_back(id);
  for (std::size_t i = 1; i <= length; ++i) {
    ModuleMorphism eps = ctx.counit(bar.v[i - 1]);
    KernelResult k = kernel_module(eps);
    bar.u.push_back(eps.source());
    bar.v.push_back(k.module);
    bar.boundary.push_back(compose(bar.inclusion[i - 1], eps));
    bar.counit.push_back(eps);
    bar.inclusion.push_back(k.inclusion);
  }
  return bar;
}

std::optional<std::string> BarResolution::check() const {
  for (std::size_t i = 1; i <= length(); ++i) {
    if (auto why = ses_defect(inclusion[i], counit[i])) return "splice " + std::to_string(i) + ": " + *why;
    if (i >= 2 && !(boundary[i - 1].mat() * boundary[i].mat()).is_zero())
      return "boundaries " + std::to_string(i - 1) + " and " + std::to_string(i) + " do not compose to zero";
  }
  return std::nullopt;
}

namespace {

// Matrix of Hom(src, X) -> Hom(dst, X), phi -> phi o d, for d: dst -> src.
Matrix precompose_matrix(const HomSpace& from, const HomSpace& to, const ModuleMorphism& d) {
  Matrix out(from.source().field(), to.dim(), from.dim());
  for (std::size_t c = 0; c < from.dim(); ++c) out.set_block(0, c, to.coords(from.element(c).mat() * d.mat()));
  return out;
}

}  // namespace

RelativeExt relative_ext(const BarResolution& bar, const ModuleRep& x, std::size_t n) {
  if (bar.length() < n + 2) throw InvalidInput("relative_ext: bar resolution too short");
  // Cochain degree j lives on Hom(U_{j+1}, X).
  HomSpace here(bar.u[n + 1], x);
  HomSpace next(bar.u[n + 2], x);
  Subspace cycles = kernel_basis(precompose_matrix(here, next, bar.boundary[n + 2]));
  Subspace bounds = zero_subspace(x.field(), here.dim());
  if (n >= 1) {
    HomSpace prev(bar.u[n], x);
    bounds = image_basis(precompose_matrix(prev, here, bar.boundary[n + 1]));
  }
  return {n, here.dim(), make_subquotient(cycles, bounds)};
}

RelativeExt relative_ext(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x, std::size_t n) {
  return relative_ext(bar_resolution(ctx, y, n + 2), x, n);
}

namespace {

struct KernelRestriction {
  ModuleMorphism eps;
  KernelResult kernel;
  HomSpace hom_fg;
  HomSpace hom_k;
  Matrix restrict;  // Hom(FG Y, X) -> Hom(K, X)
};

KernelRestriction kernel_restriction(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x) {
  ModuleMorphism eps = ctx.counit(y);
  KernelResult k = kernel_module(eps);
  HomSpace hom_fg(eps.source(), x);
  HomSpace hom_k(k.module, x);
  Matrix r = precompose_matrix(hom_fg, hom_k, k.inclusion);
  return {eps, k, hom_fg, hom_k, r};
}

}  // namespace

HurewiczReport hurewicz_check(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x) {
  KernelRestriction kr = kernel_restriction(ctx, y, x);
  ShaGroup sha = sha_n(ctx, y, x, 1);
  Matrix delta = connecting_map_from_hom(kr.kernel.inclusion, kr.eps, kr.hom_k, *sha.ext);
  HurewiczReport rep;
  rep.cokernel_dim = kr.hom_k.dim() - rank(kr.restrict);
  rep.sha_dim = sha.dim();
  rep.connecting_rank = rank(delta);
  if (!(delta * kr.restrict).is_zero()) {
    rep.detail = "connecting map does not vanish on restrictions from FG Y";
  } else if (!(sha.restriction * delta).is_zero()) {
    rep.detail = "connecting map leaves the obstruction group";
  } else if (rep.connecting_rank != rep.cokernel_dim) {
    rep.detail = "connecting map is not injective on the cokernel";
  } else if (rep.cokernel_dim != rep.sha_dim) {
    rep.detail = "cokernel and obstruction group have different dimensions";
  } else {
    rep.holds = true;
    rep.detail = "ok";
  }
  return rep;
}

LiftingResult lifting_criterion(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x) {
  KernelRestriction kr = kernel_restriction(ctx, y, x);
  LiftingResult out;
  if (rank(kr.restrict) == kr.hom_k.dim()) {
    out.holds = true;
    return out;
  }
  Subspace img = image_basis(kr.restrict);
  for (std::size_t j = 0; j < kr.hom_k.dim(); ++j) {
    Matrix e(x.field(), kr.hom_k.dim(), 1);
    e(j, 0) = 1;
    if (!in_span(img, e)) {
      out.counterexample = kr.hom_k.element(j);
      break;
    }
  }
  return out;
}

ChangeOfRingsReport change_of_rings_check(const RestrictionContext& ctx, const ModuleRep& y, const ModuleRep& x,
                                          std::size_t n) {
  ChangeOfRingsReport rep;
  rep.holds = true;
  for (std::size_t i = 0; i < ctx.embeddings().size(); ++i) {
    ModuleRep ry = ctx.restrict(y, i);
    std::size_t lhs = ext_group(ctx.induce(ry, i), x, n).dim();
    std::size_t rhs = ext_group(ry, ctx.restrict(x, i), n).dim();
    rep.induced_dims.push_back(lhs);
    rep.restricted_dims.push_back(rhs);
    if (lhs != rhs) rep.holds = false;
  }
  return rep;
}

// ---- split detection ----

std::optional<std::string> exact_sequence_defect(const std::vector<ModuleMorphism>& maps) {
  if (maps.empty()) return "empty sequence";
  if (!is_mono(maps.front())) return "first map is not injective";
  if (!is_epi(maps.back())) return "last map is not surjective";
  for (std::size_t j = 0; j + 1 < maps.size(); ++j) {
    const auto& d0 = maps[j];
    const auto& d1 = maps[j + 1];
    const std::string at = "at term " + std::to_string(j + 1);
    if (!(d0.target() == d1.source())) return "maps do not chain " + at;
    if (!(d1.mat() * d0.mat()).is_zero()) return "composite is nonzero " + at;
    if (rank(d0.mat()) + rank(d1.mat()) != d1.source().dim()) return "not exact " + at;
  }
  return std::nullopt;
}

bool sequence_splits(const std::vector<ModuleMorphism>& maps) {
  for (std::size_t j = 1; j < maps.size(); ++j)
    if (!is_split_mono(kernel_module(maps[j]).inclusion)) return false;
  return true;
}

SplitDetection split_detection(const SplittingContext& ctx, const std::vector<ModuleMorphism>& maps) {
  if (auto why = exact_sequence_defect(maps)) throw InvalidInput("split_detection: " + *why);
  SplitDetection out;
  out.splits_in_c = sequence_splits(maps);
  std::vector<std::vector<ModuleMorphism>> comps;
  for (const auto& m : maps) {
    auto parts = ctx.forget(m);
    if (comps.empty()) comps.resize(parts.size());
    for (std::size_t c = 0; c < parts.size(); ++c) comps[c].push_back(parts[c]);
  }
  out.splits_after_g = true;
  for (const auto& seq : comps)
    if (!sequence_splits(seq)) out.splits_after_g = false;
  return out;
}

std::optional<std::string> fg_exactness_defect(const SplittingContext& ctx, const ModuleMorphism& i,
                                               const ModuleMorphism& p) {
  if (auto why = ses_defect(i, p)) throw InvalidInput("fg_exactness_defect: input is not exact: " + *why);
  ModuleMorphism fi = ctx.fg_map(i);
  ModuleMorphism fp = ctx.fg_map(p);
  if (!fi.is_intertwiner() || !fp.is_intertwiner()) return "FG of a map is not a module map";
  if (auto why = ses_defect(fi, fp)) return "FG of the sequence: " + *why;
  if (!(ctx.counit(i.target()).mat() * fi.mat() == i.mat() * ctx.counit(i.source()).mat()))
    return "counit is not natural on the first map";
  if (!(ctx.counit(p.target()).mat() * fp.mat() == p.mat() * ctx.counit(p.source()).mat()))
    return "counit is not natural on the second map";
  return std::nullopt;
}

bool lifts_against(const ModuleRep& p, const ModuleMorphism& e) {
  HomSpace to_b(p, e.source());
  HomSpace to_c(p, e.target());
  Matrix m(p.field(), to_c.dim(), to_b.dim());
  for (std::size_t c = 0; c < to_b.dim(); ++c) m.set_block(0, c, to_c.coords(e.mat() * to_b.element(c).mat()));
  return rank(m) == to_c.dim();
}

}  // namespace csplit
