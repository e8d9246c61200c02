#include "csplit/homology.hpp"

#include "csplit/errors.hpp"

namespace csplit {

Matrix map_from_free(const ModuleRep& target, const Matrix& gen_images) {
  const std::size_t d = target.algebra()->dim(), r = gen_images.cols();
  if (gen_images.rows() != target.dim()) throw InvariantViolation("map_from_free: image rows != target dim");
  Matrix full(target.field(), target.dim(), r * d);
  for (std::size_t b = 0; b < d; ++b) {
    Matrix moved = target.action(b) * gen_images;
    for (std::size_t g = 0; g < r; ++g)
      for (std::size_t row = 0; row < target.dim(); ++row) full(row, g * d + b) = moved(row, g);
  }
  return full;
}

Matrix free_map_matrix(const Algebra& a, const Matrix& gen_images) {
  const std::size_t d = a.dim(), r = gen_images.cols();
  if (gen_images.rows() % d != 0) throw InvariantViolation("free_map_matrix: rows not a multiple of dim A");
  const std::size_t s = gen_images.rows() / d;
  const PrimeField& f = a.field();
  Matrix full(f, s * d, r * d);
  for (std::size_t g = 0; g < r; ++g)
    for (std::size_t t = 0; t < s; ++t)
      for (std::size_t j = 0; j < d; ++j) {
        const auto v = gen_images(t * d + j, g);
        if (v == 0) continue;
        // e_b * (v e_j) = v * sum_k c[b][j][k] e_k
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t k = 0; k < d; ++k) {
            const auto c = a.constant(b, j, k);
            if (c != 0) full(t * d + k, g * d + b) = f.add(full(t * d + k, g * d + b), f.mul(v, c));
          }
      }
  return full;
}

Matrix cover_generators(const ModuleRep& m) {
  const Matrix& ideal = m.algebra()->nilpotent_ideal();
  std::vector<Matrix> moved;
  for (std::size_t c = 0; c < ideal.cols(); ++c) moved.push_back(m.act(ideal.column(c)));
  Subspace im = moved.empty() ? zero_subspace(m.field(), m.dim()) : span_of(hstack(moved));
  return quotient(m.dim(), im).rep_basis;
}

FreeResolution::FreeResolution(ModuleRep module, std::vector<Matrix> images)
    : module_(std::move(module)), images_(std::move(images)) {
  if (images_.empty()) throw InvariantViolation("FreeResolution: no degrees");
  const std::size_t d = algebra()->dim();
  full_.push_back(map_from_free(module_, images_[0]));
  for (std::size_t i = 1; i < images_.size(); ++i) {
    if (images_[i].rows() != d * images_[i - 1].cols())
      throw InvariantViolation("FreeResolution: differential " + std::to_string(i) + " has the wrong shape");
    full_.push_back(free_map_matrix(*algebra(), images_[i]));
  }
}

std::vector<std::size_t> FreeResolution::ranks() const {
  std::vector<std::size_t> out;
  for (const auto& m : images_) out.push_back(m.cols());
  return out;
}

ModuleRep FreeResolution::free_module(std::size_t i) const { return ::csplit::free_module(algebra(), rank(i)); }

std::optional<std::string> FreeResolution::check() const {
  if (::csplit::rank(full_[0]) != module_.dim()) return std::string("augmentation is not surjective");
  for (std::size_t i = 1; i < full_.size(); ++i) {
    if (!(full_[i - 1] * full_[i]).is_zero()) return "d o d != 0 at degree " + std::to_string(i);
    const std::size_t ker = free_dim(i - 1) - ::csplit::rank(full_[i - 1]);
    if (ker != ::csplit::rank(full_[i])) return "not exact at degree " + std::to_string(i - 1);
  }
  return std::nullopt;
}

FreeResolution resolve(const ModuleRep& m, std::size_t length) {
  const AlgebraPtr& a = m.algebra();
  const std::size_t d = a->dim();
  std::vector<Matrix> images;
  images.push_back(cover_generators(m));
  Matrix prev = map_from_free(m, images[0]);
  for (std::size_t i = 1; i <= length; ++i) {
    const std::size_t prev_rank = images.back().cols();
    Subspace k = kernel_basis(prev);
    Matrix img(m.field(), d * prev_rank, 0);
    if (k.dim() > 0) {
      auto sub = submodule(free_module(a, prev_rank), k.basis);
      img = k.basis * cover_generators(sub.module);
    }
    prev = free_map_matrix(*a, img);
    images.push_back(std::move(img));
  }
  return FreeResolution(m, std::move(images));
}

ResolutionPtr resolve_shared(const ModuleRep& m, std::size_t length) {
  return std::make_shared<const FreeResolution>(resolve(m, length));
}

Matrix cochain_from_images(const Matrix& images) {
  return images.transpose().reshaped(images.rows() * images.cols(), 1);
}

Matrix images_from_cochain(const Matrix& cochain, std::size_t target_dim, std::size_t rank) {
  if (cochain.rows() != target_dim * rank || cochain.cols() != 1)
    throw InvariantViolation("images_from_cochain: shape mismatch");
  return cochain.reshaped(rank, target_dim).transpose();
}

Matrix cochain_pullback(const ModuleRep& n, const Matrix& gen_images, std::size_t source_rank) {
  const std::size_t d = n.algebra()->dim(), nd = n.dim(), rp = gen_images.cols();
  if (gen_images.rows() != d * source_rank) throw InvariantViolation("cochain_pullback: shape mismatch");
  const PrimeField& f = n.field();
  Matrix out(f, nd * rp, nd * source_rank);
  for (std::size_t h = 0; h < rp; ++h)
    for (std::size_t g = 0; g < source_rank; ++g)
      for (std::size_t b = 0; b < d; ++b) {
        const auto alpha = gen_images(g * d + b, h);
        if (alpha == 0) continue;
        const Matrix& act = n.action(b);
        for (std::size_t i = 0; i < nd; ++i)
          for (std::size_t j = 0; j < nd; ++j) {
            const auto v = act(i, j);
            if (v != 0) out(h * nd + i, g * nd + j) = f.add(out(h * nd + i, g * nd + j), f.mul(alpha, v));
          }
      }
  return out;
}

Matrix cochain_postcompose(const Matrix& g, std::size_t rank) {
  Matrix out(g.field(), g.rows() * rank, g.cols() * rank);
  for (std::size_t r = 0; r < rank; ++r) out.set_block(r * g.rows(), r * g.cols(), g);
  return out;
}

namespace {

Subquotient ext_presentation(const FreeResolution& res, const ModuleRep& n, std::size_t deg, const Matrix& delta) {
  Subspace z = kernel_basis(delta);
  Subspace b = deg == 0 ? zero_subspace(n.field(), z.ambient_dim)
                        : image_basis(cochain_pullback(n, res.generator_images(deg), res.rank(deg - 1)));
  return make_subquotient(z, b);
}

Matrix ext_delta(const FreeResolution& res, const ModuleRep& n, std::size_t deg) {
  if (res.length() < deg + 1)
    throw InvariantViolation("ExtGroup: resolution of length " + std::to_string(res.length()) +
                             " is too short for degree " + std::to_string(deg));
  return cochain_pullback(n, res.generator_images(deg + 1), res.rank(deg));
}

}  // namespace

ExtGroup::ExtGroup(ResolutionPtr res, ModuleRep target, std::size_t degree)
    : res_(std::move(res)),
      target_(std::move(target)),
      degree_(degree),
      delta_(ext_delta(*res_, target_, degree_)),
      sq_(ext_presentation(*res_, target_, degree_, delta_)) {
  require_same_algebra(res_->module(), target_, "ext");
}

bool ExtGroup::is_cocycle(const Matrix& cochain) const { return (delta_ * cochain).is_zero(); }

Matrix ExtGroup::class_of(const Matrix& cochain) const {
  if (cochain.rows() != cochain_dim()) throw InvariantViolation("ExtGroup::class_of: wrong cochain size");
  if (!is_cocycle(cochain)) throw InvariantViolation("ExtGroup::class_of: not a cocycle");
  return sq_.project * cochain;
}

ExtGroup ext_group(const ModuleRep& m, const ModuleRep& n, std::size_t degree) {
  return ExtGroup(resolve_shared(m, degree + 1), n, degree);
}

ChainMap lift_along(const Matrix& start, const FreeResolution& src, std::size_t offset, const FreeResolution& tgt,
                    std::size_t depth) {
  if (src.length() < offset + depth || tgt.length() < depth) throw InvariantViolation("lift: resolutions too short");
  if (src.algebra() != tgt.algebra()) throw InvariantViolation("lift: different algebras");
  const Algebra& a = *tgt.algebra();
  ChainMap out;
  auto first = solve(tgt.differential(0), start);
  if (!first) throw InvariantViolation("lift: degree 0 does not factor through the augmentation");
  out.push_back(std::move(*first));
  for (std::size_t j = 1; j <= depth; ++j) {
    Matrix y = free_map_matrix(a, out.back()) * src.generator_images(offset + j);
    auto x = solve(tgt.differential(j), y);
    if (!x) throw InvariantViolation("lift: degree " + std::to_string(j) + " does not factor (resolution not exact)");
    out.push_back(std::move(*x));
  }
  return out;
}

ChainMap lift_chain_map(const ModuleMorphism& f, const FreeResolution& src, const FreeResolution& tgt,
                        std::size_t depth) {
  if (!(f.source() == src.module()) || !(f.target() == tgt.module()))
    throw InvariantViolation("lift_chain_map: resolutions do not match the morphism");
  return lift_along(f.mat() * src.generator_images(0), src, 0, tgt, depth);
}

Matrix induced_ext_map(const ExtGroup& from, const ExtGroup& to, const ModuleMorphism& f, const ModuleMorphism& g) {
  const std::size_t n = from.degree();
  if (to.degree() != n) throw InvariantViolation("induced_ext_map: degree mismatch");
  if (!(f.source() == to.source()) || !(f.target() == from.source()) || !(g.source() == from.target()) ||
      !(g.target() == to.target()))
    throw InvariantViolation("induced_ext_map: morphisms do not match the groups");
  ChainMap chain = lift_chain_map(f, *to.resolution(), *from.resolution(), n);
  Matrix pull = cochain_pullback(from.target(), chain[n], from.resolution()->rank(n));
  Matrix total = cochain_postcompose(g.mat(), to.resolution()->rank(n)) * pull;
  if (!(to.presentation().project * (total * from.coboundaries().basis)).is_zero())
    throw InvariantViolation("induced_ext_map: coboundaries not sent to coboundaries");
  return to.class_of(total * from.reps());
}

Matrix induced_ext_map(const ModuleMorphism& f, const ModuleMorphism& g, std::size_t degree) {
  ExtGroup from = ext_group(f.target(), g.source(), degree);
  ExtGroup to = ext_group(f.source(), g.target(), degree);
  return induced_ext_map(from, to, f, g);
}

std::optional<std::string> ses_defect(const ModuleMorphism& i, const ModuleMorphism& p) {
  if (!(i.target() == p.source())) return std::string("middle terms differ");
  if (!is_mono(i)) return std::string("first map is not injective");
  if (!is_epi(p)) return std::string("second map is not surjective");
  if (!(p.mat() * i.mat()).is_zero()) return std::string("composite is not zero");
  if (rank(i.mat()) + rank(p.mat()) != i.target().dim()) return std::string("not exact in the middle");
  return std::nullopt;
}

Matrix connecting_cocycle(const ModuleMorphism& i, const ModuleMorphism& p, const FreeResolution& res_m) {
  auto lam = solve(p.mat(), res_m.generator_images(0));
  if (!lam) throw InvariantViolation("connecting: augmentation does not lift");
  Matrix y = map_from_free(p.source(), *lam) * res_m.generator_images(1);
  auto kappa = solve(i.mat(), y);
  if (!kappa) throw InvariantViolation("connecting: boundary does not land in the kernel");
  return *kappa;
}

ExtClass yoneda_class_of_ses(const ModuleMorphism& i, const ModuleMorphism& p) {
  if (auto why = ses_defect(i, p)) throw InvalidInput("yoneda_class_of_ses: " + *why);
  auto group = std::make_shared<const ExtGroup>(resolve_shared(p.target(), 2), i.source(), 1);
  Matrix cocycle = cochain_from_images(connecting_cocycle(i, p, *group->resolution()));
  Matrix coords = group->class_of(cocycle);
  return {group, std::move(cocycle), std::move(coords)};
}

Matrix connecting_map(const ModuleMorphism& i, const ModuleMorphism& p, const ExtGroup& ext_k,
                      const ExtGroup& ext_m) {
  const std::size_t t = ext_k.degree();
  if (ext_m.degree() != t + 1) throw InvariantViolation("connecting_map: degree mismatch");
  const FreeResolution& pm = *ext_m.resolution();
  const FreeResolution& qk = *ext_k.resolution();
  Matrix kappa = connecting_cocycle(i, p, pm);
  ChainMap phi = lift_along(kappa, pm, 1, qk, t);
  Matrix pull = cochain_pullback(ext_k.target(), phi[t], qk.rank(t));
  return ext_m.class_of(pull * ext_k.reps());
}

Matrix connecting_map_from_hom(const ModuleMorphism& i, const ModuleMorphism& p, const HomSpace& hom_kn,
                               const ExtGroup& ext_m) {
  if (ext_m.degree() != 1) throw InvariantViolation("connecting_map_from_hom: target must be Ext^1");
  Matrix kappa = connecting_cocycle(i, p, *ext_m.resolution());
  Matrix out(ext_m.target().field(), ext_m.dim(), hom_kn.dim());
  for (std::size_t j = 0; j < hom_kn.dim(); ++j)
    out.set_block(0, j, ext_m.class_of(cochain_from_images(hom_kn.element(j).mat() * kappa)));
  return out;
}

}  // namespace csplit
