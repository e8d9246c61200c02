#include "csplit/arrow.hpp"

#include "csplit/errors.hpp"

namespace csplit {

bool ArrowMorphism::commutes() const { return b.mat() * src.mat() == dst.mat() * a.mat(); }

ArrowCategory::ArrowCategory(AlgebraPtr base) : base_(std::move(base)), tri_(triangular(base_)) {}

Matrix ArrowCategory::element(TriBlock block, const Matrix& a) const {
  const std::size_t d = base_->dim();
  Matrix out(base_->field(), 3 * d, 1);
  out.set_block(tri_index(block, 0, d), 0, a);
  return out;
}

ModuleRep ArrowCategory::to_module(const ArrowObject& f) const {
  if (f.source().algebra() != base_) throw InvalidInput("to_module: arrow over a different algebra");
  const ModuleRep& x = f.source();
  const ModuleRep& y = f.target();
  const std::size_t d = base_->dim(), n = x.dim() + y.dim();
  std::vector<Matrix> act(3 * d, Matrix(base_->field(), n, n));
  for (std::size_t i = 0; i < d; ++i) {
    act[tri_index(TriBlock::kE11, i, d)].set_block(0, 0, x.action(i));
    act[tri_index(TriBlock::kE21, i, d)].set_block(x.dim(), 0, y.action(i) * f.mat());
    act[tri_index(TriBlock::kE22, i, d)].set_block(x.dim(), x.dim(), y.action(i));
  }
  return ModuleRep::trusted(tri_, n, std::move(act));
}

ModuleMorphism ArrowCategory::to_module_map(const ArrowMorphism& m) const {
  return ModuleMorphism::trusted(to_module(m.src), to_module(m.dst), block_diag({m.a.mat(), m.b.mat()}));
}

TriangularSplit ArrowCategory::from_module(const ModuleRep& m) const {
  if (m.algebra() != tri_) throw InvalidInput("from_module: module is not over the triangular algebra");
  const std::size_t d = base_->dim();
  Matrix xb = image_basis(m.act(element(TriBlock::kE11, base_->unit()))).basis;
  Matrix yb = image_basis(m.act(element(TriBlock::kE22, base_->unit()))).basis;
  Matrix basis = hstack(xb, yb);
  if (basis.cols() != m.dim() || !inverse(basis))
    throw InvariantViolation("from_module: idempotents do not decompose the module");
  ModuleRep mm = change_basis(m, basis);
  const std::size_t x = xb.cols(), y = yb.cols();
  std::vector<Matrix> xa, ya;
  for (std::size_t i = 0; i < d; ++i) {
    xa.push_back(mm.action(tri_index(TriBlock::kE11, i, d)).block(0, 0, x, x));
    ya.push_back(mm.action(tri_index(TriBlock::kE22, i, d)).block(x, x, y, y));
  }
  ModuleRep xm = ModuleRep::trusted(base_, x, std::move(xa));
  ModuleRep ym = ModuleRep::trusted(base_, y, std::move(ya));
  Matrix fm = mm.act(element(TriBlock::kE21, base_->unit())).block(x, 0, y, x);
  auto arrow = ModuleMorphism::trusted(xm, ym, fm);
  if (!(to_module(arrow).actions() == mm.actions()))
    throw InvariantViolation("from_module: module is not of arrow shape after splitting");
  return {arrow, basis};
}

ArrowMorphism ArrowCategory::from_module_map(const ModuleMorphism& phi) const {
  TriangularSplit s = from_module(phi.source());
  TriangularSplit t = from_module(phi.target());
  Matrix m = *inverse(t.basis) * phi.mat() * s.basis;
  const std::size_t x = s.arrow.source().dim(), y = s.arrow.target().dim();
  const std::size_t v = t.arrow.source().dim(), w = t.arrow.target().dim();
  if (!m.block(0, x, v, y).is_zero() || !m.block(v, 0, w, x).is_zero())
    throw InvariantViolation("from_module_map: map does not respect the idempotents");
  auto a = ModuleMorphism::trusted(s.arrow.source(), t.arrow.source(), m.block(0, 0, v, x));
  auto b = ModuleMorphism::trusted(s.arrow.target(), t.arrow.target(), m.block(v, x, w, y));
  return {s.arrow, t.arrow, a, b};
}

ArrowMorphism identity_arrow(const ArrowObject& f) {
  return {f, f, ModuleMorphism::identity(f.source()), ModuleMorphism::identity(f.target())};
}

ArrowMorphism compose(const ArrowMorphism& g, const ArrowMorphism& f) {
  return {f.src, g.dst, compose(g.a, f.a), compose(g.b, f.b)};
}

ArrowObject fg_arrow(const ArrowObject& f) { return direct_sum(f.source(), f.target()).inject_first; }

ArrowMorphism counit_arrow(const ArrowObject& f) {
  ArrowObject fg = fg_arrow(f);
  const ModuleRep& y = f.target();
  auto b = ModuleMorphism::trusted(fg.target(), y, hstack(f.mat(), Matrix::identity(y.field(), y.dim())));
  return {fg, f, ModuleMorphism::identity(f.source()), b};
}

KerCounit ker_counit_arrow(const ArrowObject& f) {
  const ModuleRep& x = f.source();
  const ModuleRep& y = f.target();
  const PrimeField& fld = x.field();
  ModuleRep zero = ModuleRep::zero(x.algebra());
  ArrowObject kernel = ModuleMorphism::zero(zero, x);
  ArrowObject fg = fg_arrow(f);
  auto b = ModuleMorphism::trusted(x, fg.target(), vstack(Matrix::identity(fld, x.dim()), -f.mat()));
  ArrowMorphism inclusion{kernel, fg, ModuleMorphism::zero(zero, x), b};
  Matrix ix = Matrix::identity(fld, x.dim()), iy = Matrix::identity(fld, y.dim());
  Matrix zxy(fld, x.dim(), y.dim());
  Matrix m = vstack(hstack(ix, zxy), hstack(f.mat(), iy));
  Matrix m_inv = vstack(hstack(ix, zxy), hstack(-f.mat(), iy));
  return {kernel, inclusion, m, m_inv};
}

std::optional<std::string> KerCounit::check(const ArrowObject& f) const {
  const PrimeField& fld = f.source().field();
  const std::size_t x = f.source().dim(), y = f.target().dim();
  ArrowMorphism eps = counit_arrow(f);
  if (!inclusion.commutes()) return std::string("inclusion square does not commute");
  if (!(eps.b.mat() * inclusion.b.mat()).is_zero()) return std::string("counit does not kill the kernel");
  if (rank(inclusion.b.mat()) != x) return std::string("inclusion is not injective");
  if (rank(eps.b.mat()) != y) return std::string("counit is not surjective on codomains");
  if (!(m * m_inv).is_identity()) return std::string("m and m^{-1} are not inverse");
  Matrix expect = hstack(Matrix(fld, y, x), Matrix::identity(fld, y));
  if (!(eps.b.mat() * m_inv == expect)) return std::string("[f id] o m^{-1} != [0 id]");
  Matrix first = vstack(Matrix::identity(fld, x), Matrix(fld, y, x));
  if (!(m_inv * first == inclusion.b.mat())) return std::string("m^{-1} does not carry X onto the kernel");
  return std::nullopt;
}

std::optional<ModuleMorphism> is_E_projective(const ArrowObject& f) { return is_split_mono(f); }
std::optional<ModuleMorphism> is_E_injective(const ArrowObject& f) { return is_split_epi(f); }

FreeResolution evaluate_dom(const ArrowCategory& cat, const FreeResolution& res) {
  TriangularSplit split = cat.from_module(res.module());
  const std::size_t d = cat.base()->dim(), big = 3 * d, x = split.arrow.source().dim();
  std::vector<Matrix> images;
  images.push_back((*inverse(split.basis) * res.generator_images(0)).block(0, 0, x, res.rank(0)));
  for (std::size_t n = 1; n <= res.length(); ++n) {
    const Matrix& img = res.generator_images(n);
    std::vector<std::size_t> rows;
    for (std::size_t g = 0; g < res.rank(n - 1); ++g)
      for (std::size_t i = 0; i < d; ++i) rows.push_back(g * big + tri_index(TriBlock::kE11, i, d));
    images.push_back(img.select_rows(rows));
  }
  return FreeResolution(split.arrow.source(), std::move(images));
}

FreeResolution evaluate_cod(const ArrowCategory& cat, const FreeResolution& res) {
  TriangularSplit split = cat.from_module(res.module());
  const PrimeField& fld = cat.base()->field();
  const std::size_t d = cat.base()->dim(), big = 3 * d;
  const std::size_t x = split.arrow.source().dim(), y = split.arrow.target().dim();
  std::vector<Matrix> images;
  {
    Matrix aug = *inverse(split.basis) * res.generator_images(0);
    Matrix out(fld, y, 2 * res.rank(0));
    for (std::size_t g = 0; g < res.rank(0); ++g) {
      Matrix col = aug.column(g);
      out.set_block(0, 2 * g, split.arrow.mat() * col.block(0, 0, x, 1));
      out.set_block(0, 2 * g + 1, col.block(x, 0, y, 1));
    }
    images.push_back(std::move(out));
  }
  for (std::size_t n = 1; n <= res.length(); ++n) {
    const Matrix& img = res.generator_images(n);
    const std::size_t rp = res.rank(n - 1), r = res.rank(n);
    Matrix out(fld, 2 * d * rp, 2 * r);
    for (std::size_t g = 0; g < r; ++g)
      for (std::size_t h = 0; h < rp; ++h)
        for (std::size_t i = 0; i < d; ++i) {
          // E21 (x) 1 . d(g) moves the E11 part into the E21 slot.
          out(2 * h * d + i, 2 * g) = img(h * big + tri_index(TriBlock::kE11, i, d), g);
          out(2 * h * d + i, 2 * g + 1) = img(h * big + tri_index(TriBlock::kE21, i, d), g);
          out((2 * h + 1) * d + i, 2 * g + 1) = img(h * big + tri_index(TriBlock::kE22, i, d), g);
        }
    images.push_back(std::move(out));
  }
  return FreeResolution(split.arrow.target(), std::move(images));
}

EvalMaps eval_ext_maps(const ArrowCategory& cat, std::shared_ptr<const ExtGroup> arrow_ext) {
  const std::size_t n = arrow_ext->degree();
  const FreeResolution& p = *arrow_ext->resolution();
  TriangularSplit gs = cat.from_module(arrow_ext->target());
  const ModuleRep& v = gs.arrow.source();
  const ModuleRep& w = gs.arrow.target();
  const PrimeField& fld = v.field();
  const std::size_t gd = arrow_ext->target().dim(), r = p.rank(n);
  Matrix qinv = *inverse(gs.basis);
  Matrix take_v = hstack(Matrix::identity(fld, v.dim()), Matrix(fld, v.dim(), w.dim())) * qinv;
  Matrix take_w = hstack(Matrix(fld, w.dim(), v.dim()), Matrix::identity(fld, w.dim())) * qinv;
  Matrix restrict_dom(fld, v.dim() * r, gd * r);
  Matrix restrict_cod(fld, w.dim() * 2 * r, gd * r);
  for (std::size_t h = 0; h < r; ++h) {
    restrict_dom.set_block(h * v.dim(), h * gd, take_v);
    restrict_cod.set_block(2 * h * w.dim(), h * gd, gs.arrow.mat() * take_v);
    restrict_cod.set_block((2 * h + 1) * w.dim(), h * gd, take_w);
  }

  TriangularSplit fs = cat.from_module(p.module());
  FreeResolution dom_p = evaluate_dom(cat, p);
  FreeResolution cod_p = evaluate_cod(cat, p);
  auto dom_ext = std::make_shared<const ExtGroup>(resolve_shared(fs.arrow.source(), n + 1), v, n);
  auto cod_ext = std::make_shared<const ExtGroup>(resolve_shared(fs.arrow.target(), n + 1), w, n);
  ChainMap cd = lift_chain_map(ModuleMorphism::identity(fs.arrow.source()), *dom_ext->resolution(), dom_p, n);
  ChainMap cc = lift_chain_map(ModuleMorphism::identity(fs.arrow.target()), *cod_ext->resolution(), cod_p, n);
  Matrix to_dom = dom_ext->class_of(cochain_pullback(v, cd[n], dom_p.rank(n)) * restrict_dom * arrow_ext->reps());
  Matrix to_cod = cod_ext->class_of(cochain_pullback(w, cc[n], cod_p.rank(n)) * restrict_cod * arrow_ext->reps());
  return {std::move(arrow_ext), dom_ext, cod_ext, std::move(to_dom), std::move(to_cod)};
}

EvalMaps eval_ext_maps(const ArrowCategory& cat, const ArrowObject& f, const ArrowObject& g, std::size_t degree) {
  auto ext = std::make_shared<const ExtGroup>(ext_group(cat.to_module(f), cat.to_module(g), degree));
  return eval_ext_maps(cat, std::move(ext));
}

}  // namespace csplit
