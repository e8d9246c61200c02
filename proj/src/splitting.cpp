#include "csplit/splitting.hpp"

#include <sstream>

#include "csplit/errors.hpp"

namespace csplit {

namespace {

Matrix id_of(const ModuleRep& m) { return Matrix::identity(m.field(), m.dim()); }

bool is_identity_on(const Matrix& m, const ModuleRep& mod) { return m == id_of(mod); }

// Retraction derived from a section: (id - s p) lands in the image of i.
ModuleMorphism retraction_from_section(const ModuleMorphism& i, const ModuleMorphism& p, const ModuleMorphism& s) {
  Matrix proj = id_of(i.target()) - s.mat() * p.mat();
  return ModuleMorphism(i.target(), i.source(), left_inverse(i.mat()) * proj);
}

// Section with p s = id and r s = 0, solved from [r; p] s = [0; id].
ModuleMorphism section_from_retraction(const ModuleMorphism& p, const ModuleMorphism& r) {
  const PrimeField& fld = p.target().field();
  Matrix lhs = vstack(r.mat(), p.mat());
  Matrix rhs = vstack(Matrix(fld, r.target().dim(), p.target().dim()), id_of(p.target()));
  auto s = solve(lhs, rhs);
  if (!s) throw InvariantViolation("section_from_retraction: [r; p] is not invertible");
  return ModuleMorphism(p.target(), p.source(), *s);
}

ModuleMorphism row_retraction(const ModuleMorphism& i, const ModuleMorphism& p, const std::optional<ModuleMorphism>& r,
                              const std::optional<ModuleMorphism>& s, const char* row) {
  if (r) return *r;
  if (s) return retraction_from_section(i, p, *s);
  auto found = is_split_mono(i);
  if (!found) throw InvalidInput(std::string("row does not split: ") + row + " row has no retraction");
  return *found;
}

// Unique u with u p' = d; p' is epi.
ModuleMorphism factor_through_epi(const Matrix& d, const ModuleMorphism& p, const ModuleRep& target) {
  auto ut = solve(p.mat().transpose(), d.transpose());
  if (!ut) throw InvariantViolation("obstruction does not factor through the top projection");
  return ModuleMorphism::trusted(p.target(), target, ut->transpose());
}

}  // namespace

std::optional<std::string> diagram_defect(const SplitDiagram& d) {
  const auto& a = d.g.source().algebra();
  for (const ModuleMorphism* m : {&d.f, &d.g, &d.h, &d.i_top, &d.p_top, &d.i_bot, &d.p_bot})
    if (m->source().algebra() != a) return "maps are over different algebras";
  if (auto why = ses_defect(d.i_top, d.p_top)) return "top row: " + *why;
  if (auto why = ses_defect(d.i_bot, d.p_bot)) return "bottom row: " + *why;
  if (!(d.f.source() == d.i_top.source()) || !(d.f.target() == d.i_bot.source()) ||
      !(d.g.source() == d.i_top.target()) || !(d.g.target() == d.i_bot.target()) ||
      !(d.h.source() == d.p_top.target()) || !(d.h.target() == d.p_bot.target()))
    return "columns do not match the rows";
  if (!(d.g.mat() * d.i_top.mat() == d.i_bot.mat() * d.f.mat())) return "left square does not commute";
  if (!(d.h.mat() * d.p_top.mat() == d.p_bot.mat() * d.g.mat())) return "right square does not commute";
  if (d.r_top && !is_identity_on(d.r_top->mat() * d.i_top.mat(), d.f.source()))
    return "top retraction witness fails r' i' = id";
  if (d.r_bot && !is_identity_on(d.r_bot->mat() * d.i_bot.mat(), d.f.target()))
    return "bottom retraction witness fails r i = id";
  if (d.s_top && !is_identity_on(d.p_top.mat() * d.s_top->mat(), d.h.source()))
    return "top section witness fails p' s' = id";
  if (d.s_bot && !is_identity_on(d.p_bot.mat() * d.s_bot->mat(), d.h.target()))
    return "bottom section witness fails p s = id";
  return std::nullopt;
}

std::pair<ModuleMorphism, ModuleMorphism> row_retractions(const SplitDiagram& d) {
  return {row_retraction(d.i_top, d.p_top, d.r_top, d.s_top, "top"),
          row_retraction(d.i_bot, d.p_bot, d.r_bot, d.s_bot, "bottom")};
}

Sha1Cokernel sha1_cokernel(const ModuleMorphism& h, const ModuleMorphism& f) {
  require_same_algebra(h.source(), f.source(), "sha1_cokernel");
  HomSpace hom(h.source(), f.target());
  HomSpace left(h.source(), f.source());
  HomSpace right(h.target(), f.target());
  Matrix bd(f.source().field(), hom.dim(), left.dim() + right.dim());
  for (std::size_t j = 0; j < left.dim(); ++j) bd.set_block(0, j, hom.coords(f.mat() * left.element(j).mat()));
  for (std::size_t j = 0; j < right.dim(); ++j)
    bd.set_block(0, left.dim() + j, hom.coords(-(right.element(j).mat() * h.mat())));
  QuotientPresentation q = quotient(hom.dim(), image_basis(bd));
  return {hom, left, right, bd, q};
}

Matrix Sha1Cokernel::class_of(const ModuleMorphism& u) const { return quotient.project * hom.coords(u.mat()); }

namespace {

Obstruction obstruction_with(const SplitDiagram& d, const Sha1Cokernel& sha, const ModuleMorphism& r_top,
                             const ModuleMorphism& r_bot) {
  Matrix diff = r_bot.mat() * d.g.mat() - d.f.mat() * r_top.mat();
  ModuleMorphism u = factor_through_epi(diff, d.p_top, d.f.target());
  Matrix coords = sha.class_of(u);
  bool zero = coords.is_zero();
  return {u, coords, zero};
}

}  // namespace

Obstruction obstruction_class(const SplitDiagram& d) {
  if (auto why = diagram_defect(d)) throw InvalidInput("invalid split diagram: " + *why);
  auto [r_top, r_bot] = row_retractions(d);
  Sha1Cokernel sha = sha1_cokernel(d.h, d.f);
  Obstruction ob = obstruction_with(d, sha, r_top, r_bot);
  // Other retractions differ by maps through the projections; the class must not move.
  HomSpace top_shift(d.h.source(), d.f.source());
  HomSpace bot_shift(d.h.target(), d.f.target());
  if (top_shift.dim() > 0 || bot_shift.dim() > 0) {
    ModuleMorphism r2_top = r_top, r2_bot = r_bot;
    if (top_shift.dim() > 0)
      r2_top = ModuleMorphism::trusted(r_top.source(), r_top.target(),
                                       r_top.mat() + top_shift.element(0).mat() * d.p_top.mat());
    if (bot_shift.dim() > 0)
      r2_bot = ModuleMorphism::trusted(r_bot.source(), r_bot.target(),
                                       r_bot.mat() + bot_shift.element(bot_shift.dim() - 1).mat() * d.p_bot.mat());
    if (!(obstruction_with(d, sha, r2_top, r2_bot).coords == ob.coords))
      throw InvariantViolation("obstruction class depends on the choice of retractions");
  }
  return ob;
}

std::optional<std::string> SplittingCertificate::defect(const SplitDiagram& d) const {
  for (const ModuleMorphism* m : {&r_top, &r_bot, &s_top, &s_bot})
    if (!m->is_intertwiner()) return "a certificate map is not a module map";
  if (!is_identity_on(r_top.mat() * d.i_top.mat(), d.f.source())) return "r' i' != id";
  if (!is_identity_on(r_bot.mat() * d.i_bot.mat(), d.f.target())) return "r i != id";
  if (!is_identity_on(d.p_top.mat() * s_top.mat(), d.h.source())) return "p' s' != id";
  if (!is_identity_on(d.p_bot.mat() * s_bot.mat(), d.h.target())) return "p s != id";
  if (!(d.f.mat() * r_top.mat() == r_bot.mat() * d.g.mat())) return "f r' != r g";
  if (!(d.g.mat() * s_top.mat() == s_bot.mat() * d.h.mat())) return "g s' != s h";
  return std::nullopt;
}

SplitDecision decide_compatible_split(const SplitDiagram& d) {
  if (auto why = diagram_defect(d)) throw InvalidInput("invalid split diagram: " + *why);
  auto [r_top, r_bot] = row_retractions(d);
  Sha1Cokernel sha = sha1_cokernel(d.h, d.f);
  SplitDecision out{obstruction_class(d), sha.dim(), std::nullopt};
  if (!out.obstruction.vanishes) return out;

  // f t' - t h = u, read off the boundary columns.
  auto c = solve(sha.boundary, sha.hom.coords(out.obstruction.u.mat()));
  if (!c) throw InvariantViolation("vanishing class but f t' - t h = u has no solution");
  const PrimeField& fld = d.f.source().field();
  Matrix t_top(fld, d.f.source().dim(), d.h.source().dim());
  Matrix t_bot(fld, d.f.target().dim(), d.h.target().dim());
  for (std::size_t j = 0; j < sha.hom_left.dim(); ++j)
    t_top += sha.hom_left.element(j).mat().scaled((*c)(j, 0));
  for (std::size_t j = 0; j < sha.hom_right.dim(); ++j)
    t_bot += sha.hom_right.element(j).mat().scaled((*c)(sha.hom_left.dim() + j, 0));
  ModuleMorphism r2_top(r_top.source(), r_top.target(), r_top.mat() + t_top * d.p_top.mat());
  ModuleMorphism r2_bot(r_bot.source(), r_bot.target(), r_bot.mat() + t_bot * d.p_bot.mat());
  SplittingCertificate cert{r2_top, r2_bot, section_from_retraction(d.p_top, r2_top),
                            section_from_retraction(d.p_bot, r2_bot)};
  if (auto why = cert.defect(d)) throw InvariantViolation("certificate fails to verify: " + *why);
  out.certificate = std::move(cert);
  return out;
}

// ---- brute force ----

namespace {

struct AffineRetractions {
  Matrix base;
  std::vector<Matrix> directions;
};

// All intertwiners r: Y -> X with r i = id, as base + span(directions).
std::optional<AffineRetractions> retraction_space(const ModuleMorphism& i) {
  HomSpace hom(i.target(), i.source());
  const ModuleRep& x = i.source();
  const PrimeField& fld = x.field();
  const std::size_t n = x.dim() * x.dim();
  Matrix sys(fld, n, hom.dim());
  std::vector<Matrix> elems;
  for (std::size_t j = 0; j < hom.dim(); ++j) {
    elems.push_back(hom.element(j).mat());
    sys.set_block(0, j, (elems.back() * i.mat()).reshaped(n, 1));
  }
  auto c0 = solve(sys, id_of(x).reshaped(n, 1));
  if (!c0) return std::nullopt;
  auto combine = [&](const Matrix& c) {
    Matrix m(fld, x.dim(), i.target().dim());
    for (std::size_t j = 0; j < elems.size(); ++j) m += elems[j].scaled(c(j, 0));
    return m;
  };
  AffineRetractions out{combine(*c0), {}};
  Subspace ker = kernel_basis(sys);
  for (std::size_t k = 0; k < ker.dim(); ++k) out.directions.push_back(combine(ker.basis.column(k)));
  return out;
}

// Calls visit on every point of the affine space; stops early when visit returns true.
template <typename Visit>
bool enumerate_affine(const AffineRetractions& s, std::uint32_t p, Visit&& visit) {
  std::vector<std::uint32_t> digits(s.directions.size(), 0);
  while (true) {
    Matrix m = s.base;
    for (std::size_t k = 0; k < digits.size(); ++k)
      if (digits[k]) m += s.directions[k].scaled(digits[k]);
    if (visit(m)) return true;
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) return false;
  }
}

}  // namespace

OracleResult brute_force_oracle(const SplitDiagram& d, std::size_t max_space_dim) {
  if (auto why = diagram_defect(d)) throw InvalidInput("invalid split diagram: " + *why);
  OracleResult out;
  const std::uint32_t p = d.f.source().field().p();
  if (p != 2 && p != 3) {
    out.detail = "oracle only runs over F_2 and F_3 (field is F_" + std::to_string(p) + ")";
    return out;
  }
  auto top = retraction_space(d.i_top);
  auto bot = retraction_space(d.i_bot);
  if (!top || !bot) throw InvalidInput("row does not split: no retraction exists");
  out.space_dim = top->directions.size() + bot->directions.size();
  if (out.space_dim > max_space_dim) {
    out.detail = "enumeration space has dimension " + std::to_string(out.space_dim) + " > bound " +
                 std::to_string(max_space_dim);
    return out;
  }
  std::vector<Matrix> bottom_r, bottoms;
  enumerate_affine(*bot, p, [&](const Matrix& r) {
    bottom_r.push_back(r);
    bottoms.push_back(r * d.g.mat());
    return false;
  });
  bool found = enumerate_affine(*top, p, [&](const Matrix& rt) {
    Matrix lhs = d.f.mat() * rt;
    for (std::size_t k = 0; k < bottoms.size(); ++k) {
      ++out.pairs_tested;
      if (bottoms[k] == lhs) {
        out.witness = {ModuleMorphism(d.g.source(), d.f.source(), rt),
                       ModuleMorphism(d.g.target(), d.f.target(), bottom_r[k])};
        return true;
      }
    }
    return false;
  });
  out.verdict = found ? OracleResult::Verdict::kExists : OracleResult::Verdict::kNone;
  out.detail = found ? "compatible retractions found" : "no compatible retractions";
  return out;
}

// ---- duality ----

bool DualityReport::holds() const {
  for (bool e : exact)
    if (!e) return false;
  return alternating_sum_zero;
}

std::string DualityReport::describe() const {
  static const char* nodes[] = {"Sha^t", "Ext_T", "product", "Ext(X,W)", "Sha^{t+1}"};
  std::ostringstream os;
  os << "t=" << t << " dims (";
  for (std::size_t k = 0; k < dims.size(); ++k) os << (k ? "," : "") << dims[k];
  os << ")";
  for (std::size_t k = 0; k < exact.size(); ++k)
    if (!exact[k]) os << " not exact at " << nodes[k];
  if (!alternating_sum_zero) os << " alternating sum nonzero";
  return os.str();
}

namespace {

bool image_equals_kernel(const Matrix& in, const Matrix& out) {
  return same_subspace(image_basis(in), kernel_basis(out));
}

}  // namespace

DualityReport duality_sequence(const ArrowContext& ctx, const ArrowObject& f, const ArrowObject& g, std::size_t t) {
  if (t < 1) throw InvalidInput("duality_sequence needs t >= 1");
  require_same_algebra(f.source(), g.source(), "duality_sequence");
  const ArrowCategory& cat = ctx.category();
  ModuleRep fm = cat.to_module(f);
  ModuleRep gm = cat.to_module(g);
  ResolutionPtr res_f = resolve_shared(fm, t + 2);
  auto ext_t = std::make_shared<const ExtGroup>(res_f, gm, t);
  auto ext_next = std::make_shared<const ExtGroup>(res_f, gm, t + 1);

  ShaGroup sha_t = sha_in(ctx, ext_t);
  ShaGroup sha_next = sha_in(ctx, ext_next);
  EvalMaps ev = eval_ext_maps(cat, ext_t);
  Matrix a = vstack(ev.to_dom, ev.to_cod);

  const ModuleRep& x = f.source();
  const ModuleRep& w = g.target();
  ExtGroup ext_xw(resolve_shared(x, t + 1), w, t);
  Matrix b1 = induced_ext_map(*ev.dom_ext, ext_xw, ModuleMorphism::identity(x), g);
  Matrix b2 = induced_ext_map(*ev.cod_ext, ext_xw, f, ModuleMorphism::identity(w));
  Matrix b = hstack(b1, -b2);

  // c: Ext^t(X, W) -> Ext^t_T(ker, g) -> Ext^{t+1}_T(f, g) along 0 -> ker -> FG f -> f -> 0.
  KerCounit kc = ker_counit_arrow(f);
  ModuleMorphism iota = cat.to_module_map(kc.inclusion);
  ModuleMorphism eps = cat.to_module_map(counit_arrow(f));
  auto ext_k = std::make_shared<const ExtGroup>(resolve_shared(iota.source(), t + 1), gm, t);
  Matrix delta = connecting_map(iota, eps, *ext_k, *ext_next);
  EvalMaps ev_k = eval_ext_maps(cat, ext_k);
  Matrix to_xw = induced_ext_map(*ev_k.cod_ext, ext_xw, ModuleMorphism::identity(x), ModuleMorphism::identity(w)) *
                 ev_k.to_cod;
  auto to_xw_inv = inverse(to_xw);
  if (!to_xw_inv) throw InvariantViolation("duality_sequence: Ext_T(ker, g) -> Ext(X, W) is not invertible");
  Matrix c = delta * *to_xw_inv;

  DualityReport rep;
  rep.t = t;
  rep.dims = {sha_t.dim(), ext_t->dim(), ev.dom_ext->dim(), ev.cod_ext->dim(), ext_xw.dim(), sha_next.dim()};
  rep.exact[0] = true;  // Sha^t is a subspace
  rep.exact[1] = same_subspace(sha_t.kernel, kernel_basis(a));
  rep.exact[2] = image_equals_kernel(a, b);
  rep.exact[3] = image_equals_kernel(b, c);
  rep.exact[4] = same_subspace(image_basis(c), sha_next.kernel);
  long long alt = static_cast<long long>(rep.dims[0]) - static_cast<long long>(rep.dims[1]) +
                  static_cast<long long>(rep.dims[2] + rep.dims[3]) - static_cast<long long>(rep.dims[4]) +
                  static_cast<long long>(rep.dims[5]);
  rep.alternating_sum_zero = alt == 0;
  rep.sha_next_from_sequence = ext_xw.dim() - rank(b);
  return rep;
}

// ---- diagram corpus ----

namespace {

Matrix random_invertible(CorpusGenerator& gen, std::size_t n) {
  while (true) {
    Matrix m = gen.random_matrix(n, n);
    if (inverse(m)) return m;
  }
}

struct Row {
  ModuleMorphism i, p, r, s;
};

// 0 -> a -> b -> c -> 0 with b = a (+) c in the basis given by q.
Row conjugated_row(const ModuleRep& a, const ModuleRep& c, const Matrix& q) {
  DirectSum ds = direct_sum(a, c);
  Matrix qinv = *inverse(q);
  ModuleRep b = change_basis(ds.sum, q);
  return {ModuleMorphism::trusted(a, b, qinv * ds.inject_first.mat()),
          ModuleMorphism::trusted(b, c, ds.project_second.mat() * q),
          ModuleMorphism::trusted(b, a, ds.project_first.mat() * q),
          ModuleMorphism::trusted(c, b, qinv * ds.inject_second.mat())};
}

}  // namespace

SplitDiagram random_split_diagram(CorpusGenerator& gen, std::size_t max_total) {
  // Budget the four corner modules in a random order.
  std::array<ModuleRep, 4> mods{ModuleRep::zero(gen.algebra()), ModuleRep::zero(gen.algebra()),
                                ModuleRep::zero(gen.algebra()), ModuleRep::zero(gen.algebra())};
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  for (std::size_t k = 3; k > 0; --k) std::swap(order[k], order[gen.uniform(k + 1)]);
  std::size_t left = max_total;
  for (std::size_t k : order) {
    mods[k] = gen.next_module_in(0, std::min(left, gen.max_dim()));
    left -= mods[k].dim();
  }
  const ModuleRep &xt = mods[0], &zt = mods[1], &xb = mods[2], &zb = mods[3];
  ModuleMorphism f = gen.random_morphism(xt, xb);
  ModuleMorphism h = gen.random_morphism(zt, zb);
  ModuleMorphism u = gen.random_morphism(zt, xb);
  if (gen.uniform(3) == 0) {
    // A class that vanishes: u = f a - b h.
    ModuleMorphism a = gen.random_morphism(zt, xt);
    ModuleMorphism b = gen.random_morphism(zb, xb);
    u = compose(f, a) - compose(b, h);
  }
  Matrix qt = random_invertible(gen, xt.dim() + zt.dim());
  Matrix qb = random_invertible(gen, xb.dim() + zb.dim());
  Row top = conjugated_row(xt, zt, qt);
  Row bot = conjugated_row(xb, zb, qb);
  const PrimeField& fld = xt.field();
  Matrix g0 = vstack(hstack(f.mat(), u.mat()), hstack(Matrix(fld, zb.dim(), xt.dim()), h.mat()));
  ModuleMorphism g = ModuleMorphism::trusted(top.i.target(), bot.i.target(), *inverse(qb) * g0 * qt);
  SplitDiagram d{f, g, h, top.i, top.p, bot.i, bot.p, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  const std::size_t wt = gen.uniform(4), wb = gen.uniform(4);
  if (wt & 1) d.r_top = top.r;
  if (wt & 2) d.s_top = top.s;
  if (wb & 1) d.r_bot = bot.r;
  if (wb & 2) d.s_bot = bot.s;
  return d;
}

SplitDiagram intro_diagram(std::uint32_t p) {
  AlgebraPtr k = make_truncated_poly(p, 1);
  ModuleRep zero = ModuleRep::zero(k);
  ModuleRep one = free_module(k, 1);
  auto id = ModuleMorphism::identity(one);
  auto in = ModuleMorphism::zero(zero, one);
  auto out = ModuleMorphism::zero(one, zero);
  return {in, id, out, in, id, id, out, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
}

}  // namespace csplit
