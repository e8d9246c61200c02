#include "csplit/module.hpp"

#include "csplit/errors.hpp"

namespace csplit {

ModuleRep::ModuleRep(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action)
    : impl_(std::make_shared<const Impl>(Impl{std::move(algebra), dim, std::move(action)})) {
  if (auto why = check()) throw InvalidInput("invalid module: " + *why);
}

ModuleRep ModuleRep::trusted(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action) {
  return ModuleRep(std::make_shared<const Impl>(Impl{std::move(algebra), dim, std::move(action)}));
}

ModuleRep ModuleRep::zero(AlgebraPtr algebra) {
  std::vector<Matrix> act(algebra->dim(), Matrix(algebra->field(), 0, 0));
  return trusted(std::move(algebra), 0, std::move(act));
}

Matrix ModuleRep::act(const Matrix& element) const {
  Matrix out(field(), dim(), dim());
  for (std::size_t i = 0; i < algebra()->dim(); ++i)
    if (element(i, 0) != 0) out += action(i).scaled(element(i, 0));
  return out;
}

std::optional<std::string> ModuleRep::check() const {
  const Algebra& a = *impl_->algebra;
  const std::size_t d = a.dim(), n = dim();
  if (impl_->action.size() != d)
    return "expected " + std::to_string(d) + " action matrices, got " + std::to_string(impl_->action.size());
  for (std::size_t i = 0; i < d; ++i) {
    const Matrix& m = impl_->action[i];
    if (m.rows() != n || m.cols() != n) return "action matrix " + std::to_string(i) + " is not square of size dim";
    if (!(m.field() == a.field())) return "action matrix over the wrong field";
  }
  if (!act(a.unit()).is_identity()) return "unit does not act as the identity";
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix rhs(a.field(), n, n);
      for (std::size_t k = 0; k < d; ++k)
        if (auto c = a.constant(i, j, k)) rhs += impl_->action[k].scaled(c);
      if (!(impl_->action[i] * impl_->action[j] == rhs))
        return "action(e_" + std::to_string(i) + ") * action(e_" + std::to_string(j) +
               ") disagrees with the structure constants";
    }
  return std::nullopt;
}

bool operator==(const ModuleRep& a, const ModuleRep& b) {
  if (a.impl_ == b.impl_) return true;
  return a.algebra() == b.algebra() && a.dim() == b.dim() && a.actions() == b.actions();
}

void require_same_algebra(const ModuleRep& a, const ModuleRep& b, const char* where) {
  if (a.algebra() != b.algebra())
    throw InvalidInput(std::string(where) + ": modules over different algebras (" + a.algebra()->name() +
                       " vs " + b.algebra()->name() + ")");
}

ModuleMorphism::ModuleMorphism(ModuleRep source, ModuleRep target, Matrix mat, TrustedTag)
    : source_(std::move(source)), target_(std::move(target)), mat_(std::move(mat)) {}

ModuleMorphism::ModuleMorphism(ModuleRep source, ModuleRep target, Matrix mat)
    : source_(std::move(source)), target_(std::move(target)), mat_(std::move(mat)) {
  require_same_algebra(source_, target_, "morphism");
  if (mat_.rows() != target_.dim() || mat_.cols() != source_.dim())
    throw InvalidInput("morphism matrix is " + std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()) +
                       ", expected " + std::to_string(target_.dim()) + "x" + std::to_string(source_.dim()));
  if (!is_intertwiner()) throw InvalidInput("morphism matrix does not commute with the algebra action");
}

ModuleMorphism ModuleMorphism::trusted(ModuleRep source, ModuleRep target, Matrix mat) {
  return ModuleMorphism(std::move(source), std::move(target), std::move(mat), TrustedTag{});
}

ModuleMorphism ModuleMorphism::identity(const ModuleRep& m) {
  return trusted(m, m, Matrix::identity(m.field(), m.dim()));
}

ModuleMorphism ModuleMorphism::zero(const ModuleRep& source, const ModuleRep& target) {
  return trusted(source, target, Matrix(source.field(), target.dim(), source.dim()));
}

bool ModuleMorphism::is_intertwiner() const {
  for (std::size_t i = 0; i < source_.algebra()->dim(); ++i)
    if (!(mat_ * source_.action(i) == target_.action(i) * mat_)) return false;
  return true;
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (!(f.target() == g.source())) throw InvariantViolation("compose: target/source mismatch");
  return ModuleMorphism::trusted(f.source(), g.target(), g.mat() * f.mat());
}

ModuleMorphism operator+(const ModuleMorphism& a, const ModuleMorphism& b) {
  return ModuleMorphism::trusted(a.source(), a.target(), a.mat() + b.mat());
}

ModuleMorphism operator-(const ModuleMorphism& a, const ModuleMorphism& b) {
  return ModuleMorphism::trusted(a.source(), a.target(), a.mat() - b.mat());
}

HomSpace::HomSpace(ModuleRep source, ModuleRep target)
    : source_(std::move(source)), target_(std::move(target)), flat_(source_.field(), 0, 0),
      left_inv_(source_.field(), 0, 0) {
  require_same_algebra(source_, target_, "hom");
  const std::size_t m = target_.dim(), n = source_.dim();
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < source_.algebra()->dim(); ++i)
    ops.push_back(operator_of_hom_action(target_.action(i), source_.action(i), m, n));
  flat_ = kernel_basis(vstack(ops)).basis;
  left_inv_ = left_inverse(flat_);
}

ModuleMorphism HomSpace::element(std::size_t i) const {
  return ModuleMorphism::trusted(source_, target_, flat_.column(i).reshaped(target_.dim(), source_.dim()));
}

std::vector<ModuleMorphism> HomSpace::basis() const {
  std::vector<ModuleMorphism> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(element(i));
  return out;
}

ModuleMorphism HomSpace::combine(const Matrix& coords) const {
  return ModuleMorphism::trusted(source_, target_, (flat_ * coords).reshaped(target_.dim(), source_.dim()));
}

Matrix HomSpace::coords(const Matrix& mat) const {
  Matrix v = mat.reshaped(mat.rows() * mat.cols(), 1);
  Matrix c = left_inv_ * v;
  if (!(flat_ * c == v)) throw InvariantViolation("HomSpace::coords: matrix is not an intertwiner");
  return c;
}

std::vector<ModuleMorphism> hom_basis(const ModuleRep& m, const ModuleRep& n) { return HomSpace(m, n).basis(); }

KernelResult submodule(const ModuleRep& m, const Matrix& basis) {
  const AlgebraPtr& a = m.algebra();
  Matrix linv = left_inverse(basis);
  std::vector<Matrix> act;
  act.reserve(a->dim());
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Matrix moved = m.action(i) * basis;
    Matrix restricted = linv * moved;
    if (!(basis * restricted == moved)) throw InvariantViolation("submodule: span is not invariant");
    act.push_back(std::move(restricted));
  }
  ModuleRep sub = ModuleRep::trusted(a, basis.cols(), std::move(act));
  return {sub, ModuleMorphism::trusted(sub, m, basis)};
}

KernelResult kernel_module(const ModuleMorphism& f) { return submodule(f.source(), kernel_basis(f.mat()).basis); }

KernelResult image_module(const ModuleMorphism& f) { return submodule(f.target(), image_basis(f.mat()).basis); }

CokernelResult cokernel_module(const ModuleMorphism& f) {
  const ModuleRep& n = f.target();
  const AlgebraPtr& a = n.algebra();
  QuotientPresentation q = quotient(n.dim(), image_basis(f.mat()));
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(q.project * n.action(i) * q.rep_basis);
  ModuleRep c = ModuleRep::trusted(a, q.dim(), std::move(act));
  return {c, ModuleMorphism::trusted(n, c, q.project)};
}

DirectSum direct_sum(const ModuleRep& m, const ModuleRep& n) {
  require_same_algebra(m, n, "direct_sum");
  const PrimeField& f = m.field();
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) act.push_back(block_diag({m.action(i), n.action(i)}));
  ModuleRep s = ModuleRep::trusted(m.algebra(), m.dim() + n.dim(), std::move(act));
  Matrix i1 = vstack(Matrix::identity(f, m.dim()), Matrix(f, n.dim(), m.dim()));
  Matrix i2 = vstack(Matrix(f, m.dim(), n.dim()), Matrix::identity(f, n.dim()));
  return {s, ModuleMorphism::trusted(m, s, i1), ModuleMorphism::trusted(n, s, i2),
          ModuleMorphism::trusted(s, m, i1.transpose()), ModuleMorphism::trusted(s, n, i2.transpose())};
}

ModuleRep direct_sum_of(const std::vector<ModuleRep>& parts) {
  if (parts.empty()) throw InvariantViolation("direct_sum_of: no summands");
  std::vector<Matrix> act;
  std::size_t dim = 0;
  for (const auto& p : parts) dim += p.dim();
  for (std::size_t i = 0; i < parts[0].algebra()->dim(); ++i) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.action(i));
    act.push_back(block_diag(blocks));
  }
  return ModuleRep::trusted(parts[0].algebra(), dim, std::move(act));
}

std::optional<ModuleMorphism> is_split_mono(const ModuleMorphism& f) {
  const ModuleRep& m = f.source();
  HomSpace back(f.target(), m);
  const std::size_t k = back.dim();
  Matrix sys(m.field(), m.dim() * m.dim(), k);
  for (std::size_t j = 0; j < k; ++j) {
    Matrix prod = back.element(j).mat() * f.mat();
    sys.set_block(0, j, prod.reshaped(m.dim() * m.dim(), 1));
  }
  Matrix rhs = Matrix::identity(m.field(), m.dim()).reshaped(m.dim() * m.dim(), 1);
  auto c = solve(sys, rhs);
  if (!c) return std::nullopt;
  return back.combine(*c);
}

std::optional<ModuleMorphism> is_split_epi(const ModuleMorphism& f) {
  const ModuleRep& n = f.target();
  HomSpace back(n, f.source());
  const std::size_t k = back.dim();
  Matrix sys(n.field(), n.dim() * n.dim(), k);
  for (std::size_t j = 0; j < k; ++j) {
    Matrix prod = f.mat() * back.element(j).mat();
    sys.set_block(0, j, prod.reshaped(n.dim() * n.dim(), 1));
  }
  Matrix rhs = Matrix::identity(n.field(), n.dim()).reshaped(n.dim() * n.dim(), 1);
  auto c = solve(sys, rhs);
  if (!c) return std::nullopt;
  return back.combine(*c);
}

bool is_mono(const ModuleMorphism& f) { return rank(f.mat()) == f.source().dim(); }
bool is_epi(const ModuleMorphism& f) { return rank(f.mat()) == f.target().dim(); }
bool is_iso(const ModuleMorphism& f) { return is_mono(f) && is_epi(f); }

ModuleRep free_module(const AlgebraPtr& a, std::size_t rank) {
  if (rank == 0) return ModuleRep::zero(a);
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(block_diag(std::vector<Matrix>(rank, a->left_mult(i))));
  return ModuleRep::trusted(a, rank * a->dim(), std::move(act));
}

ModuleRep restrict_scalars(const ModuleRep& m, const AlgebraPtr& sub, const Matrix& inclusion) {
  std::vector<Matrix> act;
  for (std::size_t c = 0; c < sub->dim(); ++c) act.push_back(m.act(inclusion.column(c)));
  return ModuleRep::trusted(sub, m.dim(), std::move(act));
}

ModuleRep change_basis(const ModuleRep& m, const Matrix& basis) {
  auto inv = inverse(basis);
  if (!inv) throw InvariantViolation("change_basis: singular basis");
  std::vector<Matrix> act;
  for (const auto& a : m.actions()) act.push_back(*inv * a * basis);
  return ModuleRep::trusted(m.algebra(), m.dim(), std::move(act));
}

}  // namespace csplit
