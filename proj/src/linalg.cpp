#include "csplit/linalg.hpp"

#include <utility>

#include "csplit/errors.hpp"

namespace csplit {

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  const PrimeField& f = a.field();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(piv, k), a(r, k));
    Matrix::Elem* prow = a.row_ptr(r);
    const Matrix::Elem s = f.inv(prow[c]);
    if (s != 1)
      for (std::size_t k = c; k < cols; ++k) prow[k] = f.mul(prow[k], s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Matrix::Elem* row = a.row_ptr(i);
      const Matrix::Elem factor = row[c];
      if (factor == 0) continue;
      const Matrix::Elem nf = f.neg(factor);
      for (std::size_t k = c; k < cols; ++k)
        if (prow[k] != 0) row[k] = f.add(row[k], f.mul(nf, prow[k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InvariantViolation("solve: row mismatch");
  const std::size_t n = a.cols();
  Matrix x(a.field(), n, b.cols());
  if (a.rows() == 0) return x;
  auto res = rref(hstack(a, b));
  for (std::size_t i = 0; i < res.rank; ++i) {
    const std::size_t pc = res.pivots[i];
    if (pc >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(pc, j) = res.form(i, n + j);
  }
  return x;
}

Subspace kernel_basis(const Matrix& m) {
  const std::size_t n = m.cols();
  const PrimeField& f = m.field();
  auto res = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : res.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(f, n, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const std::size_t fc = free_cols[j];
    basis(fc, j) = 1;
    for (std::size_t i = 0; i < res.rank; ++i) basis(res.pivots[i], j) = f.neg(res.form(i, fc));
  }
  return {n, std::move(basis)};
}

Subspace image_basis(const Matrix& m) {
  auto res = rref(m);
  return {m.rows(), m.columns(res.pivots)};
}

Subspace span_of(const Matrix& m) { return image_basis(m); }

Subspace zero_subspace(PrimeField f, std::size_t ambient) { return {ambient, Matrix(f, ambient, 0)}; }

Subspace full_subspace(PrimeField f, std::size_t ambient) { return {ambient, Matrix::identity(f, ambient)}; }

bool in_span(const Subspace& s, const Matrix& vectors) {
  if (vectors.cols() == 0) return true;
  return rank(hstack(s.basis, vectors)) == s.dim();
}

bool same_subspace(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim || a.dim() != b.dim()) return false;
  return in_span(a, b.basis);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  // Solve a*x = b*y, i.e. kernel of [a | -b].
  if (a.dim() == 0 || b.dim() == 0) return zero_subspace(a.basis.field(), a.ambient_dim);
  auto k = kernel_basis(hstack(a.basis, -b.basis));
  Matrix coeffs = k.basis.block(0, 0, a.dim(), k.dim());
  return image_basis(a.basis * coeffs);
}

QuotientPresentation quotient(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim != ambient_dim) throw InvariantViolation("quotient: ambient mismatch");
  const PrimeField& f = s.basis.field();
  auto res = rref(s.basis.transpose());
  if (res.rank != s.dim()) throw InvariantViolation("quotient: subspace basis is dependent");
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto c : res.pivots) is_pivot[c] = true;
  std::vector<std::size_t> reps;
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) reps.push_back(c);
  Matrix rep_basis = Matrix::identity(f, ambient_dim).columns(reps);
  // [S | R] is invertible; the R-rows of its inverse project onto the quotient.
  Matrix w = hstack(s.basis, rep_basis);
  auto winv = inverse(w);
  if (!winv) throw InvariantViolation("quotient: complement matrix singular");
  Matrix project = winv->block(s.dim(), 0, reps.size(), ambient_dim);
  return {ambient_dim, s, std::move(rep_basis), std::move(project)};
}

Matrix operator_of_hom_action(const Matrix& left, const Matrix& right, std::size_t m, std::size_t n) {
  if (left.rows() != m || left.cols() != m || right.rows() != n || right.cols() != n)
    throw InvariantViolation("operator_of_hom_action: shape mismatch");
  const PrimeField& f = left.field();
  Matrix op(f, m * n, m * n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t row = r * n + c;
      for (std::size_t k = 0; k < m; ++k) op(row, k * n + c) = f.add(op(row, k * n + c), left(r, k));
      for (std::size_t l = 0; l < n; ++l) op(row, r * n + l) = f.sub(op(row, r * n + l), right(l, c));
    }
  return op;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix::identity(m.field(), m.rows()));
}

Matrix left_inverse(const Matrix& m) {
  auto x = solve(m.transpose(), Matrix::identity(m.field(), m.cols()));
  if (!x) throw InvariantViolation("left_inverse: matrix lacks full column rank");
  return x->transpose();
}

Subquotient make_subquotient(const Subspace& numerator, const Subspace& denominator) {
  Matrix linv = left_inverse(numerator.basis);
  // Denominator in numerator coordinates.
  Matrix den_coords = linv * denominator.basis;
  if (!(numerator.basis * den_coords == denominator.basis))
    throw InvariantViolation("subquotient: denominator not contained in numerator");
  Subspace den_sub = span_of(den_coords);
  QuotientPresentation inner = quotient(numerator.dim(), den_sub);
  Matrix project = inner.project * linv;
  Matrix reps = numerator.basis * inner.rep_basis;
  return {numerator, denominator, std::move(inner), std::move(project), std::move(reps)};
}

}  // namespace csplit
