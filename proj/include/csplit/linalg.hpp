#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "csplit/matrix.hpp"

namespace csplit {

struct RrefResult {
  Matrix form;
  std::size_t rank;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

/// Reduced row echelon form. Pivots are taken in the leftmost column that has a
/// nonzero entry at or below the current row; the first such row is used.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// One X with a*X = b: the particular solution with all free variables zero.
/// std::nullopt means the system is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Column space of `basis` inside F_p^ambient_dim. Columns are independent.
struct Subspace {
  std::size_t ambient_dim;
  Matrix basis;

  std::size_t dim() const { return basis.cols(); }
};

Subspace kernel_basis(const Matrix& m);
/// Pivot columns of m.
Subspace image_basis(const Matrix& m);
/// Independent subset (pivot columns) of the columns of m, as a subspace of F_p^rows.
Subspace span_of(const Matrix& m);
Subspace zero_subspace(PrimeField f, std::size_t ambient);
Subspace full_subspace(PrimeField f, std::size_t ambient);

bool in_span(const Subspace& s, const Matrix& vectors);
bool same_subspace(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

struct QuotientPresentation {
  std::size_t ambient_dim;
  Subspace subspace;
  Matrix rep_basis;  // ambient x q, chosen coset representatives
  Matrix project;    // q x ambient

  std::size_t dim() const { return rep_basis.cols(); }
};

/// Representatives are the standard basis vectors at the non-pivot coordinates
/// of the subspace basis.
QuotientPresentation quotient(std::size_t ambient_dim, const Subspace& s);

/// Matrix of phi -> left*phi - phi*right on m x n matrices phi, flattened row-major.
Matrix operator_of_hom_action(const Matrix& left, const Matrix& right, std::size_t m, std::size_t n);

std::optional<Matrix> inverse(const Matrix& m);
/// L with L*m = I for m of full column rank.
Matrix left_inverse(const Matrix& m);

/// A subquotient `numerator / denominator` of F_p^ambient (denominator inside numerator),
/// with coordinates: `project` sends a vector of the numerator to its class coordinates,
/// `reps` holds one representative per class basis vector.
struct Subquotient {
  Subspace numerator;
  Subspace denominator;
  QuotientPresentation inner;  // quotient of numerator coordinates by denominator
  Matrix project;              // dim x ambient; only meaningful on the numerator
  Matrix reps;                 // ambient x dim

  std::size_t dim() const { return reps.cols(); }
  std::size_t ambient_dim() const { return numerator.ambient_dim; }
};

Subquotient make_subquotient(const Subspace& numerator, const Subspace& denominator);

}  // namespace csplit
