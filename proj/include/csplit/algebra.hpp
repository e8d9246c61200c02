#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csplit/field.hpp"
#include "csplit/matrix.hpp"

namespace csplit {

/// Raw structure-constant data: e_i * e_j = sum_k constants[(i*dim + j)*dim + k] e_k.
struct AlgebraData {
  PrimeField field;
  std::size_t dim;
  std::vector<std::int64_t> constants;
  std::vector<std::int64_t> unit;
  std::string name;
  /// Optional basis (columns) of a two-sided nilpotent ideal. Used to pick small
  /// generating sets for free covers; omitted means the zero ideal.
  std::optional<Matrix> nilpotent_ideal;
};

struct AlgebraViolation {
  enum class Kind { kShape, kEmpty, kAssociativity, kUnit, kIdeal };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string message;
};

/// First violated law, or nullopt if `data` is a unital associative algebra.
std::optional<AlgebraViolation> validate(const AlgebraData& data);

/// A finite-dimensional unital associative algebra over F_p, validated on construction.
class Algebra {
 public:
  /// Throws InvalidInput with the violation report.
  explicit Algebra(AlgebraData data);

  const PrimeField& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  PrimeField::Elem constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dim_ + j) * dim_ + k];
  }
  /// Coordinates of 1 (dim x 1).
  const Matrix& unit() const { return unit_; }
  /// Matrix of left multiplication by e_i: column j holds e_i * e_j.
  const Matrix& left_mult(std::size_t i) const { return left_mult_[i]; }
  /// Matrix of right multiplication by e_j: column i holds e_i * e_j.
  Matrix right_mult(std::size_t j) const;
  /// Product of two coordinate column vectors.
  Matrix multiply(const Matrix& a, const Matrix& b) const;
  /// Columns span a nilpotent two-sided ideal (possibly zero).
  const Matrix& nilpotent_ideal() const { return ideal_; }

  AlgebraData data() const;

 private:
  PrimeField field_;
  std::size_t dim_;
  std::vector<PrimeField::Elem> constants_;
  Matrix unit_;
  std::string name_;
  std::vector<Matrix> left_mult_;
  Matrix ideal_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// F_p[x]/(x^n), basis 1, x, ..., x^{n-1}.
AlgebraPtr make_truncated_poly(std::uint32_t p, std::size_t n);
/// F_p[C_n], basis t^0, ..., t^{n-1}.
AlgebraPtr make_cyclic_group_algebra(std::uint32_t p, std::size_t n);

/// Lower triangular 2x2 matrices over `a`. Basis index block*d + i with
/// block 0 = E11 (x) e_i, 1 = E21 (x) e_i, 2 = E22 (x) e_i.
AlgebraPtr triangular(const AlgebraPtr& a);
enum class TriBlock : std::size_t { kE11 = 0, kE21 = 1, kE22 = 2 };
inline std::size_t tri_index(TriBlock b, std::size_t i, std::size_t d) {
  return static_cast<std::size_t>(b) * d + i;
}

/// A unital algebra map sub -> big together with a basis of big as a free
/// sub-module.
struct AlgebraEmbedding {
  AlgebraPtr sub;
  AlgebraPtr big;
  Matrix inclusion;   // big.dim x sub.dim
  Matrix free_basis;  // big.dim x rank, columns are elements of big
  /// Matrix of (s_1..s_rank) -> sum_k free_basis_k * s_k, invertible.
  Matrix right_structure;

  std::size_t rank() const { return free_basis.cols(); }
};

/// Reason the data fails to be an embedding making `big` free over `sub`
/// (on both sides), or nullopt.
std::optional<std::string> validate_embedding(const AlgebraPtr& sub, const AlgebraPtr& big,
                                              const Matrix& inclusion, const Matrix& free_basis);
/// Throws InvalidInput when validate_embedding reports a problem.
AlgebraEmbedding make_embedding(const AlgebraPtr& sub, const AlgebraPtr& big, const Matrix& inclusion,
                                const Matrix& free_basis);

/// F_p[C_m] -> F_p[C_n], t_m -> t_n^{n/m}, free basis 1, t_n, ..., t_n^{n/m - 1}.
AlgebraEmbedding cyclic_subgroup_embedding(std::uint32_t p, std::size_t n, std::size_t m);

}  // namespace csplit
