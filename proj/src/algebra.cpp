#include "csplit/algebra.hpp"

#include <sstream>

#include "csplit/errors.hpp"
#include "csplit/linalg.hpp"

namespace csplit {

namespace {

std::vector<Matrix> build_left_mult(const PrimeField& f, std::size_t d,
                                    const std::vector<PrimeField::Elem>& c) {
  std::vector<Matrix> out;
  out.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix m(f, d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) m(k, j) = c[(i * d + j) * d + k];
    out.push_back(std::move(m));
  }
  return out;
}

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << ")";
  return os.str();
}

// Checks that the columns of `ideal` span a two-sided ideal with ideal^m = 0 for some m <= dim.
std::optional<std::string> check_ideal(const PrimeField& f, std::size_t d,
                                       const std::vector<Matrix>& left, const Matrix& ideal) {
  if (ideal.rows() != d) return "nilpotent ideal basis has wrong row count";
  if (ideal.cols() == 0) return std::nullopt;
  if (rank(ideal) != ideal.cols()) return "nilpotent ideal basis is dependent";
  Subspace span{d, ideal};
  auto mult = [&](const Matrix& a, const Matrix& b) {
    Matrix out(f, d, 1);
    for (std::size_t i = 0; i < d; ++i)
      if (a(i, 0) != 0) out += (left[i] * b).scaled(a(i, 0));
    return out;
  };
  for (std::size_t c = 0; c < ideal.cols(); ++c) {
    Matrix v = ideal.column(c);
    for (std::size_t i = 0; i < d; ++i) {
      Matrix ei(f, d, 1);
      ei(i, 0) = 1;
      if (!in_span(span, mult(ei, v)) || !in_span(span, mult(v, ei))) return "ideal is not two-sided";
    }
  }
  // Powers: I^{m+1} = span{a*b : a in I^m, b in I}.
  Matrix power = ideal;
  for (std::size_t step = 0; step <= d; ++step) {
    if (power.cols() == 0) return std::nullopt;
    std::vector<Matrix> prods;
    for (std::size_t a = 0; a < power.cols(); ++a)
      for (std::size_t b = 0; b < ideal.cols(); ++b) prods.push_back(mult(power.column(a), ideal.column(b)));
    power = image_basis(hstack(prods)).basis;
  }
  return "ideal is not nilpotent";
}

}  // namespace

std::optional<AlgebraViolation> validate(const AlgebraData& data) {
  using K = AlgebraViolation::Kind;
  const std::size_t d = data.dim;
  if (d == 0) return AlgebraViolation{K::kEmpty, 0, 0, 0, "zero-dimensional algebra has no unit"};
  if (data.constants.size() != d * d * d || data.unit.size() != d)
    return AlgebraViolation{K::kShape, 0, 0, 0, "structure constants or unit have the wrong length"};
  const PrimeField& f = data.field;
  std::vector<PrimeField::Elem> c(data.constants.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.reduce(data.constants[i]);
  auto left = build_left_mult(f, d, c);
  // (e_i e_j) e_k = e_i (e_j e_k).
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Matrix lhs(f, d, 1), rhs(f, d, 1);
        for (std::size_t m = 0; m < d; ++m) {
          const auto cij = c[(i * d + j) * d + m];
          if (cij != 0)
            for (std::size_t n = 0; n < d; ++n)
              lhs(n, 0) = f.add(lhs(n, 0), f.mul(cij, c[(m * d + k) * d + n]));
          const auto cjk = c[(j * d + k) * d + m];
          if (cjk != 0)
            for (std::size_t n = 0; n < d; ++n)
              rhs(n, 0) = f.add(rhs(n, 0), f.mul(cjk, c[(i * d + m) * d + n]));
        }
        if (!(lhs == rhs))
          return AlgebraViolation{K::kAssociativity, i, j, k, "associativity fails on basis triple " + triple(i, j, k)};
      }
  // u e_i = e_i = e_i u.
  for (std::size_t i = 0; i < d; ++i) {
    Matrix lu(f, d, 1), ru(f, d, 1);
    for (std::size_t m = 0; m < d; ++m) {
      const auto um = f.reduce(data.unit[m]);
      if (um == 0) continue;
      for (std::size_t n = 0; n < d; ++n) {
        lu(n, 0) = f.add(lu(n, 0), f.mul(um, c[(m * d + i) * d + n]));
        ru(n, 0) = f.add(ru(n, 0), f.mul(um, c[(i * d + m) * d + n]));
      }
    }
    for (std::size_t n = 0; n < d; ++n) {
      const PrimeField::Elem want = n == i ? 1 : 0;
      if (lu(n, 0) != want || ru(n, 0) != want)
        return AlgebraViolation{K::kUnit, i, 0, 0, "unit law fails on basis element " + std::to_string(i)};
    }
  }
  if (data.nilpotent_ideal) {
    if (auto why = check_ideal(f, d, left, *data.nilpotent_ideal))
      return AlgebraViolation{K::kIdeal, 0, 0, 0, *why};
  }
  return std::nullopt;
}

Algebra::Algebra(AlgebraData data)
    : field_(data.field), dim_(data.dim), unit_(data.field, data.dim, 1), name_(data.name),
      ideal_(data.field, data.dim, 0) {
  if (auto v = validate(data)) throw InvalidInput("invalid algebra '" + data.name + "': " + v->message);
  constants_.resize(data.constants.size());
  for (std::size_t i = 0; i < constants_.size(); ++i) constants_[i] = field_.reduce(data.constants[i]);
  for (std::size_t i = 0; i < dim_; ++i) unit_(i, 0) = field_.reduce(data.unit[i]);
  left_mult_ = build_left_mult(field_, dim_, constants_);
  if (data.nilpotent_ideal) ideal_ = *data.nilpotent_ideal;
}

Matrix Algebra::right_mult(std::size_t j) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) m(k, i) = constant(i, j, k);
  return m;
}

Matrix Algebra::multiply(const Matrix& a, const Matrix& b) const {
  Matrix out(field_, dim_, 1);
  for (std::size_t i = 0; i < dim_; ++i)
    if (a(i, 0) != 0) out += (left_mult_[i] * b).scaled(a(i, 0));
  return out;
}

AlgebraData Algebra::data() const {
  AlgebraData d{field_, dim_, {}, {}, name_, std::nullopt};
  d.constants.assign(constants_.begin(), constants_.end());
  for (std::size_t i = 0; i < dim_; ++i) d.unit.push_back(unit_(i, 0));
  if (ideal_.cols() > 0) d.nilpotent_ideal = ideal_;
  return d;
}

AlgebraPtr make_truncated_poly(std::uint32_t p, std::size_t n) {
  PrimeField f(p);
  if (n < 1) throw InvalidInput("truncated polynomial algebra needs n >= 1");
  AlgebraData d{f, n, std::vector<std::int64_t>(n * n * n, 0), std::vector<std::int64_t>(n, 0),
                "F_" + std::to_string(p) + "[x]/x^" + std::to_string(n), std::nullopt};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) d.constants[(i * n + j) * n + (i + j)] = 1;
  d.unit[0] = 1;
  Matrix ideal(f, n, n - 1);
  for (std::size_t i = 1; i < n; ++i) ideal(i, i - 1) = 1;
  d.nilpotent_ideal = ideal;
  return std::make_shared<const Algebra>(std::move(d));
}

AlgebraPtr make_cyclic_group_algebra(std::uint32_t p, std::size_t n) {
  PrimeField f(p);
  if (n < 1) throw InvalidInput("cyclic group algebra needs n >= 1");
  AlgebraData d{f, n, std::vector<std::int64_t>(n * n * n, 0), std::vector<std::int64_t>(n, 0),
                "F_" + std::to_string(p) + "[C_" + std::to_string(n) + "]", std::nullopt};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d.constants[(i * n + j) * n + (i + j) % n] = 1;
  d.unit[0] = 1;
  // n = p^a * m with p not dividing m; (t^m - 1) generates a nilpotent ideal
  // ((t^m - 1)^{p^a} = t^n - 1 = 0).
  std::size_t m = n;
  while (m % p == 0) m /= p;
  if (m != n) {
    Matrix gens(f, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      gens(j, j) = f.sub(gens(j, j), 1);
      gens((j + m) % n, j) = f.add(gens((j + m) % n, j), 1);
    }
    d.nilpotent_ideal = image_basis(gens).basis;
  }
  return std::make_shared<const Algebra>(std::move(d));
}

AlgebraPtr triangular(const AlgebraPtr& a) {
  const std::size_t d = a->dim();
  const std::size_t n = 3 * d;
  const PrimeField& f = a->field();
  AlgebraData t{f, n, std::vector<std::int64_t>(n * n * n, 0), std::vector<std::int64_t>(n, 0),
                "T2(" + a->name() + ")", std::nullopt};
  // Matrix units (row, col) per block: E11=(1,1), E21=(2,1), E22=(2,2).
  const int rows[3] = {1, 2, 2};
  const int cols[3] = {1, 1, 2};
  auto block_of = [&](int r, int c) -> int {
    for (int b = 0; b < 3; ++b)
      if (rows[b] == r && cols[b] == c) return b;
    return -1;
  };
  for (int b1 = 0; b1 < 3; ++b1)
    for (int b2 = 0; b2 < 3; ++b2) {
      if (cols[b1] != rows[b2]) continue;
      const int b = block_of(rows[b1], cols[b2]);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k) {
            const auto c = a->constant(i, j, k);
            if (c == 0) continue;
            t.constants[((b1 * d + i) * n + (b2 * d + j)) * n + (b * d + k)] = c;
          }
    }
  for (std::size_t i = 0; i < d; ++i) {
    t.unit[i] = a->unit()(i, 0);
    t.unit[2 * d + i] = a->unit()(i, 0);
  }
  // Radical of T: E11 (x) I + E21 (x) A + E22 (x) I for a nilpotent ideal I of A.
  const Matrix& ia = a->nilpotent_ideal();
  Matrix ideal(f, n, 2 * ia.cols() + d);
  for (std::size_t c = 0; c < ia.cols(); ++c)
    for (std::size_t r = 0; r < d; ++r) {
      ideal(r, c) = ia(r, c);
      ideal(2 * d + r, ia.cols() + c) = ia(r, c);
    }
  for (std::size_t i = 0; i < d; ++i) ideal(d + i, 2 * ia.cols() + i) = 1;
  t.nilpotent_ideal = ideal;
  return std::make_shared<const Algebra>(std::move(t));
}

namespace {

bool is_unital_hom(const AlgebraPtr& sub, const AlgebraPtr& big, const Matrix& inc) {
  if (!(inc * sub->unit() == big->unit())) return false;
  const PrimeField& f = sub->field();
  for (std::size_t i = 0; i < sub->dim(); ++i)
    for (std::size_t j = 0; j < sub->dim(); ++j) {
      Matrix ei(f, sub->dim(), 1), ej(f, sub->dim(), 1);
      ei(i, 0) = 1;
      ej(j, 0) = 1;
      if (!(inc * sub->multiply(ei, ej) == big->multiply(inc * ei, inc * ej))) return false;
    }
  return true;
}

// Columns (k, c) hold free_basis_k * inc(e_c) (right) or inc(e_c) * free_basis_k (left).
Matrix structure_matrix(const AlgebraPtr& sub, const AlgebraPtr& big, const Matrix& inc, const Matrix& basis,
                        bool right) {
  const PrimeField& f = sub->field();
  const std::size_t ds = sub->dim();
  Matrix m(f, big->dim(), basis.cols() * ds);
  for (std::size_t k = 0; k < basis.cols(); ++k)
    for (std::size_t c = 0; c < ds; ++c) {
      Matrix s = inc.column(c);
      Matrix b = basis.column(k);
      m.set_block(0, k * ds + c, right ? big->multiply(b, s) : big->multiply(s, b));
    }
  return m;
}

}  // namespace

std::optional<std::string> validate_embedding(const AlgebraPtr& sub, const AlgebraPtr& big,
                                              const Matrix& inclusion, const Matrix& free_basis) {
  if (!(sub->field() == big->field())) return "sub and big algebras live over different fields";
  if (inclusion.rows() != big->dim() || inclusion.cols() != sub->dim())
    return "inclusion matrix has the wrong shape";
  if (free_basis.rows() != big->dim()) return "free basis has the wrong row count";
  if (!is_unital_hom(sub, big, inclusion)) return "inclusion is not a unital algebra map";
  if (rank(inclusion) != sub->dim()) return "ring map is not injective, so induction along it is not exact";
  if (free_basis.cols() * sub->dim() != big->dim())
    return "big algebra is not free over sub of the stated rank, so induction is not exact";
  for (bool right : {true, false}) {
    Matrix s = structure_matrix(sub, big, inclusion, free_basis, right);
    if (rank(s) != big->dim())
      return std::string("freeness witness fails: multiplication map is not an isomorphism (") +
             (right ? "right" : "left") + " module structure)";
  }
  return std::nullopt;
}

AlgebraEmbedding make_embedding(const AlgebraPtr& sub, const AlgebraPtr& big, const Matrix& inclusion,
                                const Matrix& free_basis) {
  if (auto why = validate_embedding(sub, big, inclusion, free_basis))
    throw InvalidInput("invalid embedding " + sub->name() + " -> " + big->name() + ": " + *why);
  return {sub, big, inclusion, free_basis, structure_matrix(sub, big, inclusion, free_basis, true)};
}

AlgebraEmbedding cyclic_subgroup_embedding(std::uint32_t p, std::size_t n, std::size_t m) {
  if (m == 0 || n == 0 || n % m != 0)
    throw InvalidInput("cyclic subgroup embedding needs m | n (got n=" + std::to_string(n) +
                       ", m=" + std::to_string(m) + ")");
  auto sub = make_cyclic_group_algebra(p, m);
  auto big = make_cyclic_group_algebra(p, n);
  const std::size_t index = n / m;
  Matrix inc(big->field(), n, m);
  for (std::size_t j = 0; j < m; ++j) inc((j * index) % n, j) = 1;
  Matrix basis(big->field(), n, index);
  for (std::size_t k = 0; k < index; ++k) basis(k, k) = 1;
  return make_embedding(sub, big, inc, basis);
}

}  // namespace csplit
