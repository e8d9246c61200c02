#include "csplit/matrix.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "csplit/errors.hpp"

namespace csplit {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.field() == b.field()))
    throw InvariantViolation(std::string("shape mismatch in matrix ") + op);
}

}  // namespace

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t nr = rows.size();
  std::size_t nc = nr == 0 ? 0 : rows[0].size();
  Matrix m(field, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (rows[r].size() != nc) throw InvalidInput("ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_rows(PrimeField field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(field, v);
}

Matrix Matrix::column_vector(PrimeField field, const std::vector<std::int64_t>& entries) {
  Matrix m(field, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, entries[i]);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw InvariantViolation("matrix block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
  Matrix b(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j) b(r, j) = (*this)(r, idx[j]);
  return b;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix b(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) b(i, c) = (*this)(idx[i], c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw InvariantViolation("set_block out of range");
  for (std::size_t r = 0; r < m.rows_; ++r)
    for (std::size_t c = 0; c < m.cols_; ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw InvariantViolation("add_block out of range");
  for (std::size_t r = 0; r < m.rows_; ++r)
    for (std::size_t c = 0; c < m.cols_; ++c)
      (*this)(r0 + r, c0 + c) = field_.add((*this)(r0 + r, c0 + c), m(r, c));
}

Matrix Matrix::reshaped(std::size_t rows, std::size_t cols) const {
  if (rows * cols != rows_ * cols_) throw InvariantViolation("reshape changes entry count");
  Matrix m(field_, rows, cols);
  m.data_ = data_;
  return m;
}

bool Matrix::is_zero() const {
  for (Elem e : data_)
    if (e != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix m = *this;
  for (Elem& e : m.data_) e = field_.mul(e, s);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix m = *this;
  m += o;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], o.data_[i]);
  return *this;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_shape(*this, o, "-");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.sub(data_[i], o.data_[i]);
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (Elem& e : m.data_) e = field_.neg(e);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || !(field_ == o.field_)) throw InvariantViolation("shape mismatch in matrix *");
  Matrix m(field_, rows_, o.cols_);
  if (m.data_.empty() || cols_ == 0) return m;
  const std::uint64_t p = field_.p();
  const std::uint64_t sq = (p - 1) * (p - 1);
  // Number of products that can be accumulated before a reduction is needed.
  const std::uint64_t budget = sq == 0 ? std::numeric_limits<std::uint64_t>::max()
                                       : (std::numeric_limits<std::uint64_t>::max() - p) / sq;
  std::vector<std::uint64_t> acc(o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t since = 0;
    const Elem* arow = row_ptr(r);
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = arow[k];
      if (a == 0) continue;
      const Elem* brow = o.row_ptr(k);
      for (std::size_t c = 0; c < o.cols_; ++c) acc[c] += a * brow[c];
      if (++since >= budget) {
        for (auto& x : acc) x %= p;
        since = 0;
      }
    }
    Elem* out = m.row_ptr(r);
    for (std::size_t c = 0; c < o.cols_; ++c) out[c] = static_cast<Elem>(acc[c] % p);
  }
  return m;
}

std::vector<std::vector<std::int64_t>> Matrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << "]";
  }
  os << "] (" << rows_ << "x" << cols_ << " over F_" << field_.p() << ")";
  return os.str();
}

Matrix hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw InvariantViolation("hstack of nothing");
  std::size_t rows = parts[0].rows(), cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw InvariantViolation("hstack row mismatch");
    cols += p.cols();
  }
  Matrix m(parts[0].field(), rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    m.set_block(0, c0, p);
    c0 += p.cols();
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw InvariantViolation("vstack of nothing");
  std::size_t cols = parts[0].cols(), rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw InvariantViolation("vstack column mismatch");
    rows += p.rows();
  }
  Matrix m(parts[0].field(), rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    m.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return m;
}

Matrix hstack(const Matrix& a, const Matrix& b) { return hstack(std::vector<Matrix>{a, b}); }
Matrix vstack(const Matrix& a, const Matrix& b) { return vstack(std::vector<Matrix>{a, b}); }

Matrix block_diag(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw InvariantViolation("block_diag of nothing");
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  Matrix m(parts[0].field(), rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    m.set_block(r0, c0, p);
    r0 += p.rows();
    c0 += p.cols();
  }
  return m;
}

}  // namespace csplit
