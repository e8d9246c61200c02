#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "csplit/field.hpp"

namespace csplit {

/// Dense row-major matrix over a prime field. Entries are residues in [0, p).
/// Zero-row and zero-column matrices are ordinary values.
class Matrix {
 public:
  using Elem = PrimeField::Elem;

  Matrix(PrimeField field, std::size_t rows, std::size_t cols);

  static Matrix identity(PrimeField field, std::size_t n);
  /// Integer rows reduced mod p; negative entries allowed.
  static Matrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_rows(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  /// A single column vector.
  static Matrix column_vector(PrimeField field, const std::vector<std::int64_t>& entries);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }

  const std::vector<Elem>& data() const { return data_; }
  Elem* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  const Elem* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }
  Matrix columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& m);

  /// Reinterpret as a rows x cols matrix with the same row-major entries.
  Matrix reshaped(std::size_t rows, std::size_t cols) const;

  bool is_zero() const;
  bool is_identity() const;
  Matrix scaled(Elem s) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Matrix& operator+=(const Matrix& o);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<std::vector<std::int64_t>> to_rows() const;
  std::string to_string() const;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// Block diagonal matrix; also accepts zero-sized blocks.
Matrix block_diag(const std::vector<Matrix>& parts);

}  // namespace csplit
