#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace subprod {

/// Dense row-major integer matrix. Dimensions are explicit so that 0 x n and
/// n x 0 matrices are representable.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<std::int64_t> row(std::size_t i) const;
  std::vector<std::int64_t> col(std::size_t j) const;

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Overflow-checked product.
Matrix multiply(const Matrix& a, const Matrix& b);

/// Overflow-checked matrix-vector product.
std::vector<std::int64_t> multiply(const Matrix& a, const std::vector<std::int64_t>& x);

/// Exact determinant of a square matrix by fraction-free elimination (Bareiss).
std::int64_t determinant(const Matrix& m);

}  // namespace subprod
