#include "subprod/matrix.hpp"

#include <utility>

#include "subprod/checked.hpp"
#include "subprod/errors.hpp"

namespace subprod {

Matrix::Matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "Matrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::int64_t> Matrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<std::int64_t> Matrix::col(std::size_t j) const {
  std::vector<std::int64_t> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "multiply: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = checked::add(c(i, j), checked::mul(aik, b(k, j)));
    }
  return c;
}

std::vector<std::int64_t> multiply(const Matrix& a, const std::vector<std::int64_t>& x) {
  require(a.cols() == x.size(), "multiply: dimension mismatch");
  std::vector<std::int64_t> y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] = checked::add(y[i], checked::mul(a(i, j), x[j]));
  return y;
}

std::int64_t determinant(const Matrix& m) {
  require(m.rows() == m.cols(), "determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Matrix a = m;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 num = static_cast<__int128>(a(i, j)) * a(k, k) - static_cast<__int128>(a(i, k)) * a(k, j);
        const __int128 q = num / prev;
        if (q > INT64_MAX || q < INT64_MIN) throw OverflowError("determinant: overflow");
        a(i, j) = static_cast<std::int64_t>(q);
      }
    prev = a(k, k);
  }
  return checked::mul(sign, a(n - 1, n - 1));
}

}  // namespace subprod
