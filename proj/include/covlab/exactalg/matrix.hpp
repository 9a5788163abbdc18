#ifndef COVLAB_EXACTALG_MATRIX_HPP
#define COVLAB_EXACTALG_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "covlab/exactalg/ratfn.hpp"

namespace covlab {

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionError("matrix data has wrong size");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transposed() const {
    std::vector<T> out;
    out.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j) {
      for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    }
    return Matrix(cols_, rows_, std::move(out));
  }

  /// Submatrix on the given row and column indices.
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    std::vector<T> out;
    out.reserve(rows.size() * cols.size());
    for (auto i : rows) {
      for (auto j : cols) out.push_back((*this)(i, j));
    }
    return Matrix(rows.size(), cols.size(), std::move(out));
  }

  /// Deletes one row and one column.
  Matrix minor(std::size_t drop_row, std::size_t drop_col) const {
    std::vector<std::size_t> r, c;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != drop_row) r.push_back(i);
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j != drop_col) c.push_back(j);
    }
    return select(r, c);
  }

  template <typename F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  if (a.cols() == 0) throw DimensionError("matrix product with an empty inner dimension");
  std::vector<T> out;
  out.reserve(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      out.push_back(std::move(acc));
    }
  }
  return Matrix<T>(a.rows(), b.cols(), std::move(out));
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum: shapes differ");
  std::vector<T> out;
  out.reserve(a.data().size());
  for (std::size_t k = 0; k < a.data().size(); ++k) out.push_back(a.data()[k] + b.data()[k]);
  return Matrix<T>(a.rows(), a.cols(), std::move(out));
}

using PolyMatrix = Matrix<Poly>;
using RatMatrix = Matrix<RatFn>;

PolyMatrix zero_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols);
PolyMatrix identity_matrix(const RingPtr& ring, std::size_t n);
PolyMatrix scale(const PolyMatrix& m, const Poly& c);
PolyMatrix lift(const PolyMatrix& m, const RingPtr& target);
RatMatrix to_ratfn(const PolyMatrix& m);
bool is_zero(const PolyMatrix& m);
/// Matrix of constants from rational entries.
PolyMatrix constant_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols,
                           const std::vector<Rational>& entries);
Matrix<Rational> evaluate(const PolyMatrix& m, std::span<const Rational> point);
/// Block-diagonal assembly.
PolyMatrix block_diagonal(const RingPtr& ring, const std::vector<PolyMatrix>& blocks);

}  // namespace covlab

#endif  // COVLAB_EXACTALG_MATRIX_HPP
