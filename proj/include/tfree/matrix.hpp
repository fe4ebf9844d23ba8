#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tfree/rational.hpp"

namespace tfree {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over Q. Shape is fixed at construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Vector operator*(const Matrix& m, const Vector& v);

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of the right null space, one vector per free column in increasing
/// column order. Each vector has a 1 in its free column.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Throws std::invalid_argument for non-square input.
Rational determinant(Matrix m);

/// Rank of a list of vectors of equal length.
std::size_t rank_of(std::span<const Vector> vectors, std::size_t len);

}  // namespace tfree
