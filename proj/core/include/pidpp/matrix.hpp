#pragma once

#include "pidpp/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace pidpp {

// Dense row-major matrix of exact rationals. Immutable after construction
// apart from the explicit builder interface (set) used by generators.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix ones(std::size_t n);
  static Matrix diagonal(const std::vector<Rational>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  // Order of a square matrix.
  std::size_t order() const { return rows_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Rational value);

  const std::vector<Rational>& entries() const { return data_; }

  bool is_symmetric() const;
  Rational max_abs_entry() const;
  // lcm of entry denominators; multiplying by it yields an integer matrix.
  BigInt common_denominator() const;

  // Rows and columns S (kept in the given order, normally ascending).
  Matrix principal_submatrix(const std::vector<int>& subset) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& c, const Matrix& a);
// Entrywise (Hadamard) product.
Matrix hadamard(const Matrix& a, const Matrix& b);

// Integer matrix of the same shape as a rational one, scaled by a common denominator.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> data;
  BigInt scale = 1;  // source = data / scale

  BigInt& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

IntMatrix integer_lift(const Matrix& m);

// m >= 1 square matrices of a common order n.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<Matrix> matrices);
  MatrixTuple(std::initializer_list<Matrix> matrices) : MatrixTuple(std::vector<Matrix>(matrices)) {}

  std::size_t m() const { return mats_.size(); }
  std::size_t n() const { return mats_.empty() ? 0 : mats_.front().order(); }
  const Matrix& operator[](std::size_t i) const { return mats_[i]; }
  const std::vector<Matrix>& matrices() const { return mats_; }
  auto begin() const { return mats_.begin(); }
  auto end() const { return mats_.end(); }

  // Same tuple with matrix i replaced.
  MatrixTuple with(std::size_t i, Matrix replacement) const;

 private:
  std::vector<Matrix> mats_;
};

// `count` copies of A.
MatrixTuple repeat(const Matrix& a, std::size_t count);

}  // namespace pidpp
