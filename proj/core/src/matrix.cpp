#include "pidpp/matrix.hpp"

#include "pidpp/errors.hpp"

#include <string>
#include <utility>

namespace pidpp {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionError("entry count does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    for (const auto& x : row) data_.push_back(x);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::ones(std::size_t n) {
  Matrix m(n, n);
  for (auto& x : m.data_) x = 1;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Rational>& diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * diag.size() + i] = diag[i];
  return m;
}

const Rational& Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  return data_[i * cols_ + j];
}

void Matrix::set(std::size_t i, std::size_t j, Rational value) {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  data_[i * cols_ + j] = std::move(value);
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

Rational Matrix::max_abs_entry() const {
  Rational best = 0;
  for (const auto& x : data_) {
    if (abs(x) > best) best = abs(x);
  }
  return best;
}

BigInt Matrix::common_denominator() const { return pidpp::common_denominator(data_); }

Matrix Matrix::principal_submatrix(const std::vector<int>& subset) const {
  if (!is_square()) throw DimensionError("principal submatrix of a non-square matrix");
  const std::size_t k = subset.size();
  Matrix out(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    if (subset[a] < 0 || static_cast<std::size_t>(subset[a]) >= rows_) {
      throw InvalidArgument("index " + std::to_string(subset[a]) + " out of range");
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) out.data_[a * k + b] = (*this)(subset[a], subset[b]);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = (*this)(i, j);
  }
  return out;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  std::vector<Rational> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  std::vector<Rational> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("inner dimensions differ");
  std::vector<Rational> e(a.rows() * b.cols());
  Rational t;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        t = aik * b(k, j);
        e[i * b.cols() + j] += t;
      }
    }
  }
  return Matrix(a.rows(), b.cols(), std::move(e));
}

Matrix operator*(const Rational& c, const Matrix& a) {
  std::vector<Rational> e(a.entries());
  for (auto& x : e) x *= c;
  return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  std::vector<Rational> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] *= b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(e));
}

IntMatrix integer_lift(const Matrix& m) {
  IntMatrix out;
  out.rows = m.rows();
  out.cols = m.cols();
  out.scale = m.common_denominator();
  out.data.resize(m.entries().size());
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const Rational& x = m.entries()[i];
    out.data[i] = x.get_num() * (out.scale / x.get_den());
  }
  return out;
}

MatrixTuple::MatrixTuple(std::vector<Matrix> matrices) : mats_(std::move(matrices)) {
  if (mats_.empty()) throw InvalidArgument("a matrix tuple needs at least one matrix");
  const std::size_t n = mats_.front().rows();
  for (const auto& a : mats_) {
    if (!a.is_square()) throw DimensionError("tuple matrices must be square");
    if (a.order() != n) throw DimensionError("tuple matrices must share one order");
  }
}

MatrixTuple MatrixTuple::with(std::size_t i, Matrix replacement) const {
  std::vector<Matrix> copy = mats_;
  copy.at(i) = std::move(replacement);
  return MatrixTuple(std::move(copy));
}

MatrixTuple repeat(const Matrix& a, std::size_t count) {
  return MatrixTuple(std::vector<Matrix>(count, a));
}

}  // namespace pidpp
