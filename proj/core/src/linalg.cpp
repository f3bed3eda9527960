#include "pidpp/linalg.hpp"

#include "pidpp/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace pidpp {

BigInt bareiss_det(std::vector<BigInt>& a, std::size_t k) {
  if (k == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  BigInt t;
  for (std::size_t p = 0; p < k; ++p) {
    if (a[p * k + p] == 0) {
      std::size_t r = p + 1;
      while (r < k && a[r * k + p] == 0) ++r;
      if (r == k) return 0;
      for (std::size_t j = p; j < k; ++j) std::swap(a[p * k + j], a[r * k + j]);
      sign = -sign;
    }
    const BigInt& piv = a[p * k + p];
    for (std::size_t i = p + 1; i < k; ++i) {
      const BigInt& aip = a[i * k + p];
      for (std::size_t j = p + 1; j < k; ++j) {
        BigInt& aij = a[i * k + j];
        aij *= piv;
        t = aip * a[p * k + j];
        aij -= t;
        mpz_divexact(aij.get_mpz_t(), aij.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = piv;
  }
  return sign > 0 ? BigInt(a[k * k - 1]) : BigInt(-a[k * k - 1]);
}

Rational det(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.order();
  if (n == 0) return 1;
  IntMatrix lift = integer_lift(m);
  BigInt d = bareiss_det(lift.data, n);
  Rational out(d, pow(lift.scale, n));
  out.canonicalize();
  return out;
}

Rational principal_minor(const Matrix& m, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw InvalidArgument("repeated index in principal minor");
  }
  return det(m.principal_submatrix(subset));
}

Rational permanent(const Matrix& m, std::size_t cap) {
  if (!m.is_square()) throw DimensionError("permanent of a non-square matrix");
  const std::size_t n = m.order();
  if (n > cap) {
    throw CapExceeded("permanent of order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  if (n == 0) return 1;
  IntMatrix a = integer_lift(m);
  // Ryser with Gray-code updates of the row sums over the column subset.
  std::vector<BigInt> row_sum(n, 0);
  BigInt total = 0, prod;
  const unsigned long long limit = 1ull << n;
  unsigned long long gray = 0;
  for (unsigned long long step = 1; step < limit; ++step) {
    const int j = __builtin_ctzll(step);
    const unsigned long long bit = 1ull << j;
    const bool added = !(gray & bit);
    gray ^= bit;
    for (std::size_t i = 0; i < n; ++i) {
      if (added) {
        row_sum[i] += a(i, j);
      } else {
        row_sum[i] -= a(i, j);
      }
    }
    prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= row_sum[i];
    if ((__builtin_popcountll(gray) & 1) == (n & 1)) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  Rational out(total, pow(a.scale, n));
  out.canonicalize();
  return out;
}

std::size_t rank(const Matrix& m) {
  IntMatrix a = integer_lift(m);
  const std::size_t rows = a.rows, cols = a.cols;
  std::size_t r = 0;
  BigInt prev = 1, t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) *= a(r, c);
        t = a(i, c) * a(r, j);
        a(i, j) -= t;
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.order();
  std::vector<Rational> a(m.entries());
  std::vector<Rational> inv = Matrix::identity(n).entries();
  Rational f;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p * n + c] == 0) ++p;
    if (p == n) throw InvalidArgument("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[p * n + j], a[c * n + j]);
        std::swap(inv[p * n + j], inv[c * n + j]);
      }
    }
    const Rational piv = a[c * n + c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c * n + j] /= piv;
      inv[c * n + j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i * n + c] == 0) continue;
      const Rational factor = a[i * n + c];
      for (std::size_t j = 0; j < n; ++j) {
        f = factor * a[c * n + j];
        a[i * n + j] -= f;
        f = factor * inv[c * n + j];
        inv[i * n + j] -= f;
      }
    }
  }
  return Matrix(n, n, std::move(inv));
}

LdlFactorization ldl_factor(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("LDL of a non-square matrix");
  if (!m.is_symmetric()) throw NotPsdError("LDL requires a symmetric matrix");
  const std::size_t n = m.order();
  std::vector<Rational> w(m.entries());
  std::vector<Rational> l = Matrix::identity(n).entries();
  LdlFactorization out;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = static_cast<int>(i);
  out.diag.assign(n, 0);
  Rational t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && w[p * n + p] == 0) ++p;
    if (p == n) {
      // All remaining pivots vanish; a PSD Schur complement must then be zero.
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          if (w[i * n + j] != 0) throw NotPsdError("zero pivot with nonzero off-diagonal entry: not PSD");
        }
      }
      break;
    }
    if (w[p * n + p] < 0) throw NotPsdError("negative pivot: not PSD");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w[p * n + j], w[k * n + j]);
      for (std::size_t i = 0; i < n; ++i) std::swap(w[i * n + p], w[i * n + k]);
      for (std::size_t j = 0; j < k; ++j) std::swap(l[p * n + j], l[k * n + j]);
      std::swap(out.perm[p], out.perm[k]);
    }
    const Rational d = w[k * n + k];
    out.diag[k] = d;
    ++out.rank;
    for (std::size_t i = k + 1; i < n; ++i) l[i * n + k] = w[i * n + k] / d;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w[i * n + k] == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        t = l[i * n + k] * w[k * n + j];
        w[i * n + j] -= t;
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      w[i * n + k] = 0;
      w[k * n + i] = 0;
    }
  }
  out.lower = Matrix(n, n, std::move(l));
  return out;
}

LowRankFactorization low_rank_factor(const Matrix& m, std::size_t r) {
  LdlFactorization f = ldl_factor(m);
  if (f.rank > r) {
    throw InvalidArgument("rank " + std::to_string(f.rank) + " exceeds requested width " + std::to_string(r));
  }
  const std::size_t n = m.order();
  Matrix u(n, r), v(n, r);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t row = static_cast<std::size_t>(f.perm[k]);
    for (std::size_t c = 0; c < f.rank; ++c) {
      const Rational& lkc = f.lower(k, c);
      if (lkc == 0) continue;
      u.set(row, c, lkc * f.diag[c]);
      v.set(row, c, lkc);
    }
  }
  return {std::move(u), std::move(v), r};
}

HadamardBound hadamard_upper_bound(const MatrixTuple& t) {
  HadamardBound b;
  const std::size_t n = t.n(), m = t.m();
  for (const auto& a : t) {
    Rational x = a.max_abs_entry();
    if (x > b.max_entry) b.max_entry = x;
  }
  const Rational mprime = b.max_entry > 1 ? b.max_entry : Rational(1);
  BigInt root = ceil_sqrt(pow(BigInt(static_cast<unsigned long>(n)), n * m));
  b.upper = Rational(BigInt(1) << static_cast<mp_bitcnt_t>(n)) * pow(mprime, n * m) * Rational(root);
  return b;
}

MatrixTuple block_diag_power(const MatrixTuple& t, std::size_t copies) {
  if (copies == 0) throw InvalidArgument("block_diag_power needs at least one copy");
  const std::size_t n = t.n();
  std::vector<Matrix> out;
  for (const auto& a : t) {
    Matrix big(n * copies, n * copies);
    for (std::size_t b = 0; b < copies; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (a(i, j) != 0) big.set(b * n + i, b * n + j, a(i, j));
        }
      }
    }
    out.push_back(std::move(big));
  }
  return MatrixTuple(std::move(out));
}

SparsityGraph sparsity_graph(const Matrix& m) { return sparsity_union(MatrixTuple({m})); }

SparsityGraph sparsity_union(const MatrixTuple& t) {
  const std::size_t n = t.n();
  SparsityGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const auto& a : t) {
        if (a(i, j) != 0 || a(j, i) != 0) {
          g.add_edge(static_cast<int>(i), static_cast<int>(j));
          break;
        }
      }
    }
  }
  return g;
}

}  // namespace pidpp
