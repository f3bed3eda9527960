#pragma once

#include "pidpp/graph.hpp"
#include "pidpp/matrix.hpp"

#include <cstddef>
#include <vector>

namespace pidpp {

// Determinant via Bareiss elimination on the integer lift; det of 0x0 is 1.
Rational det(const Matrix& m);

// det(M[S,S]) with S taken in ascending order; S may be given in any order.
Rational principal_minor(const Matrix& m, std::vector<int> subset);

// Bareiss determinant of a k x k integer matrix stored row-major; destroys `a`.
BigInt bareiss_det(std::vector<BigInt>& a, std::size_t k);

inline constexpr std::size_t kDefaultPermanentCap = 12;

// Ryser's formula. Throws CapExceeded for order above `cap`.
Rational permanent(const Matrix& m, std::size_t cap = kDefaultPermanentCap);

std::size_t rank(const Matrix& m);

// Inverse by Gauss-Jordan elimination; throws InvalidArgument if singular.
Matrix inverse(const Matrix& m);

// P M P^T = L D L^T with row k of P M P^T equal to row perm[k] of M.
struct LdlFactorization {
  std::vector<int> perm;
  Matrix lower;              // unit lower triangular
  std::vector<Rational> diag;  // nonnegative; nonzero entries first
  std::size_t rank = 0;
};

// Symmetric diagonal pivoting (first nonzero remaining diagonal entry).
// Throws NotPsdError on non-symmetric input or when a pivot shows M is not PSD.
LdlFactorization ldl_factor(const Matrix& m);

struct LowRankFactorization {
  Matrix left;   // U, n x r
  Matrix right;  // V, n x r
  std::size_t rank_bound = 0;
};

// M = U V^T with U = P^T L D and V = P^T L restricted to the first rank(M) columns,
// zero-padded to width r. Throws InvalidArgument if rank(M) > r.
LowRankFactorization low_rank_factor(const Matrix& m, std::size_t r);

struct HadamardBound {
  Rational lower = 1;
  Rational upper;
  Rational max_entry;  // M, the largest absolute entry over the tuple
};

// 1 <= Z_m <= 2^n (M'^n n^(n/2))^m with M' = max(M, 1); n^(nm/2) is rounded up
// to an integer when nm is odd, so the bound stays exact and rigorous.
HadamardBound hadamard_upper_bound(const MatrixTuple& t);

// Each matrix replaced by the block-diagonal matrix of t copies of itself.
MatrixTuple block_diag_power(const MatrixTuple& t, std::size_t copies);

// Vertices [n], edge {i,j} for i != j whenever some matrix has a nonzero at (i,j) or (j,i).
SparsityGraph sparsity_union(const MatrixTuple& t);
SparsityGraph sparsity_graph(const Matrix& m);

}  // namespace pidpp
