#include "pidpp/errors.hpp"
#include "pidpp/fixtures.hpp"
#include "pidpp/linalg.hpp"
#include "pidpp/matrix_io.hpp"
#include "pidpp/rational.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace pidpp {
namespace {

// Leibniz formula, the definitional determinant.
Rational det_by_permutations(const Matrix& a) {
  const std::size_t n = a.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    }
    Rational term = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

Rational permanent_by_permutations(const Matrix& a) {
  const std::size_t n = a.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    Rational term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Concrete values on the nonzero pattern of the six-vertex example matrix.
Matrix pattern_example() {
  return Matrix{{4, 1, 2, 0, 0, 0},  {1, 5, -1, 2, 1, 0}, {2, -1, 6, 0, 3, 1},
                {0, 2, 0, 3, 1, 0},  {0, 1, 3, 1, 7, 2},  {0, 0, 1, 0, 2, 4}};
}

Matrix reconstruct(const LdlFactorization& f) {
  const std::size_t n = f.lower.order();
  Matrix pm = f.lower * Matrix::diagonal(f.diag) * f.lower.transpose();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.set(f.perm[i], f.perm[j], pm(i, j));
  }
  return out;
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(parse_rational("-2/4")), "-1/2");
  EXPECT_EQ(to_string(Rational(3)), "3");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Rational, RootEnclosures) {
  const RationalInterval exact = root_enclosure(Rational(9, 4), 2, 64);
  EXPECT_TRUE(exact.exact());
  EXPECT_EQ(exact.lo, Rational(3, 2));
  const RationalInterval two = root_enclosure(2, 2, 64);
  EXPECT_LE(two.lo * two.lo, 2);
  EXPECT_GE(two.hi * two.hi, 2);
  EXPECT_LE((two.hi - two.lo) / two.lo, Rational(1, 1) / Rational(BigInt(1) << 64));
  const RationalInterval p = pow_enclosure(4, Rational(3, 2), 64);
  EXPECT_TRUE(p.exact());
  EXPECT_EQ(p.lo, 8);
  EXPECT_EQ(ceil_sqrt(BigInt(16)), 4);
  EXPECT_EQ(ceil_sqrt(BigInt(17)), 5);
  EXPECT_TRUE(at_most_pow2_sqrt(4, 4));
  EXPECT_FALSE(at_most_pow2_sqrt(Rational(41, 10), 4));
}

TEST(Det, Examples) {
  EXPECT_EQ(det(Matrix::identity(3)), 1);
  EXPECT_EQ(det(Matrix{{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(det(Matrix(0, 0)), 1);
}

TEST(Det, MatchesPermutationSum) {
  FixtureRng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Matrix a = random_matrix(n, rng, 5, 4);
    EXPECT_EQ(det(a), det_by_permutations(a)) << format_matrix_text(a);
  }
}

TEST(Det, RejectsNonSquare) { EXPECT_THROW(det(Matrix(2, 3)), DimensionError); }

TEST(PrincipalMinor, Examples) {
  FixtureRng rng(3);
  const Matrix a = random_matrix(4, rng);
  EXPECT_EQ(principal_minor(a, {}), 1);
  EXPECT_EQ(principal_minor(Matrix::ones(2), {0, 1}), 0);
  const Matrix p = pattern_example();
  const Matrix sub{{5, -1, 1}, {-1, 6, 3}, {1, 3, 7}};
  EXPECT_EQ(principal_minor(p, {1, 2, 4}), det_by_permutations(sub));
  EXPECT_EQ(principal_minor(p, {4, 1, 2}), principal_minor(p, {1, 2, 4}));
}

TEST(Permanent, Examples) {
  EXPECT_EQ(permanent(Matrix::identity(5)), 1);
  EXPECT_EQ(permanent(Matrix{{1, 2}, {3, 4}}), 10);
  EXPECT_EQ(permanent(Matrix::ones(3)), 6);
  FixtureRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(1 + trial % 6, rng);
    EXPECT_EQ(permanent(a), permanent_by_permutations(a));
  }
  EXPECT_THROW(permanent(Matrix::identity(13)), CapExceeded);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix::ones(5)), 1U);
  EXPECT_EQ(rank(Matrix::identity(4)), 4U);
  FixtureRng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix u(6, 3), v(6, 3);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        u.set(i, j, rng.rational(3, 2));
        v.set(i, j, rng.rational(3, 2));
      }
    }
    EXPECT_LE(rank(u * v.transpose()), 3U);
  }
}

TEST(Inverse, RoundTrip) {
  const Matrix a{{2, 1}, {1, 2}};
  EXPECT_EQ(a * inverse(a), Matrix::identity(2));
  EXPECT_THROW(inverse(Matrix::ones(2)), InvalidArgument);
}

TEST(Ldl, Examples) {
  const LdlFactorization id = ldl_factor(Matrix::identity(2));
  EXPECT_EQ(id.perm, (std::vector<int>{0, 1}));
  EXPECT_EQ(id.lower, Matrix::identity(2));
  EXPECT_EQ(id.diag, (std::vector<Rational>{1, 1}));

  const LdlFactorization ones = ldl_factor(Matrix::ones(2));
  EXPECT_EQ(ones.diag, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(ones.rank, 1U);

  const Matrix d = Matrix::diagonal({0, 4});
  const LdlFactorization f = ldl_factor(d);
  EXPECT_EQ(f.perm, (std::vector<int>{1, 0}));
  EXPECT_EQ(f.diag.front(), 4);
  EXPECT_EQ(reconstruct(f), d);
}

TEST(Ldl, ReconstructsRandomPsd) {
  FixtureRng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Matrix a = random_psd(n, 1 + trial % n, rng);
    const LdlFactorization f = ldl_factor(a);
    EXPECT_EQ(reconstruct(f), a);
    EXPECT_EQ(f.rank, rank(a));
    const auto nonzero = std::count_if(f.diag.begin(), f.diag.end(), [](const Rational& x) { return x != 0; });
    EXPECT_EQ(static_cast<std::size_t>(nonzero), f.rank);
  }
}

TEST(Ldl, RejectsNonPsd) {
  EXPECT_THROW(ldl_factor(Matrix{{1, 2}, {2, 1}}), NotPsdError);
  EXPECT_THROW(ldl_factor(Matrix{{1, 1}, {0, 1}}), NotPsdError);
  EXPECT_THROW(ldl_factor(Matrix{{0, 1}, {1, 0}}), NotPsdError);
}

TEST(LowRank, Examples) {
  const LowRankFactorization ones = low_rank_factor(Matrix::ones(3), 1);
  ASSERT_EQ(ones.left.cols(), 1U);
  EXPECT_EQ(ones.left * ones.right.transpose(), Matrix::ones(3));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ones.right(i, 0), 1);

  const LowRankFactorization id = low_rank_factor(Matrix::identity(2), 2);
  EXPECT_EQ(id.left * id.right.transpose(), Matrix::identity(2));

  const Matrix vecs{{1, 2}, {-1, 3}, {2, 1}};
  const Matrix gram = vecs * vecs.transpose();
  const LowRankFactorization g = low_rank_factor(gram, 2);
  EXPECT_EQ(g.left * g.right.transpose(), gram);
  EXPECT_THROW(low_rank_factor(gram, 1), InvalidArgument);
}

TEST(Hadamard, Examples) {
  const HadamardBound id = hadamard_upper_bound({Matrix::identity(2)});
  EXPECT_EQ(id.upper, 8);
  EXPECT_GE(id.upper, det(Matrix::identity(2) + Matrix::identity(2)));
  const HadamardBound ones = hadamard_upper_bound({Matrix::ones(2)});
  EXPECT_EQ(ones.upper, 8);
  EXPECT_GE(ones.upper, 3);
  const HadamardBound zero = hadamard_upper_bound({Matrix::zero(3), Matrix::zero(3)});
  EXPECT_EQ(zero.lower, 1);
  EXPECT_GE(zero.upper, 1);
}

TEST(BlockDiagPower, Examples) {
  const MatrixTuple two = block_diag_power({Matrix::identity(2)}, 2);
  EXPECT_EQ(two[0], Matrix::identity(4));
  const Matrix a{{1, 2}, {3, 4}};
  EXPECT_EQ(block_diag_power({a}, 1)[0], a);
  const MatrixTuple three = block_diag_power({a, a.transpose()}, 3);
  EXPECT_EQ(three.m(), 2U);
  EXPECT_EQ(three.n(), 6U);
  EXPECT_EQ(three[0](2, 3), 2);
  EXPECT_EQ(three[0](1, 2), 0);
}

TEST(Sparsity, Examples) {
  EXPECT_EQ(sparsity_union({Matrix::diagonal({1, 2, 3})}).edge_count(), 0U);
  const SparsityGraph g = sparsity_graph(pattern_example());
  EXPECT_EQ(g.vertex_count(), 6U);
  const std::vector<std::pair<int, int>> expected{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 4},
                                                  {2, 4}, {2, 5}, {3, 4}, {4, 5}};
  EXPECT_EQ(g.edges(), expected);
}

TEST(Sparsity, WovenPathsFormGrid) {
  // Two Hamiltonian paths through a 4x4 grid, vertex 4r+c at row r, column c.
  const std::vector<int> path_a{0, 1, 2, 3, 7, 6, 5, 4, 8, 9, 10, 11, 15, 14, 13, 12};
  const std::vector<int> path_b{0, 4, 8, 12, 13, 9, 5, 1, 2, 6, 10, 14, 15, 11, 7, 3};
  auto path_matrix = [](const std::vector<int>& path) {
    Matrix a = Matrix::identity(16);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      a.set(path[i], path[i + 1], 1);
      a.set(path[i + 1], path[i], 1);
    }
    return a;
  };
  const SparsityGraph g = sparsity_union({path_matrix(path_a), path_matrix(path_b)});
  EXPECT_EQ(g.edge_count(), 24U);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (c + 1 < 4) EXPECT_TRUE(g.has_edge(4 * r + c, 4 * r + c + 1));
      if (r + 1 < 4) EXPECT_TRUE(g.has_edge(4 * r + c, 4 * r + c + 4));
    }
  }
}

TEST(ClosedForm, DetOfAPlusIdentityIsMinorSum) {
  FixtureRng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const Matrix a = random_matrix(n, rng);
    Rational sum = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      std::vector<int> s;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) s.push_back(static_cast<int>(i));
      }
      sum += principal_minor(a, s);
    }
    EXPECT_EQ(det(a + Matrix::identity(n)), sum);
  }
}

TEST(MatrixIo, TextRoundTrip) {
  const Matrix a{{1, Rational(-2, 3)}, {Rational(5, 7), 0}};
  EXPECT_EQ(parse_matrix_text(format_matrix_text(a)), a);
  EXPECT_EQ(parse_matrix("# comment\n2\n1 -2/3\n5/7 0\n"), a);
  EXPECT_EQ(parse_matrix_json(format_matrix_json(a)), a);
  EXPECT_EQ(parse_matrix(R"({"n": 2, "entries": [["1", "-2/3"], ["5/7", "0"]]})"), a);
}

TEST(MatrixIo, RejectsMalformed) {
  EXPECT_THROW(parse_matrix_text("2\n1 2\n3\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("2\n1 2\n3 x\n"), ParseError);
  EXPECT_THROW(parse_matrix_text(""), ParseError);
  EXPECT_THROW(parse_matrix_json(R"({"n": 2, "entries": [["1"]]})"), ParseError);
}

TEST(MatrixTuple, RequiresCommonOrder) {
  EXPECT_THROW(MatrixTuple({Matrix::identity(2), Matrix::identity(3)}), DimensionError);
  EXPECT_THROW(MatrixTuple(std::vector<Matrix>{}), InvalidArgument);
}

}  // namespace
}  // namespace pidpp
