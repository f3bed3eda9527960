#include "pidpp/brute.hpp"
#include "pidpp/errors.hpp"
#include "pidpp/fixtures.hpp"
#include "pidpp/rank_fpt.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace pidpp {
namespace {

Matrix permuted(const Matrix& a, const std::vector<int>& p) {
  Matrix out(a.order(), a.order());
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) out.set(i, j, a(p[i], p[j]));
  }
  return out;
}

TEST(SharedSubset, Examples) {
  EXPECT_EQ(shared_subset_sum({Matrix(4, 0)}, {{}}), 1);
  EXPECT_EQ(shared_subset_sum({Matrix(5, 1, std::vector<Rational>(5, 1))}, {{0}}), 5);
}

TEST(SharedSubset, MatchesEnumeration) {
  FixtureRng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a(4, 2), b(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        a.set(i, j, rng.rational(3, 3));
        b.set(i, j, rng.rational(3, 3));
      }
    }
    const std::vector<std::vector<int>> perms{{1, 0}, {0, 1}};
    Rational expected = 0;
    for (int o1 = 0; o1 < 4; ++o1) {
      for (int o2 = o1 + 1; o2 < 4; ++o2) {
        expected += a(o1, 1) * a(o2, 0) * b(o1, 0) * b(o2, 1);
      }
    }
    EXPECT_EQ(shared_subset_sum({a, b}, perms), expected);
  }
}

TEST(SharedSubset, FirstRowIsRowProduct) {
  FixtureRng rng(7);
  Matrix a(5, 3), b(5, 3);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      a.set(i, j, rng.rational(4, 2));
      b.set(i, j, rng.rational(4, 2));
    }
  }
  const DpGrid dp = shared_subset_table({a, b}, {{2, 0, 1}, {1, 2, 0}});
  ASSERT_EQ(dp.size(), 3U);
  for (std::size_t o = 0; o < 5; ++o) EXPECT_EQ(dp[0][o], a(o, 2) * b(o, 1));
  EXPECT_THROW(shared_subset_sum({Matrix(2, 3)}, {{0, 1, 2}}), InvalidArgument);
}

TEST(ZmRank, Examples) {
  EXPECT_EQ(zm_rank({Matrix::ones(3), Matrix::ones(3)}), 4);
  EXPECT_EQ(zm_rank({Matrix::ones(3), Matrix::ones(3)}), z_m_brute({Matrix::ones(3), Matrix::ones(3)}));
  EXPECT_EQ(zm_rank({Matrix::identity(2), Matrix::identity(2)}), 4);
  FixtureRng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixTuple t{random_psd(6, 2, rng), random_psd(6, 2, rng)};
    EXPECT_EQ(zm_rank(t), z_m_brute(t));
  }
}

TEST(ZmRank, MatchesBruteOnMixedRanks) {
  FixtureRng rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const std::size_t m = 1 + trial % 3;
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < m; ++i) mats.push_back(random_psd(n, 1 + (trial + i) % 3, rng));
    const MatrixTuple t(mats);
    EXPECT_EQ(zm_rank(t), z_m_brute(t));
  }
}

TEST(ZmRank, InvariantUnderRelabeling) {
  FixtureRng rng(47);
  const MatrixTuple t{random_psd(6, 3, rng), random_psd(6, 2, rng)};
  std::vector<int> p(6);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng.engine());
  EXPECT_EQ(zm_rank(t), zm_rank({permuted(t[0], p), permuted(t[1], p)}));
}

TEST(ZmRank, Errors) {
  EXPECT_THROW(zm_rank({Matrix{{1, 2}, {2, 1}}}), NotPsdError);
  RankOptions tight;
  tight.budget = 3;
  EXPECT_THROW(zm_rank({Matrix::identity(4), Matrix::identity(4)}, tight), BudgetExceeded);
  EXPECT_GT(rank_work_estimate({4, 4}), 3);
}

}  // namespace
}  // namespace pidpp
