#include "pidpp/brute.hpp"
#include "pidpp/errors.hpp"
#include "pidpp/fixtures.hpp"
#include "pidpp/linalg.hpp"
#include "pidpp/matrix_io.hpp"
#include "pidpp/treedecomp.hpp"

#include <gtest/gtest.h>

namespace pidpp {
namespace {

std::vector<int> members(std::uint64_t mask, std::size_t n) {
  std::vector<int> s;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) s.push_back(static_cast<int>(i));
  }
  return s;
}

TEST(MatchingMatrices, Examples) {
  const auto [a1, b1] = matching_matrices({1, 1, {{0, 0}}});
  EXPECT_EQ(a1, Matrix{{1}});
  EXPECT_EQ(b1, Matrix{{1}});
  EXPECT_EQ(z_m_brute({a1, b1}), 2);
  const BipartiteGraphSpec p3{1, 2, {{0, 0}, {0, 1}}};
  const auto [a, b] = matching_matrices(p3);
  EXPECT_EQ(a, Matrix::ones(2));
  EXPECT_EQ(b, Matrix::identity(2));
  EXPECT_EQ(z_m_brute({a, b}), count_matchings_brute(p3));
  EXPECT_EQ(z_m_brute({a, b}), 3);
}

TEST(MatchingMatrices, CountsMatchingsBySize) {
  FixtureRng rng(181);
  for (int trial = 0; trial < 25; ++trial) {
    const BipartiteGraphSpec h = random_bipartite(3 + trial % 3, 3 + trial % 2, 8, rng);
    const auto [a, b] = matching_matrices(h);
    const MatrixTuple t{a, b};
    EXPECT_EQ(z_m_brute(t), count_matchings_brute(h));
    const auto by_size = z_mk_brute_all(t);
    for (std::size_t k = 0; k < by_size.size(); ++k) EXPECT_EQ(by_size[k], count_k_matchings_brute(h, k));
  }
}

TEST(HamiltonianGadget, Examples) {
  const MatrixTuple path = hamiltonian_gadget({3, {{0, 1}, {1, 2}}});
  EXPECT_EQ(path.m(), 3U);
  EXPECT_GT(z_mk_brute(path, 2), 0);
  const MatrixTuple star = hamiltonian_gadget({4, {{0, 1}, {0, 2}, {0, 3}}});
  EXPECT_EQ(z_mk_brute(star, 3), 0);
  EXPECT_THROW(hamiltonian_gadget({4, {{0, 1}, {2, 3}}}), InvalidArgument);
  EXPECT_THROW(hamiltonian_gadget({2, {{0, 1}, {0, 1}}}), InvalidArgument);
  EXPECT_THROW(hamiltonian_gadget({2, {{0, 0}, {0, 1}}}), InvalidArgument);
}

TEST(HamiltonianGadget, PositivityMatchesPathSearch) {
  std::size_t yes = 0, no = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& g : all_tournaments(n)) {
      const bool positive = z_mk_brute(hamiltonian_gadget(g), n - 1) > 0;
      EXPECT_EQ(positive, has_hamiltonian_path_brute(g));
    }
  }
  FixtureRng rng(191);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 3;
    const DirectedGraphSpec g = random_digraph(n, 1, 3, rng);
    try {
      const bool positive = z_mk_brute(hamiltonian_gadget(g), n - 1) > 0;
      const bool path = has_hamiltonian_path_brute(g);
      EXPECT_EQ(positive, path);
      (path ? yes : no) += 1;
    } catch (const InvalidArgument&) {
      // Disconnected underlying graph.
    }
  }
  EXPECT_GT(yes, 0U);
  EXPECT_GT(no, 0U);
}

TEST(HamiltonianGadget, SpanningTreeKernelMinorsInUnitInterval) {
  FixtureRng rng(193);
  for (int trial = 0; trial < 6; ++trial) {
    const DirectedGraphSpec g = random_tournament(3 + trial % 2, rng);
    const Matrix c = hamiltonian_gadget(g)[2];
    EXPECT_TRUE(c.is_symmetric());
    for (std::uint64_t mask = 0; mask < (1ULL << c.order()); ++mask) {
      const Rational d = principal_minor(c, members(mask, c.order()));
      EXPECT_GE(d, 0);
      EXPECT_LE(d, 1);
    }
  }
}

TEST(PartitionMatrix, Examples) {
  EXPECT_EQ(partition_matrix({{0}, {1}, {2}}, 3), Matrix::identity(3));
  EXPECT_EQ(partition_matrix({{0, 1, 2, 3}}, 4), Matrix::ones(4));
  const Matrix b = partition_matrix({{0, 1}, {2, 3}}, 4);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    const bool transversal = ((mask & 3U) != 3U) && ((mask & 12U) != 12U);
    EXPECT_EQ(principal_minor(b, members(mask, 4)), transversal ? 1 : 0);
  }
  EXPECT_THROW(partition_matrix({{0, 1}, {1, 2}}, 3), InvalidArgument);
  EXPECT_THROW(partition_matrix({{0}}, 2), InvalidArgument);
}

TEST(PartitionMatrix, MinorsAreZeroOrOne) {
  FixtureRng rng(197);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 6 + trial;
    std::vector<std::vector<int>> groups(3);
    for (std::size_t v = 0; v < n; ++v) groups[static_cast<std::size_t>(rng.integer(0, 2))].push_back(static_cast<int>(v));
    std::erase_if(groups, [](const auto& g) { return g.empty(); });
    const Matrix b = partition_matrix(groups, n);
    for (const auto& sm : subset_masses({b})) EXPECT_TRUE(sm.mass == 0 || sm.mass == 1);
  }
}

TEST(BandedRandom, Examples) {
  const Matrix d = banded_random(6, 0, std::nullopt, 1);
  EXPECT_EQ(sparsity_graph(d).edge_count(), 0U);
  EXPECT_LE(decompose(sparsity_graph(d)).width(), 1);

  const Matrix a = banded_random(20, 2, std::nullopt, 9);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 20; ++j) {
      if (i > j + 2 || j > i + 2) EXPECT_EQ(a(i, j), 0);
    }
  }
  EXPECT_LE(decompose(sparsity_graph(a)).width(), 4);
  EXPECT_NO_THROW(ldl_factor(a));
  EXPECT_EQ(format_matrix_text(a), format_matrix_text(banded_random(20, 2, std::nullopt, 9)));
  EXPECT_NE(format_matrix_text(a), format_matrix_text(banded_random(20, 2, std::nullopt, 10)));

  const Matrix low = banded_random(12, 2, 3, 4);
  EXPECT_LE(rank(low), 3U);
  EXPECT_NO_THROW(ldl_factor(low));
}

TEST(RandomGenerators, ShapesAndDeterminism) {
  FixtureRng r1(7), r2(7);
  EXPECT_EQ(random_matrix(4, r1), random_matrix(4, r2));
  const Matrix psd = random_psd(6, 2, r1);
  EXPECT_EQ(rank(psd), ldl_factor(psd).rank);
  EXPECT_LE(rank(psd), 2U);
  const SparsityGraph band = band_graph(7, 2);
  EXPECT_EQ(band.edge_count(), 11U);
  const Matrix pat = random_psd_on_graph(band, r1);
  for (auto [u, v] : sparsity_graph(pat).edges()) EXPECT_TRUE(band.has_edge(u, v));
  EXPECT_NO_THROW(ldl_factor(pat));
  const DirectedGraphSpec t = random_tournament(5, r1);
  EXPECT_EQ(t.edges.size(), 10U);
  EXPECT_EQ(all_tournaments(3).size(), 8U);
  const BipartiteGraphSpec h = random_bipartite(3, 4, 6, r1);
  EXPECT_LE(h.edges.size(), 6U);
  for (auto [x, y] : h.edges) {
    EXPECT_LT(x, 3);
    EXPECT_LT(y, 4);
  }
}

TEST(GraphText, RoundTrip) {
  const DirectedGraphSpec g{4, {{0, 1}, {2, 3}, {3, 0}}};
  const DirectedGraphSpec g2 = parse_directed_graph(format_directed_graph(g));
  EXPECT_EQ(g2.vertices, g.vertices);
  EXPECT_EQ(g2.edges, g.edges);
  const DirectedGraphSpec g3 = parse_directed_graph("# tail head\n3 2\n0 1\n1 2\n");
  EXPECT_EQ(g3.edges, (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}));

  const BipartiteGraphSpec h{2, 3, {{0, 2}, {1, 0}}};
  const BipartiteGraphSpec h2 = parse_bipartite_graph(format_bipartite_graph(h));
  EXPECT_EQ(h2.left, 2U);
  EXPECT_EQ(h2.right, 3U);
  EXPECT_EQ(h2.edges, h.edges);

  EXPECT_THROW(parse_directed_graph("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_directed_graph("3 1\n0 5\n"), ParseError);
  EXPECT_THROW(parse_bipartite_graph("1 1 1\n0 1\n"), ParseError);
}

}  // namespace
}  // namespace pidpp
