#include "pidpp/brute.hpp"
#include "pidpp/errors.hpp"
#include "pidpp/fixtures.hpp"
#include "pidpp/linalg.hpp"
#include "pidpp/treewidth_fpt.hpp"

#include <gtest/gtest.h>

#include "semantics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace pidpp {
namespace {

NiceTreeDecomposition nice_for(const MatrixTuple& t) { return make_nice(decompose(sparsity_union(t))); }

TreewidthOptions tracked_full() {
  TreewidthOptions o;
  o.parity = ParityMode::tracked;
  o.size = SizeMode::full;
  return o;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.order() + b.order();
  Matrix out(n, n);
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) out.set(i, j, a(i, j));
  }
  for (std::size_t i = 0; i < b.order(); ++i) {
    for (std::size_t j = 0; j < b.order(); ++j) out.set(a.order() + i, a.order() + j, b(i, j));
  }
  return out;
}

using testing::definitional_table;
using testing::TableKey;

TEST(TreewidthDp, LeafTable) {
  const MatrixTuple t{Matrix::identity(2)};
  const TreewidthDp dp(t, nice_for(t), tracked_full());
  int leaf = -1;
  for (std::size_t id = 0; id < dp.decomposition().nodes.size(); ++id) {
    if (dp.decomposition().nodes[id].kind == NodeKind::leaf) leaf = static_cast<int>(id);
  }
  ASSERT_GE(leaf, 0);
  const auto entries = dp.decode(dp.leaf(leaf));
  ASSERT_EQ(entries.size(), 1U);
  EXPECT_EQ(entries[0].s, 0U);
  EXPECT_EQ(entries[0].value, 1);
  EXPECT_EQ(entries[0].configs, std::vector<Configuration>{Configuration{}});
}

TEST(TreewidthDp, ClosedForms) {
  const Rational c(5, 3);
  EXPECT_EQ(zm_treewidth({Matrix{{c}}}, tracked_full()), 1 + c);
  const Rational a(-2, 7), b(4);
  EXPECT_EQ(zm_treewidth({Matrix::diagonal({a, b})}, tracked_full()), (1 + a) * (1 + b));
  EXPECT_EQ(zm_treewidth({Matrix::identity(2), Matrix::identity(2)}), 4);
  const Matrix a1{{1, 2}, {-1, 3}};
  const Matrix a2{{2, 0, 1}, {1, 1, 0}, {0, 3, -1}};
  const Matrix blocks = block_diagonal(a1, a2);
  // Empty middle bag, so the nice form joins the two blocks' subtrees.
  TreeDecomposition td;
  td.vertex_count = 5;
  td.bags = {{}, {0, 1}, {2, 3, 4}};
  td.tree_edges = {{0, 1}, {0, 2}};
  const NiceTreeDecomposition ntd = make_nice(td);
  EXPECT_EQ(ntd.join_count(), 1U);
  EXPECT_EQ(zm_treewidth({blocks}, ntd), det(a1 + Matrix::identity(2)) * det(a2 + Matrix::identity(3)));
}

TEST(TreewidthDp, MatchingFixtureOnPath) {
  const auto [a, b] = matching_matrices({1, 2, {{0, 0}, {0, 1}}});
  EXPECT_EQ(zm_treewidth({a, b}), 3);
}

TEST(TreewidthDp, DeterminantIdentityRandom) {
  FixtureRng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 10;
    // Dense up to order 6, banded beyond.
    const Matrix a = n <= 6 ? random_matrix(n, rng) : random_pattern_matrix(band_graph(n, 2), rng);
    EXPECT_EQ(zm_treewidth({a}), det(a + Matrix::identity(n)));
  }
}

TEST(TreewidthDp, GridPatternPair) {
  // 2x2 grid: the 4-cycle 0-1-3-2-0.
  SparsityGraph g(4);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {3, 2}, {2, 0}}) g.add_edge(u, v);
  FixtureRng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple t{random_pattern_matrix(g, rng), random_pattern_matrix(g, rng)};
    for (auto mode : {ParityMode::folded, ParityMode::tracked}) {
      TreewidthOptions o;
      o.parity = mode;
      o.size = trial % 2 ? SizeMode::full : SizeMode::parity;
      EXPECT_EQ(zm_treewidth(t, o), z_m_brute(t));
    }
  }
}

TEST(TreewidthDp, MatchesBruteOnRandomTuples) {
  FixtureRng rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const std::size_t m = 1 + trial % 3;
    SparsityGraph g = band_graph(n, 1 + trial % 2);
    if (trial % 4 == 3) {
      // Disjoint triangles: block-diagonal sparsity.
      g = SparsityGraph(n);
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n && v / 3 == u / 3; ++v) g.add_edge(static_cast<int>(u), static_cast<int>(v));
      }
    }
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < m; ++i) mats.push_back(random_pattern_matrix(g, rng));
    const MatrixTuple t(mats);
    EXPECT_EQ(zm_treewidth(t), z_m_brute(t));
  }
}

TEST(TreewidthDp, PerSizeTotals) {
  FixtureRng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const SparsityGraph g = band_graph(n, 1);
    const MatrixTuple t{random_pattern_matrix(g, rng), random_pattern_matrix(g, rng)};
    EXPECT_EQ(zmk_treewidth(t, nice_for(t)), z_mk_brute_all(t));
  }
}

// Stored entries equal the definitional sums over subsets and consistent bijections.
TEST(TreewidthDp, TableSemantics) {
  FixtureRng rng(89);
  std::size_t compared = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 3 + trial % 3;
    const std::size_t m = 1 + trial % 2;
    const SparsityGraph g = band_graph(n, 1 + trial % 2);
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < m; ++i) mats.push_back(random_pattern_matrix(g, rng, 2, 2));
    const MatrixTuple t(mats);
    const TreewidthDp dp(t, nice_for(t), tracked_full());
    std::vector<DpTable> tables;
    dp.run(&tables);
    for (const DpTable& table : tables) {
      const NiceNode& node = dp.decomposition().nodes[table.node];
      std::map<TableKey, Rational> got;
      for (const DpEntry& e : dp.decode(table)) got[{e.configs, e.s}] += e.value;
      const auto want = definitional_table(t, node);
      EXPECT_EQ(got, want) << "node " << table.node << " kind " << to_string(node.kind);
      compared += want.size();
    }
  }
  EXPECT_GT(compared, 1000U);
}

TEST(TreewidthDp, JoinOfEmptySubtrees) {
  // Two empty leaves joined below the introduce/forget pair of a single vertex.
  const MatrixTuple t{Matrix::identity(1)};
  NiceTreeDecomposition joined;
  joined.vertex_count = 1;
  NiceNode l1, l2, j, intro, root;
  l1.rank = l2.rank = j.rank = {-1};
  j.kind = NodeKind::join;
  j.children = {0, 1};
  l1.parent = l2.parent = 2;
  j.parent = 3;
  intro.kind = NodeKind::introduce;
  intro.vertex = 0;
  intro.children = {2};
  intro.parent = 4;
  intro.order = {0};
  intro.bag_size = 1;
  intro.rank = {0};
  root.kind = NodeKind::forget;
  root.vertex = 0;
  root.children = {3};
  root.order = {0};
  root.rank = {0};
  joined.nodes = {l1, l2, j, intro, root};
  joined.root = 4;
  ASSERT_TRUE(validate_nice(joined).ok) << validate_nice(joined).detail;
  const TreewidthDp jdp(t, joined, tracked_full());
  const DpTable out = jdp.join_update(jdp.leaf(0), jdp.leaf(1), 2);
  const auto entries = jdp.decode(out);
  ASSERT_EQ(entries.size(), 1U);
  EXPECT_EQ(entries[0].value, 1);
  EXPECT_EQ(entries[0].s, 0U);
  EXPECT_EQ(jdp.total(), 2);
}

TEST(TreewidthDp, ForgetOfZeroTableIsZero) {
  const MatrixTuple t{Matrix{{1, 1}, {1, 1}}};
  const TreewidthDp dp(t, nice_for(t), tracked_full());
  std::vector<DpTable> tables;
  dp.run(&tables);
  for (std::size_t id = 0; id < tables.size(); ++id) {
    const NiceNode& node = dp.decomposition().nodes[id];
    if (node.kind != NodeKind::forget) continue;
    DpTable zero = tables[node.children[0]];
    for (auto& [key, vals] : zero.entries) std::fill(vals.begin(), vals.end(), 0);
    const DpTable out = dp.forget_update(zero, static_cast<int>(id));
    for (const auto& [key, vals] : out.entries) {
      for (const BigInt& v : vals) EXPECT_EQ(v, 0);
    }
  }
}

TEST(TreewidthDp, OrderingIndependence) {
  FixtureRng rng(97);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const SparsityGraph g = band_graph(n, 2);
    const MatrixTuple t{random_pattern_matrix(g, rng), random_pattern_matrix(g, rng)};
    const Rational reference = zm_treewidth(t);
    for (int k = 0; k < 3; ++k) {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng.engine());
      const NiceTreeDecomposition ntd = make_nice(decomposition_from_order(sparsity_union(t), order));
      EXPECT_EQ(zm_treewidth(t, ntd), reference);
      EXPECT_EQ(zm_treewidth(t, ntd, tracked_full()), reference);
    }
  }
}

TEST(TreewidthDp, RejectsUncoveredEntries) {
  const MatrixTuple sparse{Matrix::identity(3)};
  const NiceTreeDecomposition ntd = nice_for(sparse);
  const Matrix dense{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_THROW(TreewidthDp({dense}, ntd), DecompositionError);
}

TEST(TreewidthDp, BudgetAndTrace) {
  FixtureRng rng(101);
  const MatrixTuple t{random_psd(4, 4, rng), random_psd(4, 4, rng)};
  TreewidthOptions tight;
  tight.max_keys = 10;
  EXPECT_THROW(zm_treewidth(t, tight), BudgetExceeded);
  std::ostringstream trace;
  TreewidthOptions traced;
  traced.trace = &trace;
  const NiceTreeDecomposition ntd = nice_for(t);
  zm_treewidth(t, ntd, traced);
  const std::string text = trace.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), ntd.nodes.size());
  EXPECT_NE(text.find("keys="), std::string::npos);
  EXPECT_NE(text.find("bits="), std::string::npos);
}

TEST(PermanentalSum, Examples) {
  const MatrixTuple ids{Matrix::identity(2), Matrix::identity(2)};
  EXPECT_EQ(permanental_sum(ids, nice_for(ids)), 4);
  const MatrixTuple ones{Matrix::ones(2), Matrix::ones(2)};
  EXPECT_EQ(permanental_sum(ones, nice_for(ones)), 7);
  FixtureRng rng(103);
  for (int trial = 0; trial < 3; ++trial) {
    const MatrixTuple t{random_matrix(5, rng), random_matrix(5, rng)};
    EXPECT_EQ(permanental_sum(t, nice_for(t)), permanental_sum_brute(t));
  }
}

TEST(PermanentalSum, OtherTupleSizesNeedTheFlag) {
  FixtureRng rng(107);
  const SparsityGraph g = band_graph(5, 2);
  const MatrixTuple t{random_pattern_matrix(g, rng), random_pattern_matrix(g, rng), random_pattern_matrix(g, rng)};
  EXPECT_THROW(permanental_sum(t, nice_for(t)), InvalidArgument);
  EXPECT_EQ(permanental_sum(t, nice_for(t), true), permanental_sum_brute(t));
}

}  // namespace
}  // namespace pidpp
