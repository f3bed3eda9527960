#pragma once

#include "pidpp/graph.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pidpp {

struct TreeDecomposition {
  std::size_t vertex_count = 0;
  std::vector<std::vector<int>> bags;          // sorted vertex lists
  std::vector<std::pair<int, int>> tree_edges;  // undirected edges between node ids

  std::size_t node_count() const { return bags.size(); }
  int width() const;
};

enum class DecomposeMode { heuristic, exact };

inline constexpr std::size_t kExactDecomposeCap = 20;

// heuristic: greedy min-fill elimination; exact: optimal elimination order by subset DP (n <= 20).
TreeDecomposition decompose(const SparsityGraph& g, DecomposeMode mode = DecomposeMode::heuristic);

// Decomposition induced by eliminating vertices in the given order.
TreeDecomposition decomposition_from_order(const SparsityGraph& g, const std::vector<int>& order);

// Treewidth by exhaustive elimination-order search (n <= 20).
int exact_treewidth(const SparsityGraph& g);

struct ValidationReport {
  bool ok = true;
  std::string violation;  // "not a tree", "vertex uncovered", "edge uncovered", "subtree disconnected"
  std::string detail;
};

// Checks tree shape, then the three decomposition conditions; reports the first failure.
ValidationReport validate(const SparsityGraph& g, const TreeDecomposition& td);

enum class NodeKind { leaf, introduce, forget, join };
const char* to_string(NodeKind kind);

struct NiceNode {
  NodeKind kind = NodeKind::leaf;
  int vertex = -1;  // introduced or forgotten vertex
  int parent = -1;
  std::vector<int> children;
  std::vector<int> order;  // V_t listed by the node ordering; the bag is the suffix
  std::size_t bag_size = 0;
  std::vector<int> rank;  // position of each vertex in `order`, -1 outside V_t

  std::vector<int> bag() const { return {order.end() - static_cast<long>(bag_size), order.end()}; }
  bool precedes(int u, int v) const { return rank[u] < rank[v]; }
};

struct NiceTreeDecomposition {
  std::size_t vertex_count = 0;
  int root = -1;
  std::vector<NiceNode> nodes;  // children always precede their parent

  int width() const;
  std::size_t join_count() const;
};

// Binary joins; chains forget then introduce vertices in ascending order; leaves introduce
// their bag in ascending order. Throws DecompositionError on an invalid input tree.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

// Structural audit of a nice decomposition: kinds, bags, cumulative sets and orderings.
ValidationReport validate_nice(const NiceTreeDecomposition& ntd);

// Plain decomposition with the bags of a nice one.
TreeDecomposition as_tree_decomposition(const NiceTreeDecomposition& ntd);

// One line per node: `id kind parent bag...` (parent -1 for the root).
std::string format_decomposition(const TreeDecomposition& td);
std::string format_decomposition(const NiceTreeDecomposition& ntd);
// Reads either form back as a plain decomposition; kinds are ignored.
TreeDecomposition parse_decomposition(std::string_view text, std::size_t vertex_count);

}  // namespace pidpp
