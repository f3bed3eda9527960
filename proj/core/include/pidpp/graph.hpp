#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace pidpp {

// Simple undirected graph on vertices 0..n-1 (no loops, no parallel edges).
class SparsityGraph {
 public:
  SparsityGraph() = default;
  explicit SparsityGraph(std::size_t n) : adj_(n) {}

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const;

  // Ignores loops and duplicates.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  // Edges (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::vector<int>> adj_;  // sorted adjacency lists
};

// Directed simple graph on vertices 0..vertices-1.
struct DirectedGraphSpec {
  std::size_t vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (tail, head)
};

// Bipartite graph with left part 0..left-1 and right part 0..right-1.
struct BipartiteGraphSpec {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::pair<int, int>> edges;  // (left vertex, right vertex)
};

}  // namespace pidpp
