#pragma once

#include "pidpp/graph.hpp"
#include "pidpp/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pidpp {

// Edge-indexed pair: A_ij = 1 iff edges i, j share a left vertex, B_ij = 1 iff they
// share a right vertex. Z_2(A, B) counts the matchings of H.
std::pair<Matrix, Matrix> matching_matrices(const BipartiteGraphSpec& h);

// Edge-indexed triple for a directed graph: A_ij = 1 iff edges i, j share a head,
// B_ij = 1 iff they share a tail, C = M L^+ M^T the spanning-tree marginal kernel of the
// underlying multigraph (M the signed incidence matrix, L = M^T M).
// Z_{3,n-1}(A, B, C) > 0 iff G has a Hamiltonian path.
// Throws InvalidArgument when the underlying graph is disconnected or has loops.
MatrixTuple hamiltonian_gadget(const DirectedGraphSpec& g);

// B_ij = 1 iff i and j lie in the same group. Throws InvalidArgument unless the groups
// partition [n].
Matrix partition_matrix(const std::vector<std::vector<int>>& groups, std::size_t n);

// Gram matrix of vectors v_i supported on coordinates i..i+b, so entries vanish beyond
// band b. With a rank cap r only r evenly spaced coordinates are kept. Deterministic
// per seed. Throws InvalidArgument unless b < n.
Matrix banded_random(std::size_t n, std::size_t b, std::optional<std::size_t> rank_cap, std::uint64_t seed);

// Seeded generators. Integers are drawn by modular reduction of the 64-bit stream so
// outputs do not depend on the standard library's distributions.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [lo, hi].
  long integer(long lo, long hi);
  bool coin(unsigned num, unsigned den) { return integer(0, den - 1) < static_cast<long>(num); }
  // numerator in [-range, range], denominator in [1, max_den].
  Rational rational(long range, long max_den);
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

Matrix random_matrix(std::size_t n, FixtureRng& rng, long range = 3, long max_den = 3);
// Random entries on the diagonal and on the edges of g (symmetric pattern, values may differ).
Matrix random_pattern_matrix(const SparsityGraph& g, FixtureRng& rng, long range = 3, long max_den = 3);
// G G^T with G an n x r rational matrix: symmetric PSD of rank <= r.
Matrix random_psd(std::size_t n, std::size_t r, FixtureRng& rng, long range = 3, long max_den = 2);
// Symmetric PSD with the sparsity of g: sum over edges and vertices of rank-one terms
// supported on the edge (or vertex).
Matrix random_psd_on_graph(const SparsityGraph& g, FixtureRng& rng, long range = 3);

BipartiteGraphSpec random_bipartite(std::size_t left, std::size_t right, std::size_t max_edges, FixtureRng& rng);
DirectedGraphSpec random_digraph(std::size_t n, unsigned edge_num, unsigned edge_den, FixtureRng& rng);
DirectedGraphSpec random_tournament(std::size_t n, FixtureRng& rng);
// Every tournament on n vertices, by orienting the pairs (i < j) per bitmask.
std::vector<DirectedGraphSpec> all_tournaments(std::size_t n);
// Edges {i, j} with 0 < |i - j| <= b.
SparsityGraph band_graph(std::size_t n, std::size_t b);

// Graph text formats: `n m` then m lines `u v` (directed); `nL nR m` then m lines `l r`
// (bipartite). Vertices are 0-based; `#` starts a comment line.
DirectedGraphSpec parse_directed_graph(std::string_view text);
BipartiteGraphSpec parse_bipartite_graph(std::string_view text);
std::string format_directed_graph(const DirectedGraphSpec& g);
std::string format_bipartite_graph(const BipartiteGraphSpec& h);

}  // namespace pidpp
