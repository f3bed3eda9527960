#include "pidpp/fixtures.hpp"

#include "pidpp/errors.hpp"
#include "pidpp/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace pidpp {

std::pair<Matrix, Matrix> matching_matrices(const BipartiteGraphSpec& h) {
  const std::size_t e = h.edges.size();
  Matrix a(e, e), b(e, e);
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j) {
      if (h.edges[i].first == h.edges[j].first) a.set(i, j, 1);
      if (h.edges[i].second == h.edges[j].second) b.set(i, j, 1);
    }
  }
  return {a, b};
}

MatrixTuple hamiltonian_gadget(const DirectedGraphSpec& g) {
  const std::size_t n = g.vertices;
  const std::size_t e = g.edges.size();
  if (n == 0) throw InvalidArgument("graph has no vertices");
  std::set<std::pair<int, int>> seen;
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw InvalidArgument("edge endpoint out of range");
    }
    if (u == v) throw InvalidArgument("loops are not allowed");
    if (!seen.insert({u, v}).second) throw InvalidArgument("duplicate directed edge");
    comp[find(u)] = find(v);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (find(static_cast<int>(v)) != find(0)) throw InvalidArgument("underlying undirected graph is disconnected");
  }
  Matrix a(e, e), b(e, e), m(e, n);
  for (std::size_t i = 0; i < e; ++i) {
    m.set(i, g.edges[i].first, 1);
    m.set(i, g.edges[i].second, -1);
    for (std::size_t j = 0; j < e; ++j) {
      if (g.edges[i].second == g.edges[j].second) a.set(i, j, 1);
      if (g.edges[i].first == g.edges[j].first) b.set(i, j, 1);
    }
  }
  const Matrix l = m.transpose() * m;
  const Rational inv_n(1, static_cast<long>(n));
  const Matrix j = inv_n * Matrix::ones(n);
  const Matrix pinv = inverse(l + j) - j;
  const Matrix c = m * pinv * m.transpose();
  return MatrixTuple({a, b, c});
}

Matrix partition_matrix(const std::vector<std::vector<int>>& groups, std::size_t n) {
  std::vector<int> group_of(n, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int v : groups[g]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw InvalidArgument("group member out of range");
      if (group_of[v] != -1) throw InvalidArgument("groups overlap");
      group_of[v] = static_cast<int>(g);
    }
  }
  if (std::find(group_of.begin(), group_of.end(), -1) != group_of.end()) {
    throw InvalidArgument("groups do not cover every element");
  }
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (group_of[i] == group_of[k]) b.set(i, k, 1);
    }
  }
  return b;
}

long FixtureRng::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(gen_() % span);
}

Rational FixtureRng::rational(long range, long max_den) {
  Rational q(integer(-range, range), integer(1, max_den));
  q.canonicalize();
  return q;
}

Matrix banded_random(std::size_t n, std::size_t b, std::optional<std::size_t> rank_cap, std::uint64_t seed) {
  if (b >= n) throw InvalidArgument("bandwidth must be below n");
  FixtureRng rng(seed);
  const std::size_t dims = n + b;
  std::vector<bool> keep(dims, true);
  if (rank_cap) {
    std::fill(keep.begin(), keep.end(), false);
    const std::size_t r = std::min(*rank_cap, dims);
    for (std::size_t k = 0; k < r; ++k) keep[k * dims / r] = true;
  }
  Matrix g(n, dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = i; c <= i + b; ++c) {
      if (keep[c]) g.set(i, c, rng.integer(-3, 3));
    }
  }
  return g * g.transpose();
}

Matrix random_matrix(std::size_t n, FixtureRng& rng, long range, long max_den) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, rng.rational(range, max_den));
  }
  return a;
}

Matrix random_pattern_matrix(const SparsityGraph& g, FixtureRng& rng, long range, long max_den) {
  const std::size_t n = g.vertex_count();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, rng.rational(range, max_den));
  for (auto [u, v] : g.edges()) {
    a.set(u, v, rng.rational(range, max_den));
    a.set(v, u, rng.rational(range, max_den));
  }
  return a;
}

Matrix random_psd(std::size_t n, std::size_t r, FixtureRng& rng, long range, long max_den) {
  Matrix g(n, r);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < r; ++k) g.set(i, k, rng.rational(range, max_den));
  }
  return g * g.transpose();
}

Matrix random_psd_on_graph(const SparsityGraph& g, FixtureRng& rng, long range) {
  const std::size_t n = g.vertex_count();
  Matrix a(n, n);
  auto add = [&](std::size_t i, std::size_t j, const Rational& x) { a.set(i, j, a(i, j) + x); };
  for (std::size_t v = 0; v < n; ++v) add(v, v, rng.integer(0, range));
  for (auto [u, v] : g.edges()) {
    const Rational x = rng.integer(-range, range);
    const Rational y = rng.integer(-range, range);
    add(u, u, x * x);
    add(v, v, y * y);
    add(u, v, x * y);
    add(v, u, x * y);
  }
  return a;
}

BipartiteGraphSpec random_bipartite(std::size_t left, std::size_t right, std::size_t max_edges, FixtureRng& rng) {
  BipartiteGraphSpec h{left, right, {}};
  std::vector<std::pair<int, int>> all;
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t r = 0; r < right; ++r) all.emplace_back(static_cast<int>(l), static_cast<int>(r));
  }
  // Partial Fisher-Yates with the fixture stream.
  const std::size_t count = std::min<std::size_t>(all.size(), static_cast<std::size_t>(rng.integer(0, static_cast<long>(max_edges))));
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(all[i], all[static_cast<std::size_t>(rng.integer(static_cast<long>(i), static_cast<long>(all.size()) - 1))]);
    h.edges.push_back(all[i]);
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

DirectedGraphSpec random_digraph(std::size_t n, unsigned edge_num, unsigned edge_den, FixtureRng& rng) {
  DirectedGraphSpec g{n, {}};
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && rng.coin(edge_num, edge_den)) g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  return g;
}

DirectedGraphSpec random_tournament(std::size_t n, FixtureRng& rng) {
  DirectedGraphSpec g{n, {}};
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.coin(1, 2)) {
        g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
      } else {
        g.edges.emplace_back(static_cast<int>(v), static_cast<int>(u));
      }
    }
  }
  return g;
}

std::vector<DirectedGraphSpec> all_tournaments(std::size_t n) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  std::vector<DirectedGraphSpec> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    DirectedGraphSpec g{n, {}};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [u, v] = pairs[k];
      if (mask >> k & 1U) std::swap(u, v);
      g.edges.emplace_back(u, v);
    }
    out.push_back(std::move(g));
  }
  return out;
}

SparsityGraph band_graph(std::size_t n, std::size_t b) {
  SparsityGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= i + b && j < n; ++j) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  }
  return g;
}

namespace {

std::vector<long> read_numbers(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<long> out;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("not an integer: '" + tok + "'");
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

DirectedGraphSpec parse_directed_graph(std::string_view text) {
  std::vector<long> x = read_numbers(text);
  if (x.size() < 2 || x[0] < 0 || x[1] < 0) throw ParseError("directed graph needs a header `n m`");
  const auto n = static_cast<std::size_t>(x[0]);
  const auto m = static_cast<std::size_t>(x[1]);
  if (x.size() != 2 + 2 * m) throw ParseError("expected " + std::to_string(m) + " edges");
  DirectedGraphSpec g{n, {}};
  for (std::size_t k = 0; k < m; ++k) {
    const long u = x[2 + 2 * k], v = x[3 + 2 * k];
    if (u < 0 || v < 0 || u >= x[0] || v >= x[0]) throw ParseError("edge endpoint out of range");
    g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

BipartiteGraphSpec parse_bipartite_graph(std::string_view text) {
  std::vector<long> x = read_numbers(text);
  if (x.size() < 3 || x[0] < 0 || x[1] < 0 || x[2] < 0) throw ParseError("bipartite graph needs a header `nL nR m`");
  const auto m = static_cast<std::size_t>(x[2]);
  if (x.size() != 3 + 2 * m) throw ParseError("expected " + std::to_string(m) + " edges");
  BipartiteGraphSpec h{static_cast<std::size_t>(x[0]), static_cast<std::size_t>(x[1]), {}};
  for (std::size_t k = 0; k < m; ++k) {
    const long l = x[3 + 2 * k], r = x[4 + 2 * k];
    if (l < 0 || r < 0 || l >= x[0] || r >= x[1]) throw ParseError("edge endpoint out of range");
    h.edges.emplace_back(static_cast<int>(l), static_cast<int>(r));
  }
  return h;
}

std::string format_directed_graph(const DirectedGraphSpec& g) {
  std::ostringstream out;
  out << g.vertices << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

std::string format_bipartite_graph(const BipartiteGraphSpec& h) {
  std::ostringstream out;
  out << h.left << ' ' << h.right << ' ' << h.edges.size() << '\n';
  for (auto [l, r] : h.edges) out << l << ' ' << r << '\n';
  return out.str();
}

}  // namespace pidpp
