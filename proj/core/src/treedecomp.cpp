#include "pidpp/treedecomp.hpp"

#include "pidpp/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace pidpp {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag_size) - 1);
  return w;
}

std::size_t NiceTreeDecomposition::join_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const NiceNode& t) { return t.kind == NodeKind::join; }));
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::leaf:
      return "leaf";
    case NodeKind::introduce:
      return "introduce";
    case NodeKind::forget:
      return "forget";
    case NodeKind::join:
      return "join";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& td) {
  std::vector<std::vector<int>> adj(td.node_count());
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Contracts tree edges whose one bag contains the other.
TreeDecomposition simplify(TreeDecomposition td) {
  const std::size_t count = td.node_count();
  std::vector<std::set<int>> adj(count);
  for (auto [a, b] : td.tree_edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<bool> alive(count, true);
  auto subset = [&](int a, int b) {
    return std::includes(td.bags[b].begin(), td.bags[b].end(), td.bags[a].begin(), td.bags[a].end());
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < static_cast<int>(count); ++a) {
      if (!alive[a]) continue;
      for (int b : adj[a]) {
        if (!subset(a, b)) continue;
        // Merge a into b.
        for (int c : adj[a]) {
          if (c == b) continue;
          adj[c].erase(a);
          adj[c].insert(b);
          adj[b].insert(c);
        }
        adj[b].erase(a);
        adj[a].clear();
        alive[a] = false;
        changed = true;
        break;
      }
    }
  }
  std::vector<int> id(count, -1);
  TreeDecomposition out;
  out.vertex_count = td.vertex_count;
  for (std::size_t a = 0; a < count; ++a) {
    if (!alive[a]) continue;
    id[a] = static_cast<int>(out.bags.size());
    out.bags.push_back(td.bags[a]);
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (int b : adj[a]) {
      if (static_cast<int>(a) < b) out.tree_edges.emplace_back(id[a], id[b]);
    }
  }
  return out;
}

int fill_in(const std::vector<std::set<int>>& adj, int v) {
  int fill = 0;
  for (auto i = adj[v].begin(); i != adj[v].end(); ++i) {
    for (auto j = std::next(i); j != adj[v].end(); ++j) {
      if (!adj[*i].count(*j)) ++fill;
    }
  }
  return fill;
}

std::vector<int> min_fill_order(const SparsityGraph& g) {
  const int n = static_cast<int>(g.vertex_count());
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::vector<bool> done(n, false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1, best_fill = 0, best_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      int f = fill_in(adj, v);
      int d = static_cast<int>(adj[v].size());
      if (best < 0 || f < best_fill || (f == best_fill && d < best_deg)) {
        best = v;
        best_fill = f;
        best_deg = d;
      }
    }
    for (int a : adj[best]) {
      for (int b : adj[best]) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(best);
    }
    adj[best].clear();
    done[best] = true;
    order.push_back(best);
  }
  return order;
}

using Mask = std::uint32_t;

int eliminated_degree(const std::vector<Mask>& adj, Mask s, int v) {
  Mask comp = Mask{1} << v;
  Mask reach = adj[v];
  while (true) {
    Mask next = reach & s & ~comp;
    if (!next) break;
    comp |= next;
    for (Mask x = next; x; x &= x - 1) reach |= adj[__builtin_ctz(x)];
  }
  return __builtin_popcount(reach & ~s & ~(Mask{1} << v));
}

std::pair<int, std::vector<int>> exact_order(const SparsityGraph& g) {
  const int n = static_cast<int>(g.vertex_count());
  if (g.vertex_count() > kExactDecomposeCap) {
    throw CapExceeded("exact decomposition limited to " + std::to_string(kExactDecomposeCap) + " vertices");
  }
  if (n == 0) return {-1, {}};
  std::vector<Mask> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::int8_t> tw(full, 0);
  std::vector<std::int8_t> choice(full, -1);
  tw[0] = -1;
  for (std::size_t s = 1; s < full; ++s) {
    int best = 127, pick = -1;
    for (Mask x = static_cast<Mask>(s); x; x &= x - 1) {
      int v = __builtin_ctz(x);
      Mask rest = static_cast<Mask>(s) & ~(Mask{1} << v);
      int prev = tw[rest];
      if (prev >= best) continue;
      int val = std::max(prev, eliminated_degree(adj, rest, v));
      if (val < best) {
        best = val;
        pick = v;
      }
    }
    tw[s] = static_cast<std::int8_t>(best);
    choice[s] = static_cast<std::int8_t>(pick);
  }
  std::vector<int> order;
  for (Mask s = static_cast<Mask>(full - 1); s; s &= ~(Mask{1} << choice[s])) order.push_back(choice[s]);
  std::reverse(order.begin(), order.end());
  return {tw[full - 1], order};
}

ValidationReport fail(std::string violation, std::string detail) {
  return {false, std::move(violation), std::move(detail)};
}

// Tree shape and vertex/occurrence conditions; edges only when a graph is supplied.
ValidationReport check_decomposition(const SparsityGraph* g, const TreeDecomposition& td) {
  const std::size_t count = td.node_count();
  const int n = static_cast<int>(td.vertex_count);
  if (count == 0) {
    if (n == 0) return {};
    return fail("vertex uncovered", "decomposition has no nodes");
  }
  if (td.tree_edges.size() != count - 1) return fail("not a tree", "node and edge counts disagree");
  auto adj = tree_adjacency(td);
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= static_cast<int>(count) || b >= static_cast<int>(count) || a == b) {
      return fail("not a tree", "tree edge endpoint out of range");
    }
  }
  {
    std::vector<bool> seen(count, false);
    std::vector<int> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : adj[a]) {
        if (!seen[b]) {
          seen[b] = true;
          ++reached;
          stack.push_back(b);
        }
      }
    }
    if (reached != count) return fail("not a tree", "tree is disconnected");
  }
  std::vector<std::vector<int>> occurs(n);
  for (std::size_t t = 0; t < count; ++t) {
    for (int v : td.bags[t]) {
      if (v < 0 || v >= n) return fail("vertex uncovered", "bag member " + std::to_string(v) + " out of range");
      occurs[v].push_back(static_cast<int>(t));
    }
  }
  for (int v = 0; v < n; ++v) {
    if (occurs[v].empty()) return fail("vertex uncovered", "vertex " + std::to_string(v) + " is in no bag");
  }
  if (g != nullptr) {
    for (auto [u, v] : g->edges()) {
      bool covered = false;
      for (int t : occurs[u]) {
        if (std::binary_search(td.bags[t].begin(), td.bags[t].end(), v)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        return fail("edge uncovered", "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag");
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    std::set<int> nodes(occurs[v].begin(), occurs[v].end());
    std::set<int> seen{occurs[v].front()};
    std::vector<int> stack{occurs[v].front()};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : adj[a]) {
        if (nodes.count(b) && !seen.count(b)) {
          seen.insert(b);
          stack.push_back(b);
        }
      }
    }
    if (seen.size() != nodes.size()) {
      return fail("subtree disconnected", "bags containing vertex " + std::to_string(v) + " are not connected");
    }
  }
  return {};
}

class NiceBuilder {
 public:
  explicit NiceBuilder(std::size_t n) { out_.vertex_count = n; }

  int leaf() {
    NiceNode t;
    t.kind = NodeKind::leaf;
    return push(std::move(t));
  }

  int introduce(int child, int v) {
    NiceNode t;
    t.kind = NodeKind::introduce;
    t.vertex = v;
    t.children = {child};
    t.order = out_.nodes[child].order;
    t.order.push_back(v);
    t.bag_size = out_.nodes[child].bag_size + 1;
    return push(std::move(t));
  }

  int forget(int child, int v) {
    const NiceNode& c = out_.nodes[child];
    NiceNode t;
    t.kind = NodeKind::forget;
    t.vertex = v;
    t.children = {child};
    const std::size_t forgotten = c.order.size() - c.bag_size;
    t.order.assign(c.order.begin(), c.order.begin() + static_cast<long>(forgotten));
    t.order.push_back(v);
    for (std::size_t i = forgotten; i < c.order.size(); ++i) {
      if (c.order[i] != v) t.order.push_back(c.order[i]);
    }
    t.bag_size = c.bag_size - 1;
    return push(std::move(t));
  }

  int join(int left, int right) {
    const NiceNode& l = out_.nodes[left];
    const NiceNode& r = out_.nodes[right];
    NiceNode t;
    t.kind = NodeKind::join;
    t.children = {left, right};
    t.order.assign(l.order.begin(), l.order.end() - static_cast<long>(l.bag_size));
    t.order.insert(t.order.end(), r.order.begin(), r.order.end() - static_cast<long>(r.bag_size));
    t.order.insert(t.order.end(), l.order.end() - static_cast<long>(l.bag_size), l.order.end());
    t.bag_size = l.bag_size;
    return push(std::move(t));
  }

  // Moves from `node` (bag `from`) to bag `to`: forgets then introduces, ascending.
  int chain(int node, const std::vector<int>& from, const std::vector<int>& to) {
    for (int v : from) {
      if (!std::binary_search(to.begin(), to.end(), v)) node = forget(node, v);
    }
    for (int v : to) {
      if (!std::binary_search(from.begin(), from.end(), v)) node = introduce(node, v);
    }
    return node;
  }

  NiceTreeDecomposition finish(int root) {
    out_.root = root;
    return std::move(out_);
  }

 private:
  int push(NiceNode t) {
    const int id = static_cast<int>(out_.nodes.size());
    t.rank.assign(out_.vertex_count, -1);
    for (std::size_t i = 0; i < t.order.size(); ++i) t.rank[t.order[i]] = static_cast<int>(i);
    for (int c : t.children) out_.nodes[c].parent = id;
    out_.nodes.push_back(std::move(t));
    return id;
  }

  NiceTreeDecomposition out_;
};

}  // namespace

TreeDecomposition decomposition_from_order(const SparsityGraph& g, const std::vector<int>& order) {
  const int n = static_cast<int>(g.vertex_count());
  if (order.size() != g.vertex_count()) throw InvalidArgument("elimination order must list every vertex");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || pos[order[i]] != -1) throw InvalidArgument("invalid elimination order");
    pos[order[i]] = i;
  }
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  TreeDecomposition td;
  td.vertex_count = g.vertex_count();
  td.bags.resize(n);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    std::vector<int> bag(adj[v].begin(), adj[v].end());
    int parent = -1;
    for (int u : bag) {
      if (parent < 0 || pos[u] < pos[order[parent]]) parent = pos[u];
    }
    if (parent >= 0) {
      td.tree_edges.emplace_back(i, parent);
    } else {
      roots.push_back(i);
    }
    for (int a : bag) {
      for (int b : bag) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(v);
    }
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags[i] = std::move(bag);
  }
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) td.tree_edges.emplace_back(roots[k], roots.back());
  return simplify(std::move(td));
}

int exact_treewidth(const SparsityGraph& g) { return exact_order(g).first; }

TreeDecomposition decompose(const SparsityGraph& g, DecomposeMode mode) {
  if (mode == DecomposeMode::exact) return decomposition_from_order(g, exact_order(g).second);
  return decomposition_from_order(g, min_fill_order(g));
}

ValidationReport validate(const SparsityGraph& g, const TreeDecomposition& td) {
  if (g.vertex_count() != td.vertex_count) return fail("vertex uncovered", "vertex counts differ");
  return check_decomposition(&g, td);
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  ValidationReport report = check_decomposition(nullptr, td);
  if (!report.ok) throw DecompositionError("invalid tree decomposition: " + report.violation + " (" + report.detail + ")");
  NiceBuilder b(td.vertex_count);
  if (td.node_count() == 0) return b.finish(b.leaf());
  auto adj = tree_adjacency(td);
  std::vector<std::vector<int>> bags = td.bags;
  for (auto& bag : bags) std::sort(bag.begin(), bag.end());
  // Iterative post-order from node 0.
  std::vector<int> parent(td.node_count(), -1), order;
  std::vector<int> stack{0};
  std::vector<bool> seen(td.node_count(), false);
  seen[0] = true;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    order.push_back(a);
    for (int c : adj[a]) {
      if (!seen[c]) {
        seen[c] = true;
        parent[c] = a;
        stack.push_back(c);
      }
    }
  }
  std::vector<int> built(td.node_count(), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int a = *it;
    std::vector<int> children;
    for (int c : adj[a]) {
      if (c != parent[a]) children.push_back(c);
    }
    std::sort(children.begin(), children.end());
    int acc = -1;
    if (children.empty()) {
      acc = b.chain(b.leaf(), {}, bags[a]);
    }
    for (int c : children) {
      int branch = b.chain(built[c], bags[c], bags[a]);
      acc = acc < 0 ? branch : b.join(acc, branch);
    }
    built[a] = acc;
  }
  return b.finish(b.chain(built[0], bags[0], {}));
}

ValidationReport validate_nice(const NiceTreeDecomposition& ntd) {
  const std::size_t n = ntd.vertex_count;
  if (ntd.nodes.empty() || ntd.root != static_cast<int>(ntd.nodes.size()) - 1) {
    return fail("malformed", "root must be the last node");
  }
  auto set_of = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (std::size_t id = 0; id < ntd.nodes.size(); ++id) {
    const NiceNode& t = ntd.nodes[id];
    const std::string where = "node " + std::to_string(id);
    for (int c : t.children) {
      if (c >= static_cast<int>(id) || ntd.nodes[c].parent != static_cast<int>(id)) {
        return fail("malformed", where + ": child link inconsistent");
      }
    }
    if (t.bag_size > t.order.size()) return fail("malformed", where + ": bag larger than V_t");
    if (set_of(t.order) != [&] {
          std::vector<int> v = set_of(t.order);
          v.erase(std::unique(v.begin(), v.end()), v.end());
          return v;
        }()) {
      return fail("malformed", where + ": repeated vertex in ordering");
    }
    for (std::size_t i = 0; i < t.order.size(); ++i) {
      if (t.rank.size() != n || t.rank[t.order[i]] != static_cast<int>(i)) return fail("malformed", where + ": rank array stale");
    }
    const auto forgotten = [](const NiceNode& x) {
      return std::vector<int>(x.order.begin(), x.order.end() - static_cast<long>(x.bag_size));
    };
    switch (t.kind) {
      case NodeKind::leaf:
        if (!t.children.empty() || !t.order.empty()) return fail("malformed", where + ": leaf must be empty");
        break;
      case NodeKind::introduce: {
        if (t.children.size() != 1) return fail("malformed", where + ": introduce needs one child");
        const NiceNode& c = ntd.nodes[t.children[0]];
        std::vector<int> expect = c.order;
        expect.push_back(t.vertex);
        if (c.rank[t.vertex] != -1 || t.order != expect || t.bag_size != c.bag_size + 1) {
          return fail("malformed", where + ": introduce must append a new vertex");
        }
        break;
      }
      case NodeKind::forget: {
        if (t.children.size() != 1) return fail("malformed", where + ": forget needs one child");
        const NiceNode& c = ntd.nodes[t.children[0]];
        std::vector<int> expect = forgotten(c);
        expect.push_back(t.vertex);
        for (int v : c.bag()) {
          if (v != t.vertex) expect.push_back(v);
        }
        if (c.rank[t.vertex] < static_cast<int>(c.order.size() - c.bag_size) || t.order != expect ||
            t.bag_size + 1 != c.bag_size) {
          return fail("malformed", where + ": forget must move the vertex before the bag");
        }
        break;
      }
      case NodeKind::join: {
        if (t.children.size() != 2) return fail("malformed", where + ": join needs two children");
        const NiceNode& l = ntd.nodes[t.children[0]];
        const NiceNode& r = ntd.nodes[t.children[1]];
        if (set_of(l.bag()) != set_of(r.bag())) return fail("malformed", where + ": join children bags differ");
        std::vector<int> expect = forgotten(l);
        std::vector<int> rf = forgotten(r);
        for (int v : rf) {
          if (l.rank[v] != -1) return fail("malformed", where + ": join subtrees overlap outside the bag");
        }
        expect.insert(expect.end(), rf.begin(), rf.end());
        std::vector<int> lb = l.bag();
        expect.insert(expect.end(), lb.begin(), lb.end());
        if (t.order != expect || t.bag_size != l.bag_size) return fail("malformed", where + ": join ordering");
        break;
      }
    }
  }
  const NiceNode& root = ntd.nodes[ntd.root];
  if (root.bag_size != 0 || root.order.size() != n) return fail("malformed", "root must have an empty bag and V = [n]");
  return {};
}

TreeDecomposition as_tree_decomposition(const NiceTreeDecomposition& ntd) {
  TreeDecomposition td;
  td.vertex_count = ntd.vertex_count;
  for (const auto& t : ntd.nodes) {
    std::vector<int> bag = t.bag();
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
  }
  for (std::size_t id = 0; id < ntd.nodes.size(); ++id) {
    if (ntd.nodes[id].parent >= 0) td.tree_edges.emplace_back(static_cast<int>(id), ntd.nodes[id].parent);
  }
  return td;
}

std::string format_decomposition(const TreeDecomposition& td) {
  std::vector<int> parent(td.node_count(), -1);
  if (td.node_count() > 0) {
    auto adj = tree_adjacency(td);
    std::vector<bool> seen(td.node_count(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : adj[a]) {
        if (!seen[b]) {
          seen[b] = true;
          parent[b] = a;
          q.push(b);
        }
      }
    }
  }
  std::ostringstream out;
  for (std::size_t id = 0; id < td.node_count(); ++id) {
    out << id << " bag " << parent[id];
    for (int v : td.bags[id]) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

std::string format_decomposition(const NiceTreeDecomposition& ntd) {
  std::ostringstream out;
  for (std::size_t id = 0; id < ntd.nodes.size(); ++id) {
    const NiceNode& t = ntd.nodes[id];
    out << id << ' ' << to_string(t.kind) << ' ' << t.parent;
    for (int v : t.bag()) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

TreeDecomposition parse_decomposition(std::string_view text, std::size_t vertex_count) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<int, std::pair<int, std::vector<int>>> rows;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int id = 0, parent = 0;
    std::string kind;
    if (!(ls >> id >> kind >> parent)) throw ParseError("decomposition line needs `id kind parent`: " + line);
    std::vector<int> bag;
    int v = 0;
    while (ls >> v) bag.push_back(v);
    if (!ls.eof()) throw ParseError("bad bag member in line: " + line);
    std::sort(bag.begin(), bag.end());
    if (!rows.emplace(id, std::make_pair(parent, bag)).second) throw ParseError("duplicate node id " + std::to_string(id));
  }
  TreeDecomposition td;
  td.vertex_count = vertex_count;
  int expect = 0;
  for (auto& [id, row] : rows) {
    if (id != expect++) throw ParseError("node ids must be 0..N-1");
    td.bags.push_back(row.second);
  }
  for (auto& [id, row] : rows) {
    if (row.first < 0) continue;
    if (row.first >= static_cast<int>(rows.size())) throw ParseError("parent id out of range");
    td.tree_edges.emplace_back(id, row.first);
  }
  return td;
}

}  // namespace pidpp
