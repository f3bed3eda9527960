#include "pidpp/treewidth_fpt.hpp"

#include "pidpp/errors.hpp"
#include "pidpp/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <ostream>

namespace pidpp {

namespace {

constexpr int kNone = -1;
constexpr int kToS = -2;
constexpr std::size_t kMaxBag = 32;

int count_after(std::uint32_t mask, int x) { return std::popcount(x >= 31 ? 0U : mask >> (x + 1)); }

using Buckets = std::vector<BigInt>;

void accumulate(std::unordered_map<std::string, Buckets>& out, std::string key, const Buckets& vals, bool negate,
                std::size_t max_keys) {
  auto [it, fresh] = out.try_emplace(std::move(key));
  if (fresh) {
    it->second.assign(vals.size(), 0);
    if (out.size() > max_keys) {
      throw BudgetExceeded("treewidth table exceeds " + std::to_string(max_keys) + " live keys");
    }
  }
  for (std::size_t b = 0; b < vals.size(); ++b) {
    if (negate) {
      it->second[b] -= vals[b];
    } else {
      it->second[b] += vals[b];
    }
  }
}

void drop_zeros(std::unordered_map<std::string, Buckets>& table) {
  std::erase_if(table, [](const auto& kv) {
    return std::all_of(kv.second.begin(), kv.second.end(), [](const BigInt& x) { return sgn(x) == 0; });
  });
}

}  // namespace

// Row targets per bag position (kNone, kToS or a position), the F2 mask and nu.
struct TreewidthDp::State {
  std::vector<int> rows;
  std::uint32_t f2 = 0;
  int nu = 0;

  std::uint32_t o1() const {
    std::uint32_t m = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j] != kNone) m |= 1U << j;
    }
    return m;
  }
  std::uint32_t f1() const {
    std::uint32_t m = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j] == kToS) m |= 1U << j;
    }
    return m;
  }
  std::uint32_t image() const {
    std::uint32_t m = 0;
    for (int r : rows) {
      if (r >= 0) m |= 1U << r;
    }
    return m;
  }
  std::uint32_t o2() const { return image() | f2; }

  // Inversions of tau in position order.
  int tau_inversions() const {
    int inv = 0;
    for (std::size_t a = 0; a < rows.size(); ++a) {
      if (rows[a] < 0) continue;
      for (std::size_t b = a + 1; b < rows.size(); ++b) {
        if (rows[b] >= 0 && rows[a] > rows[b]) ++inv;
      }
    }
    return inv;
  }

  // Drops position p; later positions shift down.
  void remove(int p) {
    rows.erase(rows.begin() + p);
    for (int& r : rows) {
      if (r > p) --r;
    }
    const std::uint32_t low = f2 & ((1U << p) - 1);
    f2 = low | ((f2 >> (p + 1)) << p);
  }
};

TreewidthDp::TreewidthDp(const MatrixTuple& t, const NiceTreeDecomposition& ntd, TreewidthOptions options)
    : ntd_(ntd), options_(options), m_(t.m()), n_(t.n()) {
  if (ntd.vertex_count != n_) throw DecompositionError("decomposition and matrices disagree on n");
  ValidationReport nice = validate_nice(ntd);
  if (!nice.ok) throw DecompositionError("not a valid nice decomposition: " + nice.detail);
  ValidationReport cover = validate(sparsity_union(t), as_tree_decomposition(ntd));
  if (!cover.ok) throw DecompositionError("decomposition does not cover the sparsity pattern: " + cover.detail);
  if (ntd.width() + 1 > static_cast<int>(kMaxBag)) {
    throw BudgetExceeded("bags larger than " + std::to_string(kMaxBag) + " are not supported");
  }
  lift_ = 1;
  for (const auto& a : t) {
    lifts_.push_back(integer_lift(a));
    lift_ *= lifts_.back().scale;
  }
}

std::vector<TreewidthDp::State> TreewidthDp::unpack(const std::string& key, std::size_t b) const {
  std::vector<State> out(m_);
  std::size_t at = 0;
  for (auto& st : out) {
    st.rows.resize(b);
    for (std::size_t j = 0; j < b; ++j) st.rows[j] = static_cast<unsigned char>(key[at++]) - 2;
    for (int k = 0; k < 4; ++k) st.f2 |= static_cast<std::uint32_t>(static_cast<unsigned char>(key[at++])) << (8 * k);
    if (options_.parity == ParityMode::tracked) st.nu = key[at++];
  }
  return out;
}

std::string TreewidthDp::pack(const std::vector<State>& states) const {
  std::string key;
  for (const auto& st : states) {
    for (int r : st.rows) key.push_back(static_cast<char>(r + 2));
    for (int k = 0; k < 4; ++k) key.push_back(static_cast<char>((st.f2 >> (8 * k)) & 0xFFU));
    if (options_.parity == ParityMode::tracked) key.push_back(static_cast<char>(st.nu & 1));
  }
  return key;
}

void TreewidthDp::check(const DpTable& t) const {
  if (t.entries.size() > options_.max_keys) {
    throw BudgetExceeded("treewidth table exceeds " + std::to_string(options_.max_keys) + " live keys");
  }
  if (options_.trace != nullptr) {
    std::size_t bits = 0;
    for (const auto& [key, vals] : t.entries) {
      for (const auto& x : vals) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
    }
    const NiceNode& node = ntd_.nodes[t.node];
    *options_.trace << t.node << ' ' << to_string(node.kind) << " bag=[";
    for (std::size_t j = 0; j < t.bag.size(); ++j) *options_.trace << (j ? " " : "") << t.bag[j];
    *options_.trace << "] keys=" << t.entries.size() << " bits=" << bits << '\n';
  }
}

DpTable TreewidthDp::leaf(int node) const {
  DpTable out;
  out.node = node;
  std::vector<State> states(m_);
  Buckets vals(options_.size == SizeMode::full ? 1 : 2, 0);
  vals[0] = 1;
  out.entries.emplace(pack(states), vals);
  check(out);
  return out;
}

DpTable TreewidthDp::introduce_update(const DpTable& child, int node) const {
  const NiceNode& t = ntd_.nodes[node];
  const int v = t.vertex;
  const int nb = static_cast<int>(child.bag.size());  // position of v
  DpTable out;
  out.node = node;
  out.bag = child.bag;
  out.bag.push_back(v);
  out.forgotten = child.forgotten;
  auto nz = [&](std::size_t i, int a, int b) { return sgn(lifts_[i](a, b)) != 0; };

  struct Option {
    State st;
    int delta;
  };
  std::vector<std::vector<Option>> options(m_);
  for (const auto& [key, vals] : child.entries) {
    std::vector<State> states = unpack(key, child.bag.size());
    for (std::size_t i = 0; i < m_; ++i) {
      const State& c = states[i];
      const std::uint32_t o1 = c.o1();
      const std::uint32_t o2 = c.o2();
      auto& opts = options[i];
      opts.clear();
      State base = c;
      base.rows.push_back(kNone);
      opts.push_back({base, 0});
      if (nz(i, v, v)) {
        State s = base;
        s.rows[nb] = nb;
        opts.push_back({s, 0});
      }
      for (int x = 0; x < nb; ++x) {
        if (o2 >> x & 1U || !nz(i, v, child.bag[x])) continue;
        State s = base;
        s.rows[nb] = x;
        opts.push_back({s, count_after(o2, x)});
      }
      for (int u = 0; u < nb; ++u) {
        if (o1 >> u & 1U || !nz(i, child.bag[u], v)) continue;
        State s = base;
        s.rows[u] = nb;
        opts.push_back({s, count_after(o1, u)});
        for (int x = 0; x < nb; ++x) {
          if (o2 >> x & 1U || !nz(i, v, child.bag[x])) continue;
          State w = s;
          w.rows[nb] = x;
          opts.push_back({w, count_after(o2, x) + count_after(o1, u) + 1});
        }
      }
    }
    // Cartesian product over matrices.
    std::vector<std::size_t> pick(m_, 0);
    std::vector<State> chosen(m_);
    while (true) {
      int delta = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        chosen[i] = options[i][pick[i]].st;
        chosen[i].nu = (chosen[i].nu + options[i][pick[i]].delta) & 1;
        delta += options[i][pick[i]].delta;
      }
      const bool negate = options_.parity == ParityMode::folded && (delta & 1);
      accumulate(out.entries, pack(chosen), vals, negate, options_.max_keys);
      std::size_t i = 0;
      while (i < m_ && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == m_) break;
    }
  }
  check(out);
  return out;
}

DpTable TreewidthDp::forget_update(const DpTable& child, int node) const {
  const NiceNode& t = ntd_.nodes[node];
  const int v = t.vertex;
  const int p = static_cast<int>(std::find(child.bag.begin(), child.bag.end(), v) - child.bag.begin());
  if (p == static_cast<int>(child.bag.size())) throw DecompositionError("forgotten vertex not in child bag");
  DpTable out;
  out.node = node;
  out.bag = child.bag;
  out.bag.erase(out.bag.begin() + p);
  out.forgotten = child.forgotten + 1;
  const bool full = options_.size == SizeMode::full;
  const std::size_t width = full ? out.forgotten + 1 : 2;
  Buckets shifted(width);
  BigInt factor;
  for (const auto& [key, vals] : child.entries) {
    std::vector<State> states = unpack(key, child.bag.size());
    int in_s = -1;  // 0: v outside S for all matrices, 1: v in S for all
    bool mixed = false;
    for (const auto& st : states) {
      const bool a = st.o1() >> p & 1U;
      const bool b = st.o2() >> p & 1U;
      if (a != b) {
        mixed = true;
        break;
      }
      const int here = a ? 1 : 0;
      if (in_s >= 0 && in_s != here) {
        mixed = true;
        break;
      }
      in_s = here;
    }
    if (mixed) continue;
    int delta = 0;
    factor = in_s ? 1 : lift_;
    if (in_s) {
      for (std::size_t i = 0; i < m_; ++i) {
        State& st = states[i];
        const std::uint32_t o1 = st.o1();
        const std::uint32_t o2 = st.o2();
        const int d = std::popcount((o1 ^ o2) & ((1U << p) - 1));
        delta += d;
        st.nu = (st.nu + d) & 1;
        const int x = st.rows[p];
        if (x >= 0) {
          factor *= lifts_[i](v, child.bag[x]);
          if (x != p) st.f2 |= 1U << x;
        }
        for (int u = 0; u < static_cast<int>(st.rows.size()); ++u) {
          if (u != p && st.rows[u] == p) {
            factor *= lifts_[i](child.bag[u], v);
            st.rows[u] = kToS;
          }
        }
      }
      if (sgn(factor) == 0) continue;
    }
    for (auto& st : states) st.remove(p);
    for (auto& x : shifted) x = 0;
    for (std::size_t b = 0; b < vals.size(); ++b) {
      const std::size_t to = full ? b + static_cast<std::size_t>(in_s) : (b + static_cast<std::size_t>(in_s)) % 2;
      shifted[to] = vals[b] * factor;
    }
    const bool negate = options_.parity == ParityMode::folded && (delta & 1);
    accumulate(out.entries, pack(states), shifted, negate, options_.max_keys);
  }
  drop_zeros(out.entries);
  check(out);
  return out;
}

DpTable TreewidthDp::join_update(const DpTable& left, const DpTable& right, int node) const {
  const std::size_t b = left.bag.size();
  if (right.bag.size() != b) throw DecompositionError("join children have different bags");
  std::vector<int> to_left(b);
  for (std::size_t q = 0; q < b; ++q) {
    auto it = std::find(left.bag.begin(), left.bag.end(), right.bag[q]);
    if (it == left.bag.end()) throw DecompositionError("join children have different bags");
    to_left[q] = static_cast<int>(it - left.bag.begin());
  }
  DpTable out;
  out.node = node;
  out.bag = left.bag;
  out.forgotten = left.forgotten + right.forgotten;
  const bool full = options_.size == SizeMode::full;
  const bool tracked = options_.parity == ParityMode::tracked;
  const bool folded = options_.parity == ParityMode::folded;

  // Signature: tau of every matrix; entries sharing it are the only join candidates.
  struct Item {
    std::vector<State> states;
    const Buckets* vals;
    bool negate;
  };
  auto signature = [&](const std::vector<State>& states) {
    std::string sig;
    for (const auto& st : states) {
      for (int r : st.rows) sig.push_back(static_cast<char>(r >= 0 ? r + 1 : 0));
    }
    return sig;
  };
  std::map<std::string, std::vector<Item>> right_groups;
  for (const auto& [key, vals] : right.entries) {
    std::vector<State> states = unpack(key, b);
    int delta = 0;
    for (auto& st : states) {
      const std::uint32_t o1 = st.o1();
      const std::uint32_t o2 = st.o2();
      int d = 0;
      for (std::size_t q1 = 0; q1 < b; ++q1) {
        for (std::size_t q2 = q1 + 1; q2 < b; ++q2) {
          if (to_left[q1] < to_left[q2]) continue;
          const bool both1 = (o1 >> q1 & 1U) && (o1 >> q2 & 1U);
          const bool both2 = (o2 >> q1 & 1U) && (o2 >> q2 & 1U);
          d += both1 != both2;
        }
      }
      State moved;
      moved.rows.assign(b, kNone);
      for (std::size_t q = 0; q < b; ++q) {
        const int r = st.rows[q];
        moved.rows[to_left[q]] = r >= 0 ? to_left[r] : r;
        if (st.f2 >> q & 1U) moved.f2 |= 1U << to_left[q];
      }
      moved.nu = (st.nu + d) & 1;
      delta += d;
      st = std::move(moved);
    }
    right_groups[signature(states)].push_back({std::move(states), &vals, folded && (delta & 1)});
  }

  Buckets merged;
  std::vector<State> combined(m_);
  for (const auto& [lkey, lvals] : left.entries) {
    std::vector<State> ls = unpack(lkey, b);
    auto group = right_groups.find(signature(ls));
    if (group == right_groups.end()) continue;
    std::vector<std::uint32_t> lf1(m_), lf2(m_);
    int fixed = 0;  // s''-independent parity contribution summed over matrices
    std::vector<int> fixed_i(m_), cross_i(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      lf1[i] = ls[i].f1();
      lf2[i] = ls[i].f2;
    }
    for (const Item& r : group->second) {
      bool ok = true;
      for (std::size_t i = 0; i < m_ && ok; ++i) {
        ok = (lf1[i] & r.states[i].f1()) == 0 && (lf2[i] & r.states[i].f2) == 0;
      }
      if (!ok) continue;
      fixed = 0;
      int cross = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const std::uint32_t rf1 = r.states[i].f1();
        const std::uint32_t rf2 = r.states[i].f2;
        // Pairs a in F', b in F'' with b before a.
        int pairs = 0;
        for (std::size_t a = 0; a < b; ++a) {
          const std::uint32_t below = (1U << a) - 1;
          if (lf1[i] >> a & 1U) pairs += std::popcount(rf1 & below);
          if (lf2[i] >> a & 1U) pairs += std::popcount(rf2 & below);
        }
        fixed_i[i] = (ls[i].tau_inversions() + pairs) & 1;
        cross_i[i] = (std::popcount(lf1[i]) + std::popcount(lf2[i])) & 1;
        fixed += fixed_i[i];
        cross += cross_i[i];
        combined[i] = ls[i];
        for (std::size_t a = 0; a < b; ++a) {
          if (r.states[i].rows[a] == kToS) combined[i].rows[a] = kToS;
        }
        combined[i].f2 = lf2[i] | rf2;
      }
      const Buckets& rv = *r.vals;
      // Parity of s'' selects one of two keys (tracked) or signs (folded).
      for (int sp = 0; sp < 2; ++sp) {
        merged.assign(full ? lvals.size() + rv.size() - 1 : 2, 0);
        bool any = false;
        for (std::size_t b2 = 0; b2 < rv.size(); ++b2) {
          if (static_cast<int>(b2 % 2) != sp || sgn(rv[b2]) == 0) continue;
          for (std::size_t b1 = 0; b1 < lvals.size(); ++b1) {
            if (sgn(lvals[b1]) == 0) continue;
            merged[full ? b1 + b2 : (b1 + b2) % 2] += lvals[b1] * rv[b2];
            any = true;
          }
        }
        if (!any) continue;
        for (std::size_t i = 0; i < m_; ++i) {
          combined[i].nu = (ls[i].nu + r.states[i].nu + fixed_i[i] + sp * cross_i[i]) & 1;
        }
        const bool negate = folded && ((fixed + sp * cross + (r.negate ? 1 : 0)) & 1);
        if (!tracked) {
          for (auto& st : combined) st.nu = 0;
        }
        accumulate(out.entries, pack(combined), merged, negate, options_.max_keys);
      }
    }
  }
  drop_zeros(out.entries);
  check(out);
  return out;
}

DpTable TreewidthDp::run(std::vector<DpTable>* retained) const {
  std::vector<DpTable> tables(ntd_.nodes.size());
  for (std::size_t id = 0; id < ntd_.nodes.size(); ++id) {
    const NiceNode& t = ntd_.nodes[id];
    const int node = static_cast<int>(id);
    switch (t.kind) {
      case NodeKind::leaf:
        tables[id] = leaf(node);
        break;
      case NodeKind::introduce:
        tables[id] = introduce_update(tables[t.children[0]], node);
        break;
      case NodeKind::forget:
        tables[id] = forget_update(tables[t.children[0]], node);
        break;
      case NodeKind::join:
        tables[id] = join_update(tables[t.children[0]], tables[t.children[1]], node);
        break;
    }
    if (retained == nullptr) {
      for (int c : t.children) tables[c] = DpTable{};
    }
  }
  DpTable root = tables[ntd_.root];
  if (retained != nullptr) *retained = std::move(tables);
  return root;
}

std::vector<BigInt> TreewidthDp::root_buckets() const {
  DpTable root = run();
  std::vector<BigInt> sums;
  for (const auto& [key, vals] : root.entries) {
    int nu = 0;
    for (const auto& st : unpack(key, 0)) nu += st.nu;
    if (sums.size() < vals.size()) sums.resize(vals.size(), 0);
    for (std::size_t b = 0; b < vals.size(); ++b) {
      if (options_.parity == ParityMode::tracked && (nu & 1)) {
        sums[b] -= vals[b];
      } else {
        sums[b] += vals[b];
      }
    }
  }
  return sums;
}

Rational TreewidthDp::total() const {
  BigInt sum = 0;
  for (const auto& x : root_buckets()) sum += x;
  Rational z(sum, pow(lift_, static_cast<unsigned long>(n_)));
  z.canonicalize();
  return z;
}

std::vector<Rational> TreewidthDp::totals_by_size() const {
  if (options_.size != SizeMode::full) throw InvalidArgument("per-size totals need SizeMode::full");
  std::vector<BigInt> sums = root_buckets();
  const BigInt denom = pow(lift_, static_cast<unsigned long>(n_));
  std::vector<Rational> out(n_ + 1, 0);
  for (std::size_t s = 0; s < sums.size() && s <= n_; ++s) {
    out[s] = Rational(sums[s], denom);
    out[s].canonicalize();
  }
  return out;
}

std::vector<DpEntry> TreewidthDp::decode(const DpTable& table) const {
  if (options_.parity != ParityMode::tracked || options_.size != SizeMode::full) {
    throw InvalidArgument("decoding needs tracked parity and full size");
  }
  std::vector<DpEntry> out;
  const BigInt forgotten_scale = pow(lift_, static_cast<unsigned long>(table.forgotten));
  for (const auto& [key, vals] : table.entries) {
    std::vector<State> states = unpack(key, table.bag.size());
    std::vector<Configuration> configs;
    BigInt num = 1;
    BigInt den = forgotten_scale;
    for (std::size_t i = 0; i < m_; ++i) {
      const State& st = states[i];
      Configuration c;
      for (std::size_t j = 0; j < table.bag.size(); ++j) {
        const int vj = table.bag[j];
        if (st.rows[j] != kNone) c.o1.push_back(vj);
        if (st.o2() >> j & 1U) c.o2.push_back(vj);
        if (st.rows[j] == kToS) c.f1.push_back(vj);
        if (st.f2 >> j & 1U) c.f2.push_back(vj);
        if (st.rows[j] >= 0) {
          c.tau.emplace_back(vj, table.bag[st.rows[j]]);
          num *= lifts_[i](vj, table.bag[st.rows[j]]);
        }
      }
      for (auto* part : {&c.o1, &c.o2, &c.f1, &c.f2}) std::sort(part->begin(), part->end());
      std::sort(c.tau.begin(), c.tau.end());
      c.nu = st.nu;
      den *= pow(lifts_[i].scale, static_cast<unsigned long>(c.o1.size()));
      configs.push_back(std::move(c));
    }
    for (std::size_t s = 0; s < vals.size(); ++s) {
      if (sgn(vals[s]) == 0) continue;
      Rational value(vals[s] * num, den);
      value.canonicalize();
      out.push_back({configs, s, value});
    }
  }
  std::sort(out.begin(), out.end(), [](const DpEntry& a, const DpEntry& b) {
    return std::tie(a.configs, a.s) < std::tie(b.configs, b.s);
  });
  return out;
}

Rational zm_treewidth(const MatrixTuple& t, const NiceTreeDecomposition& ntd, TreewidthOptions options) {
  if (options.parity == ParityMode::ignored) options.parity = ParityMode::folded;
  return TreewidthDp(t, ntd, options).total();
}

Rational zm_treewidth(const MatrixTuple& t, TreewidthOptions options) {
  return zm_treewidth(t, make_nice(decompose(sparsity_union(t))), options);
}

std::vector<Rational> zmk_treewidth(const MatrixTuple& t, const NiceTreeDecomposition& ntd,
                                    TreewidthOptions options) {
  if (options.parity == ParityMode::ignored) options.parity = ParityMode::folded;
  options.size = SizeMode::full;
  return TreewidthDp(t, ntd, options).totals_by_size();
}

Rational permanental_sum(const MatrixTuple& t, const NiceTreeDecomposition& ntd, bool allow_other_m,
                         TreewidthOptions options) {
  if (t.m() != 2 && !allow_other_m) {
    throw InvalidArgument("the unsigned assembly is established for two matrices only");
  }
  options.parity = ParityMode::ignored;
  return TreewidthDp(t, ntd, options).total();
}

}  // namespace pidpp
