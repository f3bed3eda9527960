#pragma once

#include "pidpp/configuration.hpp"
#include "pidpp/matrix.hpp"
#include "pidpp/treedecomp.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace pidpp {

// How the inversion parities of the m configurations are carried.
//   tracked: nu is part of every key (the literal table of the construction);
//   folded:  keys drop nu and values carry (-1)^{sum nu} (determinants);
//   ignored: keys drop nu and values carry no sign (permanents).
enum class ParityMode { tracked, folded, ignored };

// full keeps dp_{t,s} for every s; parity keeps only s mod 2, which suffices for Z_m.
enum class SizeMode { full, parity };

struct TreewidthOptions {
  ParityMode parity = ParityMode::folded;
  SizeMode size = SizeMode::parity;
  // Limit on the number of live keys in any single table.
  std::size_t max_keys = 4'000'000;
  // One line per node when set: id, kind, bag, live keys, max entry bits.
  std::ostream* trace = nullptr;
};

// Sparse table of one node. Keys encode, per matrix and per bag position, where the row
// goes (nowhere, into S, or a bag position) plus the F2 mask (and nu when tracked).
// bucket[b] holds the value for s = b (full) or s ≡ b mod 2 (parity).
struct DpTable {
  int node = -1;
  std::vector<int> bag;  // bag in node order
  std::size_t forgotten = 0;
  std::unordered_map<std::string, std::vector<BigInt>> entries;

  std::size_t live_keys() const { return entries.size(); }
};

// A decoded table entry: one configuration per matrix, the size s, and
// sum_{S in (V_t \ X_t choose s)} prod_i Upsilon_{t,i}(S, C_i) in the original scale.
struct DpEntry {
  std::vector<Configuration> configs;
  std::size_t s = 0;
  Rational value;
};

// Configuration dynamic program over a nice tree decomposition. Matrices are lifted to
// integers; stored values omit the tau factors prod_i A^i(tau_i) and carry an extra
// factor D per forgotten vertex outside S, D the product of the lift denominators.
class TreewidthDp {
 public:
  // Throws DecompositionError when a nonzero off-diagonal entry is not covered by a bag.
  TreewidthDp(const MatrixTuple& t, const NiceTreeDecomposition& ntd, TreewidthOptions options = {});

  DpTable leaf(int node) const;
  DpTable introduce_update(const DpTable& child, int node) const;
  DpTable forget_update(const DpTable& child, int node) const;
  DpTable join_update(const DpTable& left, const DpTable& right, int node) const;

  // Runs every node; retains all tables when asked (children precede parents).
  DpTable run(std::vector<DpTable>* retained = nullptr) const;

  // Root total with the sign convention of the parity mode: Z_m (folded/tracked) or
  // the permanental sum (ignored).
  Rational total() const;
  // Per-size totals (Z_{m,0}, ..., Z_{m,n}); requires SizeMode::full.
  std::vector<Rational> totals_by_size() const;

  // Decodes a table into definitional values. Requires tracked parity and full size.
  std::vector<DpEntry> decode(const DpTable& table) const;

  const NiceTreeDecomposition& decomposition() const { return ntd_; }

 private:
  struct State;
  std::vector<State> unpack(const std::string& key, std::size_t b) const;
  std::string pack(const std::vector<State>& states) const;
  void check(const DpTable& t) const;
  std::vector<BigInt> root_buckets() const;

  NiceTreeDecomposition ntd_;
  TreewidthOptions options_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<IntMatrix> lifts_;
  BigInt lift_;  // product of the lift scales
};

// Exact Z_m on the given decomposition, or on a heuristic one for sparsity_union(t).
Rational zm_treewidth(const MatrixTuple& t, const NiceTreeDecomposition& ntd, TreewidthOptions options = {});
Rational zm_treewidth(const MatrixTuple& t, TreewidthOptions options = {});

// (Z_{m,0}, ..., Z_{m,n}) from the full-size table.
std::vector<Rational> zmk_treewidth(const MatrixTuple& t, const NiceTreeDecomposition& ntd,
                                    TreewidthOptions options = {});

// sum_S prod_i per(A^i[S,S]) by the unsigned assembly. Established for m = 2; other m
// run only with allow_other_m (empirically checked, not proven).
Rational permanental_sum(const MatrixTuple& t, const NiceTreeDecomposition& ntd, bool allow_other_m = false,
                         TreewidthOptions options = {});

}  // namespace pidpp
