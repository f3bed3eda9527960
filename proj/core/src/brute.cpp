#include "pidpp/brute.hpp"

#include "pidpp/errors.hpp"
#include "pidpp/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

namespace pidpp {

std::size_t brute_cap() {
  if (const char* env = std::getenv("PIDPP_MAX_BRUTE_N")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 63) return static_cast<std::size_t>(v);
  }
  return kDefaultBruteCap;
}

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n > 62) {
    throw CapExceeded("brute force over n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
}

std::vector<int> mask_to_subset(std::uint64_t mask) {
  std::vector<int> s;
  for (int i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) s.push_back(i);
  }
  return s;
}

class MinorWalker {
 public:
  MinorWalker(const std::vector<IntMatrix>& lifts, const MinorVisitor& visit)
      : lifts_(lifts), visit_(visit), n_(lifts.empty() ? 0 : lifts.front().rows), q_(lifts.size()) {
    state_.assign(n_ + 1, std::vector<std::vector<BigInt>>(q_));
    for (auto& level : state_) {
      for (auto& s : level) s.resize(n_ * n_);
    }
    for (std::size_t i = 0; i < q_; ++i) state_[0][i] = lifts_[i].data;
    minors_.resize(q_);
    minor_ptrs_.resize(q_);
    for (std::size_t i = 0; i < q_; ++i) minor_ptrs_[i] = &minors_[i];
  }

  void run() {
    for (auto& x : minors_) x = 1;
    visit_(0, 0, minor_ptrs_.data());
    if (n_ == 0) return;
    std::vector<bool> direct(q_, false);
    std::vector<BigInt> pivots(q_, 1);
    dfs(0, 0, 0, direct, pivots);
  }

 private:
  BigInt direct_minor(std::size_t i, std::uint64_t mask) const {
    std::vector<int> s = mask_to_subset(mask);
    const std::size_t k = s.size();
    std::vector<BigInt> sub(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) sub[a * k + b] = lifts_[i](s[a], s[b]);
    }
    return bareiss_det(sub, k);
  }

  // state_[d][i] holds, for a, b >= lo, det of lift_i with rows P+a, columns P+b (Schur mode).
  void dfs(std::size_t d, std::uint64_t mask, std::size_t lo, const std::vector<bool>& direct,
           const std::vector<BigInt>& pivots) {
    std::vector<bool> child_direct(q_);
    std::vector<BigInt> child_pivots(q_);
    BigInt t;
    for (std::size_t e = lo; e < n_; ++e) {
      const std::uint64_t with_e = mask | (std::uint64_t{1} << e);
      for (std::size_t i = 0; i < q_; ++i) {
        minors_[i] = direct[i] ? direct_minor(i, with_e) : state_[d][i][e * n_ + e];
      }
      visit_(with_e, static_cast<int>(d + 1), minor_ptrs_.data());
      if (e + 1 == n_) continue;

      bool dead = false;
      for (std::size_t i = 0; i < q_ && !dead; ++i) {
        child_direct[i] = direct[i];
        if (direct[i] || state_[d][i][e * n_ + e] != 0) continue;
        // Zero pivot: if row or column e of the Schur state vanishes, every superset has minor 0.
        const auto& s = state_[d][i];
        bool row_zero = true, col_zero = true;
        for (std::size_t a = e + 1; a < n_; ++a) {
          if (s[e * n_ + a] != 0) row_zero = false;
          if (s[a * n_ + e] != 0) col_zero = false;
        }
        if (row_zero || col_zero) {
          dead = true;
        } else {
          child_direct[i] = true;
        }
      }
      if (dead) continue;

      for (std::size_t i = 0; i < q_; ++i) {
        if (child_direct[i]) continue;
        const auto& s = state_[d][i];
        auto& c = state_[d + 1][i];
        const BigInt& piv = s[e * n_ + e];
        for (std::size_t a = e + 1; a < n_; ++a) {
          const BigInt& sae = s[a * n_ + e];
          for (std::size_t b = e + 1; b < n_; ++b) {
            BigInt& cab = c[a * n_ + b];
            mpz_mul(cab.get_mpz_t(), piv.get_mpz_t(), s[a * n_ + b].get_mpz_t());
            mpz_mul(t.get_mpz_t(), sae.get_mpz_t(), s[e * n_ + b].get_mpz_t());
            mpz_sub(cab.get_mpz_t(), cab.get_mpz_t(), t.get_mpz_t());
            mpz_divexact(cab.get_mpz_t(), cab.get_mpz_t(), pivots[i].get_mpz_t());
          }
        }
        child_pivots[i] = piv;
      }
      dfs(d + 1, with_e, e + 1, child_direct, child_pivots);
    }
  }

  const std::vector<IntMatrix>& lifts_;
  const MinorVisitor& visit_;
  std::size_t n_, q_;
  std::vector<std::vector<std::vector<BigInt>>> state_;
  std::vector<BigInt> minors_;
  std::vector<const BigInt*> minor_ptrs_;
};

// Distinct matrices of a tuple with multiplicities.
struct Grouped {
  std::vector<IntMatrix> lifts;
  std::vector<unsigned long> mult;
  BigInt scale = 1;  // prod_i scale_i^mult_i; mass of S = product / scale^|S|
};

Grouped group_tuple(const MatrixTuple& t) {
  Grouped g;
  std::vector<const Matrix*> seen;
  for (const auto& a : t) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const Matrix* b) { return *b == a; });
    if (it != seen.end()) {
      ++g.mult[static_cast<std::size_t>(it - seen.begin())];
      continue;
    }
    seen.push_back(&a);
    g.lifts.push_back(integer_lift(a));
    g.mult.push_back(1);
  }
  for (std::size_t i = 0; i < g.lifts.size(); ++i) g.scale *= pow(g.lifts[i].scale, g.mult[i]);
  return g;
}

// Visits subsets with their lifted mass prod_i minor_i^mult_i (to be divided by scale^|S|).
void visit_masses(const Grouped& g, const std::function<void(std::uint64_t, int, const BigInt&)>& f) {
  BigInt prod, powered;
  visit_principal_minors(g.lifts, [&](std::uint64_t mask, int size, const BigInt* const* minors) {
    prod = 1;
    for (std::size_t i = 0; i < g.lifts.size(); ++i) {
      if (*minors[i] == 0) {
        prod = 0;
        break;
      }
      if (g.mult[i] == 1) {
        prod *= *minors[i];
      } else {
        mpz_pow_ui(powered.get_mpz_t(), minors[i]->get_mpz_t(), g.mult[i]);
        prod *= powered;
      }
    }
    f(mask, size, prod);
  });
}

Rational unlift(const BigInt& value, const BigInt& scale, std::size_t size) {
  Rational q(value, pow(scale, size));
  q.canonicalize();
  return q;
}

}  // namespace

void visit_principal_minors(const std::vector<IntMatrix>& lifts, const MinorVisitor& visit) {
  for (const auto& l : lifts) {
    if (l.rows != l.cols || l.rows != lifts.front().rows) throw DimensionError("minor walk needs square matrices of one order");
  }
  MinorWalker(lifts, visit).run();
}

std::vector<Rational> z_mk_brute_all(const MatrixTuple& t, std::size_t cap) {
  const std::size_t n = t.n();
  check_cap(n, cap);
  Grouped g = group_tuple(t);
  std::vector<BigInt> sums(n + 1, 0);
  visit_masses(g, [&](std::uint64_t, int size, const BigInt& mass) {
    if (mass != 0) sums[static_cast<std::size_t>(size)] += mass;
  });
  std::vector<Rational> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = unlift(sums[k], g.scale, k);
  return out;
}

Rational z_m_brute(const MatrixTuple& t, std::size_t cap) {
  std::vector<Rational> graded = z_mk_brute_all(t, cap);
  return std::accumulate(graded.begin(), graded.end(), Rational(0));
}

Rational z_mk_brute(const MatrixTuple& t, std::size_t k, std::size_t cap) {
  if (k > t.n()) throw InvalidArgument("subset size exceeds n");
  return z_mk_brute_all(t, cap)[k];
}

std::vector<SubsetMass> subset_masses(const MatrixTuple& t, std::size_t cap) {
  const std::size_t n = t.n();
  check_cap(n, std::min<std::size_t>(cap, 24));
  Grouped g = group_tuple(t);
  std::vector<SubsetMass> out(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < out.size(); ++mask) {
    out[mask].subset = mask_to_subset(mask);
    out[mask].mass = 0;
  }
  visit_masses(g, [&](std::uint64_t mask, int size, const BigInt& mass) {
    if (mass != 0) out[mask].mass = unlift(mass, g.scale, static_cast<std::size_t>(size));
  });
  return out;
}

Rational constrained_mass(const MatrixTuple& t, const std::vector<int>& include,
                          const std::vector<int>& exclude, std::size_t cap) {
  const std::size_t n = t.n();
  check_cap(n, cap);
  std::uint64_t in = 0, out = 0;
  for (int v : include) in |= std::uint64_t{1} << v;
  for (int v : exclude) out |= std::uint64_t{1} << v;
  if (in & out) throw InvalidArgument("include and exclude sets overlap");
  Grouped g = group_tuple(t);
  std::vector<BigInt> sums(n + 1, 0);
  visit_masses(g, [&](std::uint64_t mask, int size, const BigInt& mass) {
    if ((mask & in) == in && (mask & out) == 0 && mass != 0) sums[static_cast<std::size_t>(size)] += mass;
  });
  Rational total = 0;
  for (std::size_t k = 0; k <= n; ++k) total += unlift(sums[k], g.scale, k);
  return total;
}

RationalInterval edpp_brute(const Matrix& a, const Rational& p, unsigned bits, std::size_t cap) {
  if (p <= 0) throw InvalidArgument("exponent must be positive");
  const std::size_t n = a.order();
  check_cap(n, cap);
  IntMatrix lift = integer_lift(a);
  std::vector<IntMatrix> lifts{lift};
  const bool integral = p.get_den() == 1;
  RationalInterval total{0, 0};
  visit_principal_minors(lifts, [&](std::uint64_t, int size, const BigInt* const* minors) {
    if (*minors[0] == 0) return;
    Rational minor = unlift(*minors[0], lift.scale, static_cast<std::size_t>(size));
    if (integral) {
      Rational v = pow(minor, p.get_num().get_ui());
      total.lo += v;
      total.hi += v;
      return;
    }
    if (minor < 0) throw NegativeMinorError("negative principal minor with a fractional exponent");
    RationalInterval v = pow_enclosure(minor, p, bits);
    total.lo += v.lo;
    total.hi += v.hi;
  });
  return total;
}

MapResult map_brute(const Matrix& a, std::size_t cap) {
  const std::size_t n = a.order();
  check_cap(n, cap);
  IntMatrix lift = integer_lift(a);
  std::vector<IntMatrix> lifts{lift};
  MapResult best{{}, 1};
  std::uint64_t best_mask = 0;
  int best_size = 0;
  auto lex_less = [](std::uint64_t x, std::uint64_t y) {
    // Ascending element lists compared lexicographically (sizes equal).
    while (x != y) {
      std::uint64_t lx = x & (~x + 1), ly = y & (~y + 1);
      if (lx != ly) return lx < ly;
      x ^= lx;
      y ^= ly;
    }
    return false;
  };
  visit_principal_minors(lifts, [&](std::uint64_t mask, int size, const BigInt* const* minors) {
    if (mask == 0 || *minors[0] <= 0) return;
    Rational v = unlift(*minors[0], lift.scale, static_cast<std::size_t>(size));
    bool better = v > best.value ||
                  (v == best.value && (size < best_size || (size == best_size && lex_less(mask, best_mask))));
    if (better) {
      best.value = v;
      best_mask = mask;
      best_size = size;
    }
  });
  best.subset = mask_to_subset(best_mask);
  return best;
}

Rational mixed_discriminant_brute(const std::vector<Matrix>& k) {
  const std::size_t m = k.size();
  if (m == 0) throw DimensionError("mixed discriminant of an empty list");
  if (m > 8) throw CapExceeded("mixed discriminant limited to m <= 8");
  for (const auto& x : k) {
    if (!x.is_square() || x.order() != m) throw DimensionError("mixed discriminant needs m matrices of order m");
  }
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  Rational total = 0;
  do {
    Matrix mixed(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) mixed.set(i, j, k[sigma[j]](i, j));
    }
    total += det(mixed);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

std::vector<BigInt> matching_counts_brute(const BipartiteGraphSpec& h) {
  const std::size_t e = h.edges.size();
  if (e > 22) throw CapExceeded("matching enumeration limited to 22 edges");
  std::vector<BigInt> counts(e + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    std::uint64_t left = 0, right = 0;
    bool ok = true;
    for (std::size_t i = 0; i < e && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      const auto [l, r] = h.edges[i];
      if ((left >> l & 1) || (right >> r & 1)) ok = false;
      left |= std::uint64_t{1} << l;
      right |= std::uint64_t{1} << r;
    }
    if (ok) counts[static_cast<std::size_t>(__builtin_popcountll(mask))] += 1;
  }
  return counts;
}

BigInt count_matchings_brute(const BipartiteGraphSpec& h) {
  std::vector<BigInt> c = matching_counts_brute(h);
  return std::accumulate(c.begin(), c.end(), BigInt(0));
}

BigInt count_k_matchings_brute(const BipartiteGraphSpec& h, std::size_t k) {
  std::vector<BigInt> c = matching_counts_brute(h);
  return k < c.size() ? c[k] : BigInt(0);
}

Rational permanental_sum_brute(const MatrixTuple& t, std::size_t cap) {
  const std::size_t n = t.n();
  check_cap(n, cap);
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> s = mask_to_subset(mask);
    Rational prod = 1;
    for (const auto& a : t) {
      prod *= permanent(a.principal_submatrix(s), n);
      if (prod == 0) break;
    }
    total += prod;
  }
  return total;
}

bool has_hamiltonian_path_brute(const DirectedGraphSpec& g) {
  const std::size_t n = g.vertices;
  if (n <= 1) return true;
  if (n > 10) throw CapExceeded("Hamiltonian path search limited to 10 vertices");
  std::vector<std::vector<bool>> arc(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges) arc[u][v] = true;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) ok = arc[order[i]][order[i + 1]];
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace pidpp
