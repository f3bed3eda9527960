#include "pidpp/rank_fpt.hpp"

#include "pidpp/errors.hpp"
#include "pidpp/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pidpp {

namespace {

void check_slices(const std::vector<Matrix>& slices, const std::vector<std::vector<int>>& perms,
                  std::size_t& n, std::size_t& s) {
  if (slices.empty() || slices.size() != perms.size()) throw DimensionError("need one permutation per slice");
  n = slices.front().rows();
  s = slices.front().cols();
  if (s > n) throw InvalidArgument("subset size exceeds n");
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (slices[i].rows() != n || slices[i].cols() != s || perms[i].size() != s) {
      throw DimensionError("slices must all be n x s with permutations of length s");
    }
    std::vector<int> p = perms[i];
    std::sort(p.begin(), p.end());
    for (std::size_t l = 0; l < s; ++l) {
      if (p[l] != static_cast<int>(l)) throw InvalidArgument("perms[i] is not a permutation");
    }
  }
}

// Integer dynamic program over a row-product grid w (n x s, row-major).
void subset_dp(const std::vector<BigInt>& w, std::size_t n, std::size_t s, std::vector<BigInt>& prev,
               std::vector<BigInt>& cur, BigInt& result) {
  if (s == 0) {
    result = 1;
    return;
  }
  for (std::size_t o = 0; o < n; ++o) prev[o] = w[o * s];
  BigInt prefix;
  for (std::size_t l = 1; l < s; ++l) {
    prefix = 0;
    for (std::size_t o = 0; o < n; ++o) {
      // prefix = sum_{o' < o} prev[o']
      mpz_mul(cur[o].get_mpz_t(), prefix.get_mpz_t(), w[o * s + l].get_mpz_t());
      prefix += prev[o];
    }
    std::swap(prev, cur);
  }
  result = 0;
  for (std::size_t o = 0; o < n; ++o) result += prev[o];
}

struct PermTable {
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
};

PermTable all_permutations(std::size_t s) {
  PermTable t;
  std::vector<int> p(s);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inv = 0;
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = a + 1; b < s; ++b) inv += p[a] > p[b];
    }
    t.perms.push_back(p);
    t.signs.push_back(inv % 2 ? -1 : 1);
  } while (std::next_permutation(p.begin(), p.end()));
  return t;
}

std::vector<std::vector<int>> all_subsets(std::size_t r, std::size_t s) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(s);
  std::iota(c.begin(), c.end(), 0);
  if (s > r) return out;
  while (true) {
    out.push_back(c);
    std::size_t i = s;
    while (i > 0 && c[i - 1] == static_cast<int>(r - s + i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < s; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

struct Factor {
  IntMatrix u, v;  // n x r integer lifts
  std::size_t r = 0;
};

// Enumerates (C_i, sigma_i, tau_i) for all matrices, keeping partial row-product grids per level.
class RankExpansion {
 public:
  RankExpansion(const std::vector<Factor>& factors, std::size_t n, std::size_t s)
      : f_(factors), n_(n), s_(s), perms_(all_permutations(s)), levels_(2 * factors.size() + 1) {
    for (const auto& fi : f_) subsets_.push_back(all_subsets(fi.r, s));
    for (auto& l : levels_) l.assign(n_ * s_, 0);
    for (auto& x : levels_[0]) x = 1;
    prev_.resize(n_);
    cur_.resize(n_);
  }

  BigInt run() {
    total_ = 0;
    descend(0, 1);
    return total_;
  }

 private:
  void descend(std::size_t depth, int sign) {
    const std::size_t q = f_.size();
    if (depth == 2 * q) {
      subset_dp(levels_[depth], n_, s_, prev_, cur_, star_);
      if (sign > 0) {
        total_ += star_;
      } else {
        total_ -= star_;
      }
      return;
    }
    const std::size_t i = depth / 2;
    const bool right = depth % 2 == 1;
    if (!right) {
      for (const auto& c : subsets_[i]) {
        for (std::size_t p = 0; p < perms_.perms.size(); ++p) {
          apply(depth, f_[i].u, c, perms_.perms[p]);
          saved_.push_back(&c);
          descend(depth + 1, sign * perms_.signs[p]);
          saved_.pop_back();
        }
      }
    } else {
      const std::vector<int>& c = *saved_.back();
      for (std::size_t p = 0; p < perms_.perms.size(); ++p) {
        apply(depth, f_[i].v, c, perms_.perms[p]);
        descend(depth + 1, sign * perms_.signs[p]);
      }
    }
  }

  void apply(std::size_t depth, const IntMatrix& m, const std::vector<int>& c, const std::vector<int>& perm) {
    const auto& from = levels_[depth];
    auto& to = levels_[depth + 1];
    for (std::size_t o = 0; o < n_; ++o) {
      for (std::size_t l = 0; l < s_; ++l) {
        mpz_mul(to[o * s_ + l].get_mpz_t(), from[o * s_ + l].get_mpz_t(), m(o, c[perm[l]]).get_mpz_t());
      }
    }
  }

  const std::vector<Factor>& f_;
  std::size_t n_, s_;
  PermTable perms_;
  std::vector<std::vector<std::vector<int>>> subsets_;
  std::vector<std::vector<BigInt>> levels_;
  std::vector<const std::vector<int>*> saved_;
  std::vector<BigInt> prev_, cur_;
  BigInt star_, total_;
};

}  // namespace

DpGrid shared_subset_table(const std::vector<Matrix>& slices, const std::vector<std::vector<int>>& perms) {
  std::size_t n = 0, s = 0;
  check_slices(slices, perms, n, s);
  DpGrid dp(s, std::vector<Rational>(n, 0));
  auto row_product = [&](std::size_t l, std::size_t o) {
    Rational p = 1;
    for (std::size_t i = 0; i < slices.size(); ++i) p *= slices[i](o, perms[i][l]);
    return p;
  };
  for (std::size_t l = 0; l < s; ++l) {
    Rational prefix = 0;
    for (std::size_t o = 0; o < n; ++o) {
      dp[l][o] = l == 0 ? row_product(0, o) : prefix * row_product(l, o);
      if (l > 0) prefix += dp[l - 1][o];
    }
  }
  return dp;
}

Rational shared_subset_sum(const std::vector<Matrix>& slices, const std::vector<std::vector<int>>& perms) {
  std::size_t n = 0, s = 0;
  check_slices(slices, perms, n, s);
  if (s == 0) return 1;
  DpGrid dp = shared_subset_table(slices, perms);
  return std::accumulate(dp[s - 1].begin(), dp[s - 1].end(), Rational(0));
}

BigInt rank_work_estimate(const std::vector<std::size_t>& ranks) {
  if (ranks.empty()) return 0;
  const std::size_t rmin = *std::min_element(ranks.begin(), ranks.end());
  BigInt total = 0;
  for (std::size_t s = 0; s <= rmin; ++s) {
    BigInt term = 1;
    BigInt f = factorial(s);
    for (std::size_t r : ranks) term *= binomial(r, s) * f * f;
    total += term;
  }
  return total;
}

Rational zm_rank(const MatrixTuple& t, const RankOptions& options) {
  const std::size_t n = t.n();
  std::vector<Factor> factors;
  std::vector<std::size_t> ranks;
  for (const auto& a : t) {
    LdlFactorization ldl = ldl_factor(a);
    LowRankFactorization lr = low_rank_factor(a, ldl.rank);
    Factor f;
    f.r = ldl.rank;
    f.u = integer_lift(lr.left);
    f.v = integer_lift(lr.right);
    ranks.push_back(f.r);
    factors.push_back(std::move(f));
  }
  BigInt work = rank_work_estimate(ranks);
  if (work > BigInt(std::to_string(options.budget))) {
    throw BudgetExceeded("rank expansion needs " + work.get_str() + " inner programs, budget is " +
                         std::to_string(options.budget));
  }
  BigInt scale = 1;
  for (const auto& f : factors) scale *= f.u.scale * f.v.scale;
  const std::size_t smax = std::min(n, *std::min_element(ranks.begin(), ranks.end()));
  Rational z = 0;
  for (std::size_t s = 0; s <= smax; ++s) {
    BigInt sum = s == 0 ? BigInt(1) : RankExpansion(factors, n, s).run();
    Rational term(sum, pow(scale, s));
    term.canonicalize();
    z += term;
  }
  return z;
}

}  // namespace pidpp
