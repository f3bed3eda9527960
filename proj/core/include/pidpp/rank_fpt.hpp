#pragma once

#include "pidpp/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pidpp {

// dp[l][o] for l in [0, s), o in [0, n): sum over ascending index sets of size l+1
// with maximum o of the product of the selected row entries.
using DpGrid = std::vector<std::vector<Rational>>;

// slices[i] is n x s; row position l of the chosen subset reads column perms[i][l] of slices[i].
DpGrid shared_subset_table(const std::vector<Matrix>& slices, const std::vector<std::vector<int>>& perms);

// sum over S in ([n] choose s) of prod_l prod_i slices[i](o_l, perms[i][l]), o_1 < ... < o_s.
// s = 0 gives 1. Throws InvalidArgument when s > n.
Rational shared_subset_sum(const std::vector<Matrix>& slices, const std::vector<std::vector<int>>& perms);

struct RankOptions {
  // Upper limit on sum_s prod_i C(r_i, s) (s!)^2 inner dynamic programs.
  std::uint64_t budget = 20'000'000;
};

// Number of inner dynamic programs for the given per-matrix ranks.
BigInt rank_work_estimate(const std::vector<std::size_t>& ranks);

// Exact Z_m for symmetric PSD matrices by Cauchy-Binet over low-rank factors.
// Throws NotPsdError (LDL failure) or BudgetExceeded.
Rational zm_rank(const MatrixTuple& t, const RankOptions& options = {});

}  // namespace pidpp
