#pragma once

#include "pidpp/graph.hpp"
#include "pidpp/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace pidpp {

inline constexpr std::size_t kDefaultBruteCap = 22;

// PIDPP_MAX_BRUTE_N when set to a positive integer, otherwise kDefaultBruteCap.
std::size_t brute_cap();

// Called with the subset as a bitmask, its size, and det(lift_i[S,S]) for every lifted matrix.
using MinorVisitor = std::function<void(std::uint64_t mask, int size, const BigInt* const* minors)>;

// Visits every subset S of [n] (the empty set first) with its lifted principal minors,
// except subtrees {S' ⊇ S} in which some matrix is proven to have only zero minors.
// Minors are read off Bareiss/Sylvester Schur states along a depth-first walk.
void visit_principal_minors(const std::vector<IntMatrix>& lifts, const MinorVisitor& visit);

struct SubsetMass {
  std::vector<int> subset;
  Rational mass;  // prod_i det(A^i[S,S])
};

Rational z_m_brute(const MatrixTuple& t, std::size_t cap = brute_cap());
Rational z_mk_brute(const MatrixTuple& t, std::size_t k, std::size_t cap = brute_cap());
// (Z_{m,0}, ..., Z_{m,n}).
std::vector<Rational> z_mk_brute_all(const MatrixTuple& t, std::size_t cap = brute_cap());

// All 2^n masses, indexed by subset bitmask.
std::vector<SubsetMass> subset_masses(const MatrixTuple& t, std::size_t cap = brute_cap());

// Total mass of subsets S with include ⊆ S and S ∩ exclude = ∅.
Rational constrained_mass(const MatrixTuple& t, const std::vector<int>& include,
                          const std::vector<int>& exclude, std::size_t cap = brute_cap());

// sum_S det(A[S,S])^p. Exact (degenerate interval) for integer p and whenever every
// power is rational; otherwise relative width at most 2^-bits.
// Throws NegativeMinorError for a negative minor with fractional p.
RationalInterval edpp_brute(const Matrix& a, const Rational& p, unsigned bits = 64,
                            std::size_t cap = brute_cap());

struct MapResult {
  std::vector<int> subset;
  Rational value;
};

// argmax_S det(A[S,S]); ties go to the smallest |S|, then the lexicographically smallest S.
MapResult map_brute(const Matrix& a, std::size_t cap = brute_cap());

// sum over sigma in S_m of det(matrix whose column j is column j of K^{sigma(j)}).
Rational mixed_discriminant_brute(const std::vector<Matrix>& k);

// Number of matchings of each size 0..|E| (empty matching included). |E| <= 22.
std::vector<BigInt> matching_counts_brute(const BipartiteGraphSpec& h);
BigInt count_matchings_brute(const BipartiteGraphSpec& h);
BigInt count_k_matchings_brute(const BipartiteGraphSpec& h, std::size_t k);

// sum_S prod_i per(A^i[S,S]).
Rational permanental_sum_brute(const MatrixTuple& t, std::size_t cap = 16);

// Exhaustive search for a directed path visiting every vertex once.
bool has_hamiltonian_path_brute(const DirectedGraphSpec& g);

}  // namespace pidpp
