#pragma once

#include "pidpp/matrix.hpp"
#include "pidpp/oracle.hpp"
#include "pidpp/polynomial.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace pidpp {

// Y: elements committed in, N: committed out. Disjoint.
struct ConditionState {
  std::vector<int> in;
  std::vector<int> out;
};

// Mass of {S : Y ⊆ S, S ∩ N = ∅}: the coefficient of x^{2|Y|} in
// Z_m(D A^1 D, A^2, ..., A^m), d_i = x on Y, 0 on N, 1 elsewhere. Z is a polynomial in
// u = x^2 of degree |Y|, interpolated from x = 1..|Y|+1.
Rational conditioned_mass(const MatrixTuple& t, const ConditionState& st, NormalizerOracle& oracle);

// Pr[e ∈ S | Y ⊆ S, N ∩ S = ∅]. Throws ProbabilityError when the event has zero mass
// or the ratio leaves [0, 1] (a sign that some matrix is not P0).
Rational conditional_probability(const MatrixTuple& t, const ConditionState& st, int e, NormalizerOracle& oracle);

// Uniform integer in [0, bound) by rejection on 64-bit words.
BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng);
// True with probability exactly p in [0, 1].
bool bernoulli(const Rational& p, std::mt19937_64& rng);

// Sequential exact sampler. Masses of decided prefixes are cached, so repeated draws
// share oracle work; each step needs one new conditioned mass.
class Sampler {
 public:
  Sampler(MatrixTuple t, NormalizerOracle& oracle);

  std::vector<int> sample(std::mt19937_64& rng);
  // Exact probability that sample() returns `subset`, as a product of conditionals.
  Rational probability(const std::vector<int>& subset);

  std::uint64_t oracle_calls() const { return oracle_.calls(); }

 private:
  // Mass of the event fixed by decisions on elements 0..|prefix|-1 ('1' in, '0' out).
  Rational mass(const std::string& prefix);
  Rational step_probability(const std::string& prefix);

  MatrixTuple t_;
  NormalizerOracle& oracle_;
  std::unordered_map<std::string, Rational> cache_;
};

// One draw with a generator seeded by `seed`.
std::vector<int> sample(const MatrixTuple& t, NormalizerOracle& oracle, std::uint64_t seed);

// (Z_{m,0}, ..., Z_{m,n}) as the coefficients of Z_m(x A^1, A^2, ...), x = 1..n+1.
std::vector<Rational> z_mk_all(const MatrixTuple& t, NormalizerOracle& oracle);

struct EdppEstimate {
  // Every value in the interval lies in [Z^p, 2^{n/(2p-1)} Z^p].
  RationalInterval interval;
  bool exact = false;  // integer p: interval is the point Z^p
  std::string branch;  // "integer", "floor" or "ceil"
  Rational lambda;     // ceil(p) - p
  Rational lambda_star;
  Rational z_floor;  // Z^{floor p}
  Rational z_ceil;   // Z^{ceil p}
  unsigned bits = 0;  // precision of the root enclosures
};

// Throws InvalidArgument for p <= 1, NegativeMinorError when a negative principal minor
// is found (checked exhaustively for n <= 16).
EdppEstimate edpp_fractional(const Matrix& a, const Rational& p, const OracleLimits& limits = {},
                             Strategy strategy = Strategy::automatic);

struct MapCertificate {
  std::size_t exponent = 0;  // p = ceil(2 sqrt(n))
  std::size_t draws = 0;
  // Filled when verification against map_brute was requested.
  std::optional<Rational> optimum;
  std::optional<bool> within_bound;  // value >= 2^{-sqrt n} * optimum
};

struct MapEstimate {
  std::vector<int> subset;
  Rational value;
  MapCertificate certificate;
};

// Draws `trials` samples from the E-DPP with exponent ceil(2 sqrt(n)) and keeps the best.
MapEstimate map_inference(const Matrix& a, std::uint64_t seed, std::size_t trials = 1, bool verify = false,
                          const OracleLimits& limits = {}, Strategy strategy = Strategy::automatic);

// Smallest p with p^2 >= 4n.
std::size_t map_exponent(std::size_t n);

}  // namespace pidpp
