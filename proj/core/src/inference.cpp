#include "pidpp/inference.hpp"

#include "pidpp/brute.hpp"
#include "pidpp/errors.hpp"
#include "pidpp/linalg.hpp"

#include <algorithm>

namespace pidpp {

namespace {

// D A D with d_i = x on `in`, 0 on `out`, 1 elsewhere.
Matrix mask(const Matrix& a, const ConditionState& st, const Rational& x) {
  const std::size_t n = a.order();
  std::vector<Rational> d(n, 1);
  for (int i : st.in) d[i] = x;
  for (int i : st.out) d[i] = 0;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(d[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(d[j]) != 0 && sgn(a(i, j)) != 0) out.set(i, j, d[i] * a(i, j) * d[j]);
    }
  }
  return out;
}

void check_state(const ConditionState& st, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (const auto* part : {&st.in, &st.out}) {
    for (int i : *part) {
      if (i < 0 || static_cast<std::size_t>(i) >= n) throw InvalidArgument("element out of range");
      if (seen[i]++) throw InvalidArgument("Y and N must be disjoint sets");
    }
  }
}

}  // namespace

Rational conditioned_mass(const MatrixTuple& t, const ConditionState& st, NormalizerOracle& oracle) {
  check_state(st, t.n());
  const std::size_t k = st.in.size();
  std::vector<std::pair<Rational, Rational>> points;
  for (std::size_t x = 1; x <= k + 1; ++x) {
    const Rational xr(static_cast<long>(x));
    points.emplace_back(xr * xr, oracle.z(t.with(0, mask(t[0], st, xr))));
  }
  return interpolate(points, k).coefficient(k);
}

Rational conditional_probability(const MatrixTuple& t, const ConditionState& st, int e, NormalizerOracle& oracle) {
  if (std::find(st.in.begin(), st.in.end(), e) != st.in.end() ||
      std::find(st.out.begin(), st.out.end(), e) != st.out.end()) {
    throw InvalidArgument("element already decided");
  }
  const Rational denominator = conditioned_mass(t, st, oracle);
  if (sgn(denominator) == 0) throw ProbabilityError("conditioning event has zero mass");
  ConditionState with = st;
  with.in.push_back(e);
  const Rational p = conditioned_mass(t, with, oracle) / denominator;
  if (p < 0 || p > 1) throw ProbabilityError("conditional probability " + to_string(p) + " outside [0, 1]");
  return p;
}

BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw InvalidArgument("uniform_below needs a positive bound");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  BigInt r;
  while (true) {
    r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t word = rng();
      r <<= 64;
      r += BigInt(static_cast<unsigned long>(word));
    }
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    if (r < bound) return r;
  }
}

bool bernoulli(const Rational& p, std::mt19937_64& rng) {
  if (p < 0 || p > 1) throw ProbabilityError("probability " + to_string(p) + " outside [0, 1]");
  if (sgn(p) == 0) return false;
  if (p == 1) return true;
  return uniform_below(p.get_den(), rng) < p.get_num();
}

Sampler::Sampler(MatrixTuple t, NormalizerOracle& oracle) : t_(std::move(t)), oracle_(oracle) {
  if (!oracle_.configured()) oracle_.configure(t_);
}

Rational Sampler::mass(const std::string& prefix) {
  auto it = cache_.find(prefix);
  if (it != cache_.end()) return it->second;
  ConditionState st;
  for (std::size_t e = 0; e < prefix.size(); ++e) (prefix[e] == '1' ? st.in : st.out).push_back(static_cast<int>(e));
  Rational m = conditioned_mass(t_, st, oracle_);
  cache_.emplace(prefix, m);
  return m;
}

Rational Sampler::step_probability(const std::string& prefix) {
  const Rational total = mass(prefix);
  if (sgn(total) == 0) throw ProbabilityError("conditioning event has zero mass");
  const Rational in = mass(prefix + '1');
  cache_.emplace(prefix + '0', total - in);
  const Rational p = in / total;
  if (p < 0 || p > 1) throw ProbabilityError("conditional probability " + to_string(p) + " outside [0, 1]");
  return p;
}

std::vector<int> Sampler::sample(std::mt19937_64& rng) {
  std::string prefix;
  std::vector<int> subset;
  for (std::size_t e = 0; e < t_.n(); ++e) {
    const bool take = bernoulli(step_probability(prefix), rng);
    prefix.push_back(take ? '1' : '0');
    if (take) subset.push_back(static_cast<int>(e));
  }
  return subset;
}

Rational Sampler::probability(const std::vector<int>& subset) {
  std::vector<char> member(t_.n(), 0);
  for (int e : subset) {
    if (e < 0 || static_cast<std::size_t>(e) >= t_.n()) throw InvalidArgument("element out of range");
    member[e] = 1;
  }
  std::string prefix;
  Rational prob = 1;
  for (std::size_t e = 0; e < t_.n(); ++e) {
    const Rational p = step_probability(prefix);
    prob *= member[e] ? p : Rational(1 - p);
    if (sgn(prob) == 0) return 0;
    prefix.push_back(member[e] ? '1' : '0');
  }
  return prob;
}

std::vector<int> sample(const MatrixTuple& t, NormalizerOracle& oracle, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Sampler s(t, oracle);
  return s.sample(rng);
}

std::vector<Rational> z_mk_all(const MatrixTuple& t, NormalizerOracle& oracle) {
  const std::size_t n = t.n();
  std::vector<std::pair<Rational, Rational>> points;
  for (std::size_t x = 1; x <= n + 1; ++x) {
    const Rational xr(static_cast<long>(x));
    points.emplace_back(xr, oracle.z(t.with(0, xr * t[0])));
  }
  return interpolate(points, n).coeffs;
}

namespace {

void require_p0(const Matrix& a) {
  if (a.order() > 16) return;
  bool negative = false;
  visit_principal_minors({integer_lift(a)}, [&](std::uint64_t, int, const BigInt* const* minors) {
    if (sgn(*minors[0]) < 0) negative = true;
  });
  if (negative) throw NegativeMinorError("matrix has a negative principal minor");
}

Rational exact_power_sum(const Matrix& a, std::size_t p, const OracleLimits& limits, Strategy strategy) {
  NormalizerOracle oracle(strategy, limits);
  Rational z = oracle.z(repeat(a, p));
  if (z < 0) throw NegativeMinorError("negative normalizer: matrix is not P0");
  return z;
}

}  // namespace

EdppEstimate edpp_fractional(const Matrix& a, const Rational& p, const OracleLimits& limits, Strategy strategy) {
  if (p <= 1) throw InvalidArgument("exponent must exceed 1");
  require_p0(a);
  const std::size_t n = a.order();
  EdppEstimate est;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), p.get_num_mpz_t(), p.get_den_mpz_t());
  const std::size_t f = fl.get_ui();
  if (p.get_den() == 1) {
    Rational z = exact_power_sum(a, f, limits, strategy);
    est.interval = {z, z};
    est.exact = true;
    est.branch = "integer";
    est.z_floor = est.z_ceil = z;
    est.lambda = 0;
    est.lambda_star = Rational(static_cast<long>(f + 1), static_cast<long>(2 * f + 1));
    return est;
  }
  const std::size_t c = f + 1;
  const unsigned long num = p.get_num().get_ui();
  const unsigned long den = p.get_den().get_ui();
  est.z_floor = exact_power_sum(a, f, limits, strategy);
  est.z_ceil = exact_power_sum(a, c, limits, strategy);
  est.lambda = Rational(static_cast<long>(c)) - p;
  est.lambda_star = Rational(static_cast<long>(f + 1), static_cast<long>(2 * f + 1));
  Rational base;
  unsigned long root = 0;
  if (est.lambda > est.lambda_star) {
    est.branch = "floor";
    base = pow(est.z_floor, num);
    root = f * den;
  } else {
    est.branch = "ceil";
    BigInt two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n * (c * den - num));
    base = Rational(two_pow) * pow(est.z_ceil, num);
    root = c * den;
  }
  // alpha = 2^{n (1/(2p-1) - 1/(2 floor(p) + 1))}
  Rational e = Rational(static_cast<long>(n)) *
               (Rational(static_cast<long>(den), static_cast<long>(2 * num - den)) -
                Rational(1, static_cast<long>(2 * f + 1)));
  e.canonicalize();
  BigInt alpha_base;
  mpz_ui_pow_ui(alpha_base.get_mpz_t(), 2, e.get_num().get_ui());
  for (unsigned bits = 64;; bits *= 2) {
    RationalInterval estimate = root_enclosure(base, root, bits);
    RationalInterval alpha = root_enclosure(Rational(alpha_base), e.get_den().get_ui(), bits);
    Rational hi = alpha.lo * estimate.lo;
    if (estimate.hi <= hi) {
      est.interval = {estimate.hi, hi};
      est.bits = bits;
      return est;
    }
    if (bits > (1U << 20)) throw Error("precision limit reached in fractional estimate");
  }
}

std::size_t map_exponent(std::size_t n) {
  const BigInt p = ceil_sqrt(BigInt(static_cast<unsigned long>(4 * n)));
  return std::max<std::size_t>(1, p.get_ui());
}

MapEstimate map_inference(const Matrix& a, std::uint64_t seed, std::size_t trials, bool verify,
                          const OracleLimits& limits, Strategy strategy) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  const std::size_t n = a.order();
  MapEstimate best;
  best.certificate.exponent = map_exponent(n);
  best.certificate.draws = trials;
  NormalizerOracle oracle(strategy, limits);
  Sampler sampler(repeat(a, best.certificate.exponent), oracle);
  std::mt19937_64 rng(seed);
  bool have = false;
  for (std::size_t k = 0; k < trials; ++k) {
    std::vector<int> s = sampler.sample(rng);
    Rational v = principal_minor(a, s);
    if (!have || v > best.value) {
      best.subset = std::move(s);
      best.value = v;
      have = true;
    }
  }
  if (verify) {
    const Rational opt = map_brute(a).value;
    best.certificate.optimum = opt;
    best.certificate.within_bound = best.value > 0 && at_most_pow2_sqrt(opt / best.value, n);
  }
  return best;
}

}  // namespace pidpp
