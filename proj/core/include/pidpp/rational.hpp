#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pidpp {

// Canonical (gcd-reduced, positive denominator) GMP rational.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p/q", integers and finite decimals such as "-1.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

Rational pow(const Rational& base, unsigned long exponent);
BigInt pow(const BigInt& base, unsigned long exponent);
BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);

// lcm of all denominators; 1 for an empty range.
BigInt common_denominator(const std::vector<Rational>& values);

// Closed interval [lo, hi] of rationals.
struct RationalInterval {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

// Encloses y^(1/q) for y >= 0 with relative width at most 2^-bits.
// Degenerates to a point when the root is rational.
RationalInterval root_enclosure(const Rational& y, unsigned long q, unsigned bits);

// Encloses y^p for y >= 0 and rational p > 0.
RationalInterval pow_enclosure(const Rational& y, const Rational& p, unsigned bits);

// Exact test of rho <= 2^(sqrt(n)) for rational rho > 0.
bool at_most_pow2_sqrt(const Rational& rho, unsigned long n);

// ceil(sqrt(x)) for x >= 0.
BigInt ceil_sqrt(const BigInt& x);

}  // namespace pidpp
