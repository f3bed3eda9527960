#pragma once

#include "pidpp/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace pidpp {

// Coefficients c_0..c_d of sum c_k x^k. The degree is a declared bound: the leading
// coefficient may be zero.
struct UnivariatePolynomial {
  std::vector<Rational> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Rational evaluate(const Rational& x) const;
  // Coefficient of x^k, zero beyond the stored degree.
  Rational coefficient(std::size_t k) const { return k < coeffs.size() ? coeffs[k] : Rational(0); }
};

// The polynomial of degree <= d through the points. Uses the first d+1 points and
// checks the rest against it. Throws InvalidArgument on duplicate abscissae, fewer than
// d+1 points, or surplus points off the curve.
UnivariatePolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points, std::size_t d);

}  // namespace pidpp
