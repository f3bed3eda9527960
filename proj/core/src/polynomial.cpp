#include "pidpp/polynomial.hpp"

#include "pidpp/errors.hpp"

#include <set>

namespace pidpp {

Rational UnivariatePolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UnivariatePolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points, std::size_t d) {
  if (points.size() < d + 1) throw InvalidArgument("interpolation needs at least d+1 points");
  std::set<Rational> seen;
  for (const auto& p : points) {
    if (!seen.insert(p.first).second) throw InvalidArgument("duplicate interpolation abscissa");
  }
  // Newton divided differences on the first d+1 points.
  const std::size_t k = d + 1;
  std::vector<Rational> dd(k);
  for (std::size_t i = 0; i < k; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < k; ++level) {
    for (std::size_t i = k - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);
    }
  }
  // Horner expansion of the Newton form into monomial coefficients.
  std::vector<Rational> c(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    // c <- c * (x - x_i) + dd[i]
    for (std::size_t j = k - 1; j > 0; --j) c[j] = c[j - 1] - points[i].first * c[j];
    c[0] = -points[i].first * c[0];
    c[0] += dd[i];
  }
  UnivariatePolynomial poly{std::move(c)};
  for (std::size_t i = k; i < points.size(); ++i) {
    if (poly.evaluate(points[i].first) != points[i].second) {
      throw InvalidArgument("surplus point does not lie on the degree-d interpolant");
    }
  }
  return poly;
}

}  // namespace pidpp
