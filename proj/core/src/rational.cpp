#include "pidpp/rational.hpp"

#include "pidpp/errors.hpp"

#include <algorithm>
#include <cctype>

namespace pidpp {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw ParseError("malformed number '" + std::string(s) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return BigInt(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
      throw ParseError("malformed denominator in '" + std::string(text) + "'");
    }
    BigInt den = parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+') {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
    BigInt num = parse_integer(std::string(whole) + std::string(frac));
    BigInt den = pow(BigInt(10), frac.size());
    Rational q(negative ? BigInt(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational pow(const Rational& base, unsigned long exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt common_denominator(const std::vector<Rational>& values) {
  BigInt d = 1;
  for (const auto& v : values) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
  return d;
}

RationalInterval root_enclosure(const Rational& y, unsigned long q, unsigned bits) {
  if (q == 0) throw InvalidArgument("root of degree 0");
  if (y < 0) throw InvalidArgument("root of a negative number");
  if (y == 0) return {Rational(0), Rational(0)};
  if (q == 1) return {y, y};
  // y^(1/q) = (num * den^(q-1))^(1/q) / den
  BigInt radicand = y.get_num() * pow(BigInt(y.get_den()), q - 1);
  BigInt root;
  if (mpz_root(root.get_mpz_t(), radicand.get_mpz_t(), q) != 0) {
    Rational exact(root, y.get_den());
    exact.canonicalize();
    return {exact, exact};
  }
  // Scale by 2^(k q) so the integer root carries at least `bits` significant bits.
  long have = static_cast<long>(mpz_sizeinbase(root.get_mpz_t(), 2));
  unsigned long k = static_cast<unsigned long>(std::max<long>(0, static_cast<long>(bits) + 2 - have));
  BigInt scaled = radicand << static_cast<mp_bitcnt_t>(k * q);
  mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), q);
  BigInt den = BigInt(y.get_den()) << static_cast<mp_bitcnt_t>(k);
  Rational lo(root, den);
  Rational hi(BigInt(root + 1), den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

RationalInterval pow_enclosure(const Rational& y, const Rational& p, unsigned bits) {
  if (p <= 0) throw InvalidArgument("exponent must be positive");
  if (!p.get_num().fits_ulong_p() || !p.get_den().fits_ulong_p()) {
    throw InvalidArgument("exponent too large");
  }
  Rational powered = pow(y, p.get_num().get_ui());
  return root_enclosure(powered, p.get_den().get_ui(), bits);
}

bool at_most_pow2_sqrt(const Rational& rho, unsigned long n) {
  if (rho <= 0) throw InvalidArgument("ratio must be positive");
  if (rho <= 1) return true;
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), BigInt(n).get_mpz_t());
  if (s * s == n) {
    // 2^sqrt(n) is an integer; compare exactly.
    return rho <= Rational(BigInt(1) << static_cast<mp_bitcnt_t>(s.get_ui()));
  }
  // 2^sqrt(n) is irrational: bracket log2(rho) through rho^K and decide strictly.
  for (unsigned long k = 16; k <= (1ul << 20); k *= 4) {
    Rational powered = pow(rho, k);
    BigInt fl = powered.get_num() / powered.get_den();  // floor since rho > 1
    long bl = static_cast<long>(mpz_sizeinbase(fl.get_mpz_t(), 2));
    // 2^(bl-1) <= rho^k < 2^bl, so (bl-1)/k <= log2(rho) < bl/k.
    BigInt lo_num(bl - 1), hi_num(bl);
    BigInt kk(k);
    if (hi_num * hi_num <= kk * kk * n) return true;
    if (lo_num * lo_num > kk * kk * n) return false;
  }
  throw Error("could not separate ratio from 2^sqrt(n)");
}

BigInt ceil_sqrt(const BigInt& x) {
  if (x < 0) throw InvalidArgument("square root of a negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r < x) r += 1;
  return r;
}

}  // namespace pidpp
