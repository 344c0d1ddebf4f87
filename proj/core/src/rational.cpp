#include "mldlab/rational.hpp"

#include <ostream>

namespace mldlab {

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("Rational: empty text");
  auto slash = text.find('/');
  auto parse_int = [](std::string_view s) -> mpz_class {
    if (s.empty()) throw ParseError("Rational: empty integer part");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw ParseError("Rational: sign without digits");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("Rational: invalid character in '" + std::string(s) + "'");
    return mpz_class(std::string(s), 10);
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw ParseError("Rational: denominator must be positive in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

mpz_class rat_floor(const Rational& x) {
  mpz_class q;
  mpz_class num = x.num(), den = x.den();
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

mpz_class rat_ceil(const Rational& x) {
  mpz_class q;
  mpz_class num = x.num(), den = x.den();
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Rational frac_part(const Rational& x) { return x - Rational(rat_floor(x)); }

long rat_floor_long(const Rational& x) {
  mpz_class f = rat_floor(x);
  if (!f.fits_slong_p()) throw std::overflow_error("rat_floor_long: out of range");
  return f.get_si();
}

bool in_gamma(long q, long n) {
  if (q < 2) throw std::invalid_argument("in_gamma: q must be >= 2");
  if (n < 1) throw std::invalid_argument("in_gamma: n must be >= 1");
  return n % q != 0;
}

}  // namespace mldlab
