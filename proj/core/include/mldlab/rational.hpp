#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mldlab/errors.hpp"

namespace mldlab {

// Exact rational scalar. Always stored reduced with a positive denominator,
// so equality, ordering and hashing agree with the represented real number.
// Immutable after construction; safe to share across threads.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& n) : v_(n) {}

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

  // Parses the canonical text form "p/q" (or "p" for integers).
  static Rational parse(std::string_view text);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // Canonical text form: reduced "p/q" with q > 0, integers as plain "p".
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x);

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;  // invariant: canonical form
};

// Greatest integer <= x.
mpz_class rat_floor(const Rational& x);

// Least integer >= x.
mpz_class rat_ceil(const Rational& x);

// x - floor(x), always in [0,1).
Rational frac_part(const Rational& x);

// floor(x) as long; the values handled by this library are tiny.
long rat_floor_long(const Rational& x);

// Membership in Gamma_q = { n >= 1 : q does not divide n }.  Requires q >= 2.
bool in_gamma(long q, long n);

}  // namespace mldlab

template <>
struct std::hash<mldlab::Rational> {
  std::size_t operator()(const mldlab::Rational& x) const noexcept {
    // Values are canonical, so hashing any exact function of (num, den) is
    // consistent with equality.
    constexpr unsigned long kMod = 0xffffffffffffffc5ul;  // largest prime < 2^64
    mpz_class n = x.num(), d = x.den();
    std::size_t hn = mpz_fdiv_ui(n.get_mpz_t(), kMod);
    std::size_t hd = mpz_fdiv_ui(d.get_mpz_t(), kMod);
    return hn ^ (hd * 0x9e3779b97f4a7c15ull + (hn << 6) + (hn >> 2));
  }
};
