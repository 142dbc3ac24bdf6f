#ifndef REDFORM_RATIONAL_HPP
#define REDFORM_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <string>

#include "redform/errors.hpp"

namespace redform {

using Int = mpz_class;

// Exact rational number, always canonical: lowest terms, denominator >= 1,
// zero represented as 0/1. Thin value wrapper over mpq_class so that
// canonicalization is never forgotten and printing/parsing is uniform
// ("num" for integers, "num/den" otherwise).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(const Int& n) : v_(n) {}                      // NOLINT(google-explicit-constructor)
  Rational(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw Error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(Int(num), Int(den)) {}

  static Rational parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }
  mpq_class& raw() { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  // this^e, negative e allowed for nonzero values.
  Rational pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
      if (e < 0) throw Error("Rational: 0^negative");
      return Rational();
    }
    mpq_class base = e < 0 ? mpq_class(1 / v_) : v_;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), ae);
    mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), ae);
    mpq_class r(n, d);  // already canonical: base was canonical
    return Rational(r);
  }

  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  explicit Rational(const mpq_class& q) : v_(q) {}
  mpq_class v_;
};

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// ell^e as a rational, e may be negative (the lambda=0 Hecke factor ell^{-1}).
inline Rational rational_prime_power(long ell, long e) {
  return Rational(Int(ell)).pow(e);
}

}  // namespace redform

#endif
