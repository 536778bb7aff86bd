#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "twoisog/errors.hpp"

namespace twoisog {

using Integer = mpz_class;

inline int sign(const Integer& n) { return mpz_sgn(n.get_mpz_t()); }

inline Integer abs(const Integer& n) {
  Integer r;
  mpz_abs(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Nonnegative residue of n modulo m (m > 0).
inline Integer mod(const Integer& n, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer pow(const Integer& base, int e) {
  if (e < 0) throw domain_error("negative integer power");
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

inline bool is_perfect_square(const Integer& n) {
  return sign(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Exact rational number, always gcd-reduced with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : q_(n) {}   // NOLINT(google-explicit-constructor)
  Rational(const Integer& n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  template <class U>
  Rational(const __gmp_expr<mpz_t, U>& e) : q_(mpz_class(e)) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& n, const Integer& d) {
    if (mpz_sgn(d.get_mpz_t()) == 0) throw domain_error("rational with zero denominator");
    q_.get_num() = n;
    q_.get_den() = d;
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "n", "n/d" or "-n/d".
  static Rational parse(std::string_view s) {
    std::string str(s);
    auto slash = str.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(str));
      return Rational(Integer(str.substr(0, slash)), Integer(str.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw domain_error("malformed rational '" + str + "'");
    }
  }

  const Integer& num() const { return q_.get_num(); }
  const Integer& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return mpq_sgn(q_.get_mpq_t()); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return den() == 1; }

  /// "num/den", denominator always printed.
  std::string str() const { return num().get_str() + "/" + den().get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rational pow(const Rational& base, int e) {
  if (e < 0) return Rational(1) / pow(base, -e);
  Rational r(1), b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// max(|num|, den), the naive height.
inline Integer height(const Rational& r) {
  Integer n = abs(r.num());
  return n > r.den() ? n : r.den();
}

}  // namespace twoisog

template <>
struct std::hash<twoisog::Rational> {
  std::size_t operator()(const twoisog::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
