#pragma once

#include <string>
#include <utility>

#include "twoisog/poly.hpp"

namespace twoisog {

/// Element of Q(T) as num/den with den monic and gcd(num, den) = 1.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const RationalPolynomial& p) : num_(p), den_(1) {}  // NOLINT
  RationalFunction(const Rational& c) : num_(c), den_(1) {}            // NOLINT
  RationalFunction(int c) : num_(c), den_(1) {}                        // NOLINT
  RationalFunction(const RationalPolynomial& n, const RationalPolynomial& d) : num_(n), den_(d) {
    if (d.is_zero()) throw domain_error("rational function with zero denominator");
    normalize();
  }

  const RationalPolynomial& num() const { return num_; }
  const RationalPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Value at t; throws if t is a pole.
  Rational operator()(const Rational& t) const {
    Rational d = den_(t);
    if (d.is_zero()) throw domain_error("rational function evaluated at a pole");
    return num_(t) / d;
  }

  RationalFunction operator-() const { return RationalFunction(-num_, den_, raw_tag{}); }
  friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) {
    if (f.den_ == g.den_) return {f.num_ + g.num_, f.den_};
    return {f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_};
  }
  friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) {
    return f + (-g);
  }
  friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
    if (f.is_polynomial() && g.is_polynomial())
      return RationalFunction(f.num_ * g.num_, RationalPolynomial(1), raw_tag{});
    return {f.num_ * g.num_, f.den_ * g.den_};
  }
  friend RationalFunction operator/(const RationalFunction& f, const RationalFunction& g) {
    if (g.is_zero()) throw domain_error("division by the zero rational function");
    return {f.num_ * g.den_, f.den_ * g.num_};
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  struct raw_tag {};
  RationalFunction(RationalPolynomial n, RationalPolynomial d, raw_tag)
      : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (num_.is_zero()) {
      den_ = RationalPolynomial(1);
      return;
    }
    RationalPolynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    Rational lc = den_.leading();
    if (lc != Rational(1)) {
      num_ = num_ * RationalPolynomial(Rational(1) / lc);
      den_ = den_.monic();
    }
  }

  RationalPolynomial num_, den_;
};

inline RationalFunction pow(const RationalFunction& f, int e) {
  if (e < 0) return RationalFunction(1) / pow(f, -e);
  RationalFunction r(1), b = f;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace twoisog
