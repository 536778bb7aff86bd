#pragma once

#include <string>
#include <utility>

#include "twoisog/curve.hpp"
#include "twoisog/tate.hpp"

namespace twoisog {

/// A closed point where local data is taken: a prime of Z, a linear place
/// T - e of Q(T), or the place at infinity of Q(T).
struct Place {
  enum class Kind { finite_prime, ft_linear, ft_infinity };
  Kind kind = Kind::finite_prime;
  Integer p = 0;
  Rational e;

  static Place prime(const Integer& p) {
    if (!is_prime(p)) throw domain_error("place at non-prime " + p.get_str());
    return {Kind::finite_prime, p, {}};
  }
  static Place linear(const Rational& e) { return {Kind::ft_linear, 0, e}; }
  static Place infinity() { return {Kind::ft_infinity, 0, {}}; }

  bool is_function_field() const { return kind != Kind::finite_prime; }

  /// Accepts "p", "T", "T-e", "T+e" and "inf".
  static Place parse(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return infinity();
    if (!s.empty() && s[0] == 'T') {
      if (s.size() == 1) return linear(0);
      if (s[1] == '-') return linear(Rational::parse(s.substr(2)));
      if (s[1] == '+') return linear(-Rational::parse(s.substr(2)));
      throw domain_error("malformed place '" + s + "'");
    }
    try {
      return prime(Integer(s));
    } catch (const std::invalid_argument&) {
      throw domain_error("malformed place '" + s + "'");
    }
  }

  std::string str() const {
    switch (kind) {
      case Kind::finite_prime: return p.get_str();
      case Kind::ft_infinity: return "inf";
      case Kind::ft_linear:
        if (e.is_zero()) return "T";
        if (e.sign() > 0) return "T-" + short_str(e);
        return "T+" + short_str(-e);
    }
    return "?";
  }

  /// "inf" or the value e, as used in family place sets.
  std::string label() const { return kind == Kind::ft_infinity ? "inf" : short_str(e); }

  static std::string short_str(const Rational& q) {
    return q.is_integer() ? q.num().get_str() : q.str();
  }

  friend bool operator==(const Place&, const Place&) = default;
};

/// Ordering on function-field places: finite e by (height, value), infinity last.
inline bool place_less(const Place& x, const Place& y) {
  if (x.kind != y.kind) return y.kind == Place::Kind::ft_infinity;
  if (x.kind == Place::Kind::ft_infinity) return false;
  Integer hx = height(x.e), hy = height(y.e);
  if (hx != hy) return hx < hy;
  return x.e < y.e;
}

/// Integral model of E over Z: (a u^2, b u^4) with u chosen to clear
/// denominators, then reduced by every d with d^2 | a and d^4 | b. Returns the
/// model together with u (as a rational scale).
inline std::pair<CurveQ, Rational> integral_model(const CurveQ& E) {
  Integer u = lcm(E.a().den(), E.b().den());
  Rational U(u);
  Rational a = E.a() * U * U, b = E.b() * U * U * U * U;
  Integer ai = a.num(), bi = b.num();
  Integer g = sign(ai) == 0 ? abs(bi) : gcd(ai, bi);
  Integer d = 1;
  for (const auto& [p, e] : factor(g).factors) {
    int va = sign(ai) == 0 ? kInfiniteValuation : detail::valuation_int(ai, p);
    int vb = detail::valuation_int(bi, p);
    int k = std::min(va / 2, vb / 4);
    if (k > 0) d *= pow(p, k);
  }
  if (d != 1) {
    Integer d2 = d * d;
    ai /= d2;
    bi /= d2 * d2;
    U /= Rational(d);
  }
  return {CurveQ(Rational(ai), Rational(bi)), U};
}

/// Local data of E over Q at the prime p.
inline LocalReduction tate_local(const CurveQ& E, const Integer& p) {
  if (!is_prime(p)) throw domain_error("tate_local at non-prime " + p.get_str());
  CurveQ M = E;
  if (!E.a().is_integer() || !E.b().is_integer()) M = integral_model(E).first;
  return tate_algorithm(PadicDvr(p), Weierstrass<Integer>{0, M.a().num(), 0, M.b().num(), 0});
}

namespace detail {

inline RationalPolynomial as_polynomial(const RationalFunction& f) {
  if (!f.is_polynomial()) throw domain_error("expected a polynomial coefficient");
  return f.num();
}

/// Coefficients of E in the uniformizer at a function-field place.
inline std::pair<RationalPolynomial, RationalPolynomial> local_coefficients(const CurveQT& E,
                                                                           const Place& place) {
  RationalPolynomial a = as_polynomial(E.a()), b = as_polynomial(E.b());
  if (place.kind == Place::Kind::ft_linear) return {a.shift(place.e), b.shift(place.e)};
  // U = 1/T, x = X/U^(2k), y = Y/U^(3k).
  int k = std::max((std::max(a.degree(), 0) + 1) / 2, (b.degree() + 3) / 4);
  return {a.is_zero() ? a : a.reversed(2 * k), b.reversed(4 * k)};
}

}  // namespace detail

/// Local data of E over Q(T) at a linear place or at infinity.
inline LocalReduction tate_local(const CurveQT& E, const Place& place) {
  if (place.kind == Place::Kind::finite_prime)
    throw domain_error("finite-prime place given for a curve over Q(T)");
  auto [a, b] = detail::local_coefficients(E, place);
  return tate_algorithm(PolynomialDvr(), Weierstrass<RationalPolynomial>{0, a, 0, b, 0});
}

inline LocalReduction tate_local(const CurveQ& E, const Place& place) {
  if (place.kind != Place::Kind::finite_prime)
    throw domain_error("function-field place given for a curve over Q");
  return tate_local(E, place.p);
}

/// Bad places of E over Q(T): the roots of the discriminant plus infinity when
/// the fibre there is singular. Throws when the discriminant does not split.
inline std::vector<Place> bad_places(const CurveQT& E) {
  RationalPolynomial disc = detail::as_polynomial(E.discriminant());
  if (!splits_linearly(disc))
    throw unsupported_error("discriminant " + disc.str() + " has a nonlinear factor");
  std::vector<Place> out;
  for (const auto& [e, m] : rational_roots(disc)) out.push_back(Place::linear(e));
  if (!tate_local(E, Place::infinity()).kodaira.is_good()) out.push_back(Place::infinity());
  return out;
}

/// deg N: 1 per multiplicative and 2 per additive bad place, infinity included.
inline int conductor_degree(const CurveQT& E) {
  int deg = 0;
  std::vector<Place> places = bad_places(E);
  if (places.empty()) throw domain_error("no bad places: the curve is isotrivial");
  for (const auto& v : places) {
    LocalReduction lr = tate_local(E, v);
    deg += lr.reduction == ReductionType::additive ? 2 : 1;
  }
  return deg;
}

/// c_p(E') / c_p(E) for odd p, which equals half the order of the local image of delta_{E'}.
inline Rational local_image_order(const CurveQ& E, const Integer& p) {
  if (p == 2) throw domain_error("local_image_order requires an odd prime");
  if (!is_prime(p)) throw domain_error("local_image_order at non-prime " + p.get_str());
  int c = tate_local(E, p).tamagawa;
  int cd = tate_local(dual_model(E), p).tamagawa;
  return Rational(Integer(cd), Integer(c));
}

}  // namespace twoisog
