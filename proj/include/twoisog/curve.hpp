#pragma once

#include <string>
#include <type_traits>

#include "twoisog/ratfunc.hpp"

namespace twoisog {

/// A point of y^2 = x^3 + a x^2 + b x in affine coordinates, or the point at infinity.
template <class K>
struct AffinePoint {
  bool infinity = true;
  K x{}, y{};

  static AffinePoint at_infinity() { return {}; }
  static AffinePoint finite(K x, K y) { return {false, std::move(x), std::move(y)}; }
  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

/// y^2 = x^3 + a x^2 + b x with the marked 2-torsion point (0,0). K is Rational
/// (curves over Q) or RationalFunction (curves over Q(T), whose coefficients are
/// required to be polynomials).
template <class K>
class TwoTorsionModel {
 public:
  using Field = K;
  using Point = AffinePoint<K>;

  TwoTorsionModel(K a, K b) : a_(std::move(a)), b_(std::move(b)) {
    if constexpr (std::is_same_v<K, RationalFunction>) {
      if (!a_.is_polynomial() || !b_.is_polynomial())
        throw domain_error("curve over Q(T) needs polynomial coefficients");
    }
    if (b_.is_zero() || (a_ * a_ - K(4) * b_).is_zero())
      throw singular_model_error("singular model: b = 0 or a^2 = 4b");
  }

  const K& a() const { return a_; }
  const K& b() const { return b_; }
  /// a^2 - 4b, the b-coefficient of the dual model.
  K b_dual() const { return a_ * a_ - K(4) * b_; }
  /// 16 (a^2 - 4b) b^2.
  K discriminant() const { return K(16) * b_dual() * b_ * b_; }

  bool contains(const Point& P) const {
    if (P.infinity) return true;
    return P.y * P.y == P.x * (P.x * P.x + a_ * P.x + b_);
  }
  void require(const Point& P) const {
    if (!contains(P)) throw domain_error("point is not on the curve");
  }

  friend bool operator==(const TwoTorsionModel&, const TwoTorsionModel&) = default;

 private:
  K a_, b_;
};

using CurveQ = TwoTorsionModel<Rational>;
using CurveQT = TwoTorsionModel<RationalFunction>;
using PointQ = AffinePoint<Rational>;
using PointQT = AffinePoint<RationalFunction>;

inline CurveQT make_curve_qt(const RationalPolynomial& a, const RationalPolynomial& b) {
  return CurveQT(RationalFunction(a), RationalFunction(b));
}

/// E' : y^2 = x^3 - 2a x^2 + (a^2 - 4b) x.
template <class K>
TwoTorsionModel<K> dual_model(const TwoTorsionModel<K>& E) {
  return TwoTorsionModel<K>(K(-2) * E.a(), E.b_dual());
}

template <class K>
AffinePoint<K> torsion_point(const TwoTorsionModel<K>&) {
  return AffinePoint<K>::finite(K(0), K(0));
}

template <class K>
AffinePoint<K> negate(const TwoTorsionModel<K>&, const AffinePoint<K>& P) {
  if (P.infinity) return P;
  return AffinePoint<K>::finite(P.x, -P.y);
}

/// Chord-tangent addition.
template <class K>
AffinePoint<K> add_points(const TwoTorsionModel<K>& E, const AffinePoint<K>& P,
                          const AffinePoint<K>& Q) {
  E.require(P);
  E.require(Q);
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  K lambda;
  if (P.x == Q.x) {
    if (P.y != Q.y || P.y.is_zero()) return AffinePoint<K>::at_infinity();
    lambda = (K(3) * P.x * P.x + K(2) * E.a() * P.x + E.b()) / (K(2) * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  K x3 = lambda * lambda - E.a() - P.x - Q.x;
  K y3 = lambda * (P.x - x3) - P.y;
  return AffinePoint<K>::finite(x3, y3);
}

template <class K>
AffinePoint<K> multiply(const TwoTorsionModel<K>& E, const AffinePoint<K>& P, long n) {
  AffinePoint<K> base = n < 0 ? negate(E, P) : P, acc;
  for (unsigned long k = n < 0 ? -static_cast<unsigned long>(n) : n; k; k >>= 1) {
    if (k & 1) acc = add_points(E, acc, base);
    base = add_points(E, base, base);
  }
  return acc;
}

/// phi : E -> E', (x, y) -> (y^2/x^2, y (b - x^2)/x^2), with kernel {O, (0,0)}.
template <class K>
AffinePoint<K> apply_isogeny(const TwoTorsionModel<K>& E, const AffinePoint<K>& P) {
  E.require(P);
  if (P.infinity || P.x.is_zero()) return AffinePoint<K>::at_infinity();
  K x2 = P.x * P.x;
  return AffinePoint<K>::finite(P.y * P.y / x2, P.y * (E.b() - x2) / x2);
}

/// phi-hat : E' -> E, the isogeny of E' followed by (x, y) -> (x/4, y/8).
template <class K>
AffinePoint<K> apply_dual_isogeny(const TwoTorsionModel<K>& E, const AffinePoint<K>& Q) {
  TwoTorsionModel<K> Ed = dual_model(E);
  AffinePoint<K> R = apply_isogeny(Ed, Q);
  if (R.infinity) return R;
  return AffinePoint<K>::finite(R.x / K(4), R.y / K(8));
}

/// delta_E : E(Q) -> Q^x/(Q^x)^2.
inline SquareClassQ delta_class(const CurveQ& E, const PointQ& P) {
  E.require(P);
  if (P.infinity) return {};
  if (P.x.is_zero()) return square_class(E.b());
  return square_class(P.x);
}

/// Square class of a nonzero rational function whose numerator and denominator split.
inline SquareClassFT ft_square_class(const RationalFunction& f) {
  if (f.is_zero()) throw domain_error("square class of zero");
  return ft_square_class(f.num() * f.den());
}

/// delta_E : E(Q(T)) -> Q(T)^x/(Q(T)^x)^2.
inline SquareClassFT delta_class(const CurveQT& E, const PointQT& P) {
  E.require(P);
  if (P.infinity) return {};
  if (P.x.is_zero()) return ft_square_class(E.b());
  return ft_square_class(P.x);
}

/// 256 (a^2 - 3b)^3 / (b^2 (a^2 - 4b)).
inline Rational j_invariant(const CurveQ& E) {
  Rational c = E.a() * E.a() - Rational(3) * E.b();
  return Rational(256) * c * c * c / (E.b() * E.b() * E.b_dual());
}

inline CurveQ specialize(const CurveQT& E, const Rational& t) {
  Rational a = E.a()(t), b = E.b()(t);
  if (b.is_zero() || (a * a - Rational(4) * b).is_zero())
    throw singular_model_error("specialization at " + t.str() + " is singular");
  return CurveQ(a, b);
}

inline PointQ specialize(const PointQT& P, const Rational& t) {
  if (P.infinity) return PointQ::at_infinity();
  return PointQ::finite(P.x(t), P.y(t));
}

/// Image of a point under the isomorphism x -> u^2 x, y -> u^3 y, which maps
/// (a, b) to (u^2 a, u^4 b).
template <class K>
AffinePoint<K> scale_point(const AffinePoint<K>& P, const K& u) {
  if (P.infinity) return P;
  return AffinePoint<K>::finite(u * u * P.x, u * u * u * P.y);
}

}  // namespace twoisog
