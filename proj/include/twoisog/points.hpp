#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "twoisog/descent.hpp"

namespace twoisog {

namespace detail {

/// Signed squarefree divisors of n, ascending by absolute value then sign.
inline std::vector<Integer> signed_squarefree_divisors(const Integer& n) {
  std::vector<Integer> pos{Integer(1)};
  for (const auto& [p, e] : factor(n).factors) {
    std::size_t k = pos.size();
    for (std::size_t i = 0; i < k; ++i) pos.push_back(pos[i] * p);
  }
  std::sort(pos.begin(), pos.end());
  std::vector<Integer> out;
  for (const auto& d : pos) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

/// Points of an integral model y^2 = x^3 + a x^2 + b x with x = d M^2 / v^2,
/// 1 <= M <= m_bound, 1 <= v <= v_bound, gcd(d M, v) = 1. Both signs of y
/// are reported once as the point with y >= 0. Stops after `limit` points.
inline std::vector<PointQ> search_class(const Integer& a, const Integer& b, const Integer& d,
                                        long m_bound, long v_bound, std::size_t limit) {
  std::vector<PointQ> out;
  Integer d2 = d * d, val, s, M2, t0, t1, v2, v4;
  for (long v = 1; v <= v_bound; ++v) {
    if (gcd(d, Integer(v)) != 1) continue;
    v2 = v;
    v2 *= v;
    v4 = v2 * v2;
    for (long M = 1; M <= m_bound; ++M) {
      if (std::gcd(M, v) != 1) continue;
      M2 = M;
      M2 *= M;
      // d (d^2 M^4 + a d M^2 v^2 + b v^4)
      t0 = d2 * M2 * M2;
      t1 = a * d * M2 * v2;
      val = t0 + t1 + b * v4;
      val *= d;
      if (sign(val) < 0 || !mpz_perfect_square_p(val.get_mpz_t())) continue;
      mpz_sqrt(s.get_mpz_t(), val.get_mpz_t());
      Rational x(Integer(d * M2), Integer(v2));
      Rational y(Integer(s * M), Integer(v2 * v));
      out.push_back(PointQ::finite(x, y));
      if (out.size() >= limit) return out;
    }
  }
  return out;
}

}  // namespace detail

/// Points of E with x = u / v^2, |u| <= bound, 1 <= v <= bound on the integral
/// model, mapped back to E. Sound, not complete; includes the 2-torsion found.
inline std::vector<PointQ> point_search(const CurveQ& E, long bound) {
  if (bound < 1) throw domain_error("point_search bound must be positive");
  auto [M, U] = integral_model(E);
  Integer a = M.a().num(), b = M.b().num();
  std::vector<PointQ> found{PointQ::finite(0, 0)};
  for (const auto& d : detail::signed_squarefree_divisors(b)) {
    Integer ad = abs(d);
    if (ad > bound) continue;
    long mb = 1;
    while (Integer(mb + 1) * (mb + 1) * ad <= bound) ++mb;
    for (const auto& P : detail::search_class(a, b, d, mb, bound, SIZE_MAX)) {
      found.push_back(P);
      if (!P.y.is_zero()) found.push_back(negate(M, P));
    }
  }
  Rational inv = Rational(1) / U;
  std::vector<PointQ> out;
  for (const auto& P : found) out.push_back(scale_point(P, inv));
  std::sort(out.begin(), out.end(), [](const PointQ& p, const PointQ& q) {
    if (p.x != q.x) return height(p.x) != height(q.x) ? height(p.x) < height(q.x) : p.x < q.x;
    return p.y < q.y;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& P : out) E.require(P);
  return out;
}

/// A point of E whose delta class is d, searched on the integral model with
/// x = d M^2 / v^2 and M, v <= bound. The result lies on E.
inline std::optional<PointQ> find_point_in_class(const CurveQ& E, const SquareClassQ& d, long bound) {
  auto [M, U] = integral_model(E);
  Integer rep = d.representative();
  if (d.is_identity()) return PointQ::at_infinity();
  if (d == square_class(M.b())) return PointQ::finite(0, 0);
  if (!mpz_divisible_p(M.b().num().get_mpz_t(), rep.get_mpz_t())) return std::nullopt;
  auto pts = detail::search_class(M.a().num(), M.b().num(), rep, bound, bound, 1);
  if (pts.empty()) return std::nullopt;
  PointQ P = scale_point(pts.front(), Rational(1) / U);
  E.require(P);
  return P;
}

/// Rational 2-torsion points other than (0,0): roots of x^2 + a x + b.
inline std::vector<PointQ> extra_two_torsion(const CurveQ& E) {
  Rational disc = E.b_dual();
  if (disc.sign() < 0 || !is_perfect_square(disc.num()) || !is_perfect_square(disc.den())) return {};
  Rational s(isqrt(disc.num()), isqrt(disc.den()));
  Rational half(1, 2);
  return {PointQ::finite((-E.a() - s) * half, 0), PointQ::finite((-E.a() + s) * half, 0)};
}

}  // namespace twoisog
