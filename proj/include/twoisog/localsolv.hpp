#pragma once

#include <climits>
#include <vector>

#include "twoisog/arith.hpp"
#include "twoisog/fp.hpp"

namespace twoisog {

/// Polynomial with integer coefficients, coefficient i multiplies u^i.
using IntPoly = std::vector<Integer>;

struct LocalSolvOptions {
  int max_depth = 400;  // residue-disk refinements before giving up
};

namespace detail {

constexpr int kNoValuation = INT_MAX / 4;

inline bool is_zero_poly(const IntPoly& h) {
  for (const auto& c : h)
    if (sign(c) != 0) return false;
  return true;
}

/// h(u0 + s u).
inline IntPoly substitute_affine(const IntPoly& h, const Integer& u0, const Integer& s) {
  IntPoly r;
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    // r <- r * (u0 + s u) + c
    IntPoly next(r.size() + 1, Integer(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i] += r[i] * u0;
      next[i + 1] += r[i] * s;
    }
    next[0] += *it;
    r = std::move(next);
  }
  while (!r.empty() && sign(r.back()) == 0) r.pop_back();
  return r;
}

inline int min_valuation(const IntPoly& h, const Integer& p) {
  int m = kNoValuation;
  for (const auto& c : h)
    if (sign(c) != 0) m = std::min(m, valuation_int(c, p));
  return m;
}

/// Divide every coefficient by p^(2k), k = floor(min valuation / 2); squares are preserved.
inline int strip_even_power(IntPoly& h, const Integer& p) {
  int m = min_valuation(h, p);
  int k = m / 2;
  if (k > 0) {
    Integer q = pow(p, 2 * k);
    for (auto& c : h) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
  }
  return m - 2 * k;
}

inline bool is_square_2adic(const Integer& c) {
  int v = valuation_int(c, Integer(2));
  if (v % 2 != 0) return false;
  Integer u = c >> v;
  return mod(u, Integer(8)) == 1;
}

inline bool odd_disk_has_square(IntPoly h, const Integer& p, int depth) {
  if (is_zero_poly(h)) return true;
  int m = strip_even_power(h, p);
  IntPoly red = h;
  if (m == 1) {
    for (auto& c : red) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
  }
  fp::Poly hb = fp::reduce(red, p);
  if (fp::degree(hb) == 0) return m == 0 && fp::legendre(hb[0], p) == 1;
  std::vector<Integer> roots = fp::roots(hb, p);
  fp::Poly dh = fp::derivative(hb, p);
  for (const auto& r : roots)
    if (sign(fp::eval(dh, r, p)) != 0) return true;  // simple root lifts to a zero of h
  if (m == 0 && fp::has_nonzero_square_value(hb, p)) return true;
  if (depth <= 0) throw precision_error("p-adic solvability undecided at p = " + p.get_str());
  for (const auto& r : roots)
    if (odd_disk_has_square(substitute_affine(h, r, p), p, depth - 1)) return true;
  return false;
}

inline bool dyadic_disk_has_square(IntPoly h, int depth) {
  static const Integer two(2);
  if (is_zero_poly(h)) return true;
  strip_even_power(h, two);
  if (sign(h[0]) == 0) return true;
  int v0 = valuation_int(h[0], two);
  int mk = kNoValuation;
  for (std::size_t k = 1; k < h.size(); ++k)
    if (sign(h[k]) != 0) mk = std::min(mk, valuation_int(h[k], two));
  if (mk >= v0 + 3) return is_square_2adic(h[0]);
  if (h.size() > 1 && sign(h[1]) != 0 && v0 > 2 * valuation_int(h[1], two)) return true;
  if (depth <= 0) throw precision_error("2-adic solvability undecided");
  return dyadic_disk_has_square(substitute_affine(h, Integer(0), two), depth - 1) ||
         dyadic_disk_has_square(substitute_affine(h, Integer(1), two), depth - 1);
}

}  // namespace detail

/// True iff h(u) is a square (zero allowed) in Q_p for some u in Z_p.
inline bool has_square_value_on_zp(const IntPoly& h, const Integer& p,
                                   const LocalSolvOptions& opts = {}) {
  if (p == 2) return detail::dyadic_disk_has_square(h, opts.max_depth);
  return detail::odd_disk_has_square(h, p, opts.max_depth);
}

/// Does w^2 = g(z) have a point over Q_p, the point at infinity patch included?
/// g has rational coefficients and degree 4 (constant term first).
inline bool quartic_solvable_padic(const std::vector<Rational>& g, const Integer& p,
                                   const LocalSolvOptions& opts = {}) {
  Integer L = 1;
  for (const auto& c : g) L = lcm(L, c.den());
  IntPoly h;
  for (const auto& c : g) h.push_back((c * Rational(L) * Rational(L)).num());
  h.resize(5, Integer(0));
  if (has_square_value_on_zp(h, p, opts)) return true;
  // z = 1/u with u in pZ_p: (w u^2)^2 = u^4 g(1/u).
  IntPoly rev(h.rbegin(), h.rend());
  return has_square_value_on_zp(detail::substitute_affine(rev, Integer(0), p), p, opts);
}

/// Does w^2 = d z^4 + A z^2 + B have a real point?
inline bool quartic_solvable_real(const Rational& d, const Rational& A, const Rational& B) {
  if (d.sign() > 0 || B.sign() > 0) return true;
  if (d.is_zero() || B.is_zero()) return true;
  // d < 0, B < 0: maximum of d s^2 + A s + B over s = z^2 >= 0.
  return A.sign() > 0 && A * A >= Rational(4) * d * B;
}

}  // namespace twoisog
