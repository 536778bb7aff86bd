#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "twoisog/rational.hpp"

namespace twoisog::fp {

// Small dense polynomials over F_p, p prime; coefficients kept in [0, p).

using Poly = std::vector<Integer>;

inline void trim(Poly& f) {
  while (!f.empty() && sign(f.back()) == 0) f.pop_back();
}

inline Poly reduce(const std::vector<Integer>& c, const Integer& p) {
  Poly f;
  f.reserve(c.size());
  for (const auto& x : c) f.push_back(mod(x, p));
  trim(f);
  return f;
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Integer inverse(const Integer& x, const Integer& p) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
    throw domain_error("residue is not invertible");
  return r;
}

inline Integer eval(const Poly& f, const Integer& x, const Integer& p) {
  Integer r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = mod(r * x + *it, p);
  return r;
}

inline Poly sub(Poly f, const Poly& g, const Integer& p) {
  if (g.size() > f.size()) f.resize(g.size(), Integer(0));
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = mod(f[i] - g[i], p);
  trim(f);
  return f;
}

inline Poly mul(const Poly& f, const Poly& g, const Integer& p) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, Integer(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  for (auto& x : r) x = mod(x, p);
  trim(r);
  return r;
}

inline std::pair<Poly, Poly> divmod(Poly f, const Poly& g, const Integer& p) {
  if (g.empty()) throw domain_error("F_p polynomial division by zero");
  if (f.size() < g.size()) return {{}, f};
  Integer inv = inverse(g.back(), p);
  Poly q(f.size() - g.size() + 1, Integer(0));
  for (int k = degree(f) - degree(g); k >= 0; --k) {
    Integer c = mod(f[k + degree(g)] * inv, p);
    q[k] = c;
    if (sign(c) == 0) continue;
    for (int i = 0; i <= degree(g); ++i) f[k + i] = mod(f[k + i] - c * g[i], p);
  }
  trim(f);
  trim(q);
  return {q, f};
}

inline Poly monic(Poly f, const Integer& p) {
  if (f.empty()) return f;
  Integer inv = inverse(f.back(), p);
  for (auto& x : f) x = mod(x * inv, p);
  return f;
}

inline Poly gcd(Poly f, Poly g, const Integer& p) {
  while (!g.empty()) {
    Poly r = divmod(f, g, p).second;
    f = std::move(g);
    g = std::move(r);
  }
  return monic(f, p);
}

inline Poly derivative(const Poly& f, const Integer& p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mod(f[i] * Integer(static_cast<unsigned long>(i)), p));
  trim(d);
  return d;
}

/// base^e mod f.
inline Poly powmod(Poly base, Integer e, const Poly& f, const Integer& p) {
  Poly r{Integer(1)};
  base = divmod(base, f, p).second;
  while (sign(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = divmod(mul(r, base, p), f, p).second;
    base = divmod(mul(base, base, p), f, p).second;
    e >>= 1;
  }
  return r;
}

/// gcd(f, X^p - X): the product of the distinct linear factors of f.
inline Poly linear_part(const Poly& f, const Integer& p) {
  Poly xp = powmod(Poly{Integer(0), Integer(1)}, p, f, p);
  return gcd(f, sub(xp, Poly{Integer(0), Integer(1)}, p), p);
}

namespace detail {

inline void split_linear(const Poly& g, const Integer& p, std::vector<Integer>& out) {
  if (degree(g) <= 0) return;
  if (degree(g) == 1) {
    out.push_back(mod(-g[0] * inverse(g[1], p), p));
    return;
  }
  Integer half = (p - 1) / 2;
  for (unsigned long delta = 0;; ++delta) {
    Poly h = powmod(Poly{Integer(delta), Integer(1)}, half, g, p);
    h = sub(h, Poly{Integer(1)}, p);
    Poly d = gcd(g, h, p);
    if (degree(d) > 0 && degree(d) < degree(g)) {
      split_linear(d, p, out);
      split_linear(divmod(g, d, p).first, p, out);
      return;
    }
  }
}

}  // namespace detail

/// Distinct roots of a nonzero f in F_p, ascending.
inline std::vector<Integer> roots(const Poly& f, const Integer& p) {
  std::vector<Integer> out;
  if (f.empty()) throw domain_error("roots of the zero polynomial");
  if (degree(f) == 0) return out;
  if (p < 1000) {
    for (Integer x = 0; x < p; ++x)
      if (sign(eval(f, x, p)) == 0) out.push_back(x);
    return out;
  }
  Poly g = linear_part(f, p);
  detail::split_linear(g, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of distinct roots in F_p.
inline int count_roots(const Poly& f, const Integer& p) {
  if (p < 1000) return static_cast<int>(roots(f, p).size());
  return degree(linear_part(f, p));
}

/// Legendre symbol for odd p.
inline int legendre(const Integer& x, const Integer& p) {
  return mpz_legendre(x.get_mpz_t(), p.get_mpz_t());
}

/// For monic f of even degree 2k, the monic s with s^2 = f if one exists.
inline bool is_square_poly(const Poly& f, const Integer& p) {
  int n = degree(f);
  if (n % 2 != 0) return false;
  int k = n / 2;
  Poly s(k + 1, Integer(0));
  s[k] = 1;
  Integer inv2 = inverse(Integer(2), p);
  // Match coefficients of T^(n-1) ... T^k from the top down.
  for (int i = 1; i <= k; ++i) {
    Integer acc = f[n - i];
    for (int j = 1; j < i; ++j) acc -= s[k - j] * s[k - (i - j)];
    s[k - i] = mod(acc * inv2, p);
  }
  Poly sq = mul(s, s, p);
  return sq == f;
}

/// True iff f takes some nonzero square value on F_p (p odd).
inline bool has_nonzero_square_value(const Poly& f, const Integer& p) {
  if (f.empty()) return false;
  if (degree(f) == 0) return legendre(f[0], p) == 1;
  if (p < 1000) {
    for (Integer x = 0; x < p; ++x)
      if (legendre(eval(f, x, p), p) == 1) return true;
    return false;
  }
  // Degree <= 4 and p >= 1000: by the Weil bound a square value other than zero
  // exists unless f = c s^2, in which case it exists iff c is a square.
  if (degree(f) > 4) throw domain_error("has_nonzero_square_value expects degree <= 4");
  Integer lc = f.back();
  if (is_square_poly(monic(f, p), p)) return legendre(lc, p) == 1;
  return true;
}

}  // namespace twoisog::fp
