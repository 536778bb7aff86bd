#pragma once

#include <array>
#include <climits>
#include <string>

#include "twoisog/fp.hpp"
#include "twoisog/poly.hpp"

namespace twoisog {

struct KodairaSymbol {
  enum class Tag { I, I_star, II, III, IV, II_star, III_star, IV_star };
  Tag tag = Tag::I;
  int n = 0;  // index of I_n and I_n^*

  static KodairaSymbol I(int n) { return {Tag::I, n}; }
  static KodairaSymbol I_star(int n) { return {Tag::I_star, n}; }
  static KodairaSymbol of(Tag t) { return {t, 0}; }

  bool is_good() const { return tag == Tag::I && n == 0; }
  bool is_multiplicative() const { return tag == Tag::I && n > 0; }

  /// Number of irreducible components of the special fibre (Neron model).
  int components() const {
    switch (tag) {
      case Tag::I: return n == 0 ? 1 : n;
      case Tag::I_star: return n + 5;
      case Tag::II: return 1;
      case Tag::III: return 2;
      case Tag::IV: return 3;
      case Tag::IV_star: return 7;
      case Tag::III_star: return 8;
      case Tag::II_star: return 9;
    }
    return 0;
  }

  std::string str() const {
    switch (tag) {
      case Tag::I: return "I" + std::to_string(n);
      case Tag::I_star: return "I" + std::to_string(n) + "*";
      case Tag::II: return "II";
      case Tag::III: return "III";
      case Tag::IV: return "IV";
      case Tag::II_star: return "II*";
      case Tag::III_star: return "III*";
      case Tag::IV_star: return "IV*";
    }
    return "?";
  }

  static KodairaSymbol parse(const std::string& s) {
    if (s == "II") return of(Tag::II);
    if (s == "III") return of(Tag::III);
    if (s == "IV") return of(Tag::IV);
    if (s == "II*") return of(Tag::II_star);
    if (s == "III*") return of(Tag::III_star);
    if (s == "IV*") return of(Tag::IV_star);
    if (s.size() >= 2 && s[0] == 'I') {
      bool star = s.back() == '*';
      int n = std::stoi(s.substr(1, s.size() - 1 - (star ? 1 : 0)));
      return star ? I_star(n) : I(n);
    }
    throw domain_error("unknown Kodaira symbol '" + s + "'");
  }

  friend bool operator==(const KodairaSymbol&, const KodairaSymbol&) = default;
};

enum class ReductionType { good, split_multiplicative, nonsplit_multiplicative, additive };

inline std::string to_string(ReductionType r) {
  switch (r) {
    case ReductionType::good: return "good";
    case ReductionType::split_multiplicative: return "split-multiplicative";
    case ReductionType::nonsplit_multiplicative: return "nonsplit-multiplicative";
    case ReductionType::additive: return "additive";
  }
  return "?";
}

struct LocalReduction {
  KodairaSymbol kodaira;
  int tamagawa = 1;
  ReductionType reduction = ReductionType::good;
  int min_disc_valuation = 0;
  int conductor_exponent = 0;
};

// ---------------------------------------------------------------------------
// Discrete valuation rings for Tate's algorithm
//
// A DVR policy exposes: Elem (closed under + - * and construction from int),
// val, div_pi, residue, inv, root (p-th root, residue characteristic 2 or 3
// only), quadroots, cubic_roots and small_char (2, 3, or 0 for anything else).

constexpr int kInfiniteValuation = INT_MAX / 4;

/// Z localized at a prime p, elements stored as integers.
class PadicDvr {
 public:
  using Elem = Integer;
  explicit PadicDvr(Integer p) : p_(std::move(p)) {}

  const Integer& p() const { return p_; }
  int small_char() const { return (p_ == 2 || p_ == 3) ? static_cast<int>(p_.get_si()) : 0; }

  int val(const Integer& x) const {
    if (sign(x) == 0) return kInfiniteValuation;
    return static_cast<int>(mpz_remove(scratch(), x.get_mpz_t(), p_.get_mpz_t()));
  }
  Integer div_pi(const Integer& x, int k) const {
    Integer r = x;
    for (int i = 0; i < k; ++i) mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  Integer pi_pow(int k) const { return pow(p_, k); }
  Integer residue(const Integer& x) const { return mod(x, p_); }
  Integer inv(const Integer& x) const { return fp::inverse(mod(x, p_), p_); }
  Integer root(const Integer& x) const { return mod(x, p_); }

  bool quadroots(const Integer& a, const Integer& b, const Integer& c) const {
    Integer A = mod(a, p_), B = mod(b, p_), C = mod(c, p_);
    if (sign(A) == 0) return sign(B) != 0 || sign(C) == 0;
    if (p_ == 2) return sign(C) == 0 || sign(mod(A + B + C, p_)) == 0;
    return fp::legendre(B * B - 4 * A * C, p_) >= 0;
  }
  int cubic_roots(const Integer& b, const Integer& c, const Integer& d) const {
    return fp::count_roots(fp::reduce({d, c, b, Integer(1)}, p_), p_);
  }

 private:
  mpz_ptr scratch() const {
    thread_local Integer s;
    return s.get_mpz_t();
  }
  Integer p_;
};

/// Q[T] localized at T; the residue field is Q.
class PolynomialDvr {
 public:
  using Elem = RationalPolynomial;

  int small_char() const { return 0; }
  int val(const RationalPolynomial& x) const {
    return x.is_zero() ? kInfiniteValuation : x.low_degree();
  }
  RationalPolynomial div_pi(const RationalPolynomial& x, int k) const { return x.div_T(k); }
  RationalPolynomial pi_pow(int k) const { return RationalPolynomial::monomial(1, k); }
  RationalPolynomial residue(const RationalPolynomial& x) const { return x.constant_term(); }
  RationalPolynomial inv(const RationalPolynomial& x) const {
    return Rational(1) / x.constant_term();
  }
  RationalPolynomial root(const RationalPolynomial&) const {
    throw domain_error("p-th roots are not used in characteristic 0");
  }

  static bool is_rational_square(const Rational& q) {
    return q.sign() >= 0 && is_perfect_square(q.num()) && is_perfect_square(q.den());
  }

  bool quadroots(const RationalPolynomial& a, const RationalPolynomial& b,
                 const RationalPolynomial& c) const {
    Rational A = a.constant_term(), B = b.constant_term(), C = c.constant_term();
    if (A.is_zero()) return !B.is_zero() || C.is_zero();
    return is_rational_square(B * B - Rational(4) * A * C);
  }
  int cubic_roots(const RationalPolynomial& b, const RationalPolynomial& c,
                  const RationalPolynomial& d) const {
    RationalPolynomial f(std::vector<Rational>{d.constant_term(), c.constant_term(),
                                               b.constant_term(), Rational(1)});
    return static_cast<int>(rational_roots(f).size());
  }
};

/// Long Weierstrass coefficients [a1, a2, a3, a4, a6].
template <class E>
using Weierstrass = std::array<E, 5>;

/// (x, y) -> (x + r, y + s x + t).
template <class E>
Weierstrass<E> rst_transform(const Weierstrass<E>& A, const E& r, const E& s, const E& t) {
  const auto& [a1, a2, a3, a4, a6] = A;
  return {a1 + E(2) * s,
          a2 - s * a1 + E(3) * r - s * s,
          a3 + r * a1 + E(2) * t,
          a4 - s * a3 + E(2) * r * a2 - (t + r * s) * a1 + E(3) * r * r - E(2) * s * t,
          a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1};
}

/// Tate's algorithm on an integral model. Follows the structure of Cremona's
/// and Sage's implementation; residue characteristic 2 and 3 branches use the
/// policy's root() on a perfect residue field.
template <class Dvr>
LocalReduction tate_algorithm(const Dvr& R, Weierstrass<typename Dvr::Elem> A) {
  using E = typename Dvr::Elem;
  const int pc = R.small_char();
  for (const auto& ai : A)
    if (R.val(ai) < 0) throw domain_error("Tate's algorithm needs an integral model");

  for (int restart = 0; restart < 64; ++restart) {
    auto b_inv = [](const Weierstrass<E>& W) {
      const auto& [a1, a2, a3, a4, a6] = W;
      E b2 = a1 * a1 + E(4) * a2;
      E b4 = E(2) * a4 + a1 * a3;
      E b6 = a3 * a3 + E(4) * a6;
      E b8 = a1 * a1 * a6 + E(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
      return std::array<E, 4>{b2, b4, b6, b8};
    };
    std::array<E, 4> bv = b_inv(A);
    E &b2 = bv[0], &b4 = bv[1], &b6 = bv[2], &b8 = bv[3];
    E c4 = b2 * b2 - E(24) * b4;
    E c6 = -b2 * b2 * b2 + E(36) * b2 * b4 - E(216) * b6;
    E disc = -b2 * b2 * b8 - E(8) * b4 * b4 * b4 - E(27) * b6 * b6 + E(9) * b2 * b4 * b6;
    const int vd = R.val(disc);
    if (vd >= kInfiniteValuation) throw singular_model_error("singular model in Tate's algorithm");

    LocalReduction out;
    out.min_disc_valuation = vd;
    if (vd == 0) return out;

    // Move the singular point to (0,0).
    E r, t;
    if (pc == 2) {
      if (R.val(b2) > 0) {
        r = R.root(A[3]);
        t = R.root(((r + A[1]) * r + A[3]) * r + A[4]);
      } else {
        E inv = R.inv(A[0]);
        r = inv * A[2];
        t = inv * (A[3] + r * r);
      }
    } else if (pc == 3) {
      r = R.val(b2) > 0 ? E(R.root(-b6)) : E(-R.inv(b2) * b4);
      t = A[0] * r + A[2];
    } else {
      r = R.val(c4) > 0 ? E(-R.inv(E(12)) * b2) : E(-R.inv(E(12) * c4) * (c6 + b2 * c4));
      t = -R.inv(E(2)) * (A[0] * r + A[2]);
    }
    r = R.residue(r);
    t = R.residue(t);
    A = rst_transform(A, r, E(0), t);
    bv = b_inv(A);

    if (R.val(c4) == 0) {
      out.kodaira = KodairaSymbol::I(vd);
      out.conductor_exponent = 1;
      if (R.quadroots(E(1), A[0], -A[1])) {
        out.reduction = ReductionType::split_multiplicative;
        out.tamagawa = vd;
      } else {
        out.reduction = ReductionType::nonsplit_multiplicative;
        out.tamagawa = vd % 2 == 0 ? 2 : 1;
      }
      return out;
    }

    out.reduction = ReductionType::additive;
    auto finish = [&](KodairaSymbol ks, int cp) {
      out.kodaira = ks;
      out.tamagawa = cp;
      out.conductor_exponent = vd - (ks.components() - 1);
      return out;
    };
    using Tag = KodairaSymbol::Tag;

    if (R.val(A[4]) < 2) return finish(KodairaSymbol::of(Tag::II), 1);
    if (R.val(b8) < 3) return finish(KodairaSymbol::of(Tag::III), 2);
    if (R.val(b6) < 3) {
      E a3t = R.div_pi(A[2], 1), a6t = R.div_pi(A[4], 2);
      return finish(KodairaSymbol::of(Tag::IV), R.quadroots(E(1), a3t, -a6t) ? 3 : 1);
    }

    // Now p | a1, a2; p^2 | a3, a4; p^3 | a6.
    E s;
    if (pc == 2) {
      s = R.root(A[1]);
      t = R.pi_pow(1) * R.root(R.div_pi(A[4], 2));
    } else if (pc == 3) {
      s = A[0];
      t = A[2];
    } else {
      s = -A[0] * R.inv(E(2));
      t = -A[2] * R.inv(E(2));
    }
    if (pc != 2) {
      s = R.residue(s);
      t = R.residue(t);
    }
    A = rst_transform(A, E(0), s, t);

    E b = R.div_pi(A[1], 1), c = R.div_pi(A[3], 2), d = R.div_pi(A[4], 3);
    E w = E(27) * d * d - b * b * c * c + E(4) * b * b * b * d - E(18) * b * c * d + E(4) * c * c * c;
    E x = E(3) * c - b * b;

    if (R.val(w) == 0) return finish(KodairaSymbol::I_star(0), 1 + R.cubic_roots(b, c, d));

    if (R.val(x) == 0) {
      // Double root: move it to 0 and run the I_n^* subprocedure.
      if (pc == 2) r = R.root(c);
      else if (pc == 3) r = c * R.inv(b);
      else r = (b * c - E(9) * d) * R.inv(E(2) * x);
      r = R.pi_pow(1) * R.residue(r);
      A = rst_transform(A, r, E(0), E(0));

      int ix = 3, iy = 3;
      E mx = R.pi_pow(2), my = R.pi_pow(2);
      int cp = 0;
      while (cp == 0) {
        E a2t = R.div_pi(A[1], 1);
        E a3t = R.div_pi(A[2], iy - 1);
        E a4t = R.div_pi(A[3], ix);
        E a6t = R.div_pi(A[4], ix + iy - 2);
        if (R.val(a3t * a3t + E(4) * a6t) == 0) {
          cp = R.quadroots(E(1), a3t, -a6t) ? 4 : 2;
          break;
        }
        if (pc == 2) t = my * R.root(a6t);
        else t = my * R.residue(-a3t * R.inv(E(2)));
        A = rst_transform(A, E(0), E(0), t);
        my = my * R.pi_pow(1);
        ++iy;
        a2t = R.div_pi(A[1], 1);
        a3t = R.div_pi(A[2], iy - 1);
        a4t = R.div_pi(A[3], ix);
        a6t = R.div_pi(A[4], ix + iy - 2);
        if (R.val(a4t * a4t - E(4) * a6t * a2t) == 0) {
          cp = R.quadroots(a2t, a4t, a6t) ? 4 : 2;
          break;
        }
        if (pc == 2) r = mx * R.root(a6t * R.inv(a2t));
        else r = mx * R.residue(-a4t * R.inv(E(2) * a2t));
        A = rst_transform(A, r, E(0), E(0));
        mx = mx * R.pi_pow(1);
        ++ix;
      }
      return finish(KodairaSymbol::I_star(ix + iy - 5), cp);
    }

    // Triple root: move it to 0.
    E rt;
    if (pc == 2) rt = b;
    else if (pc == 3) rt = R.root(-d);
    else rt = -b * R.inv(E(3));
    r = R.pi_pow(1) * R.residue(rt);
    A = rst_transform(A, r, E(0), E(0));

    E a3t = R.div_pi(A[2], 2), a6t = R.div_pi(A[4], 4);
    if (R.val(a3t * a3t + E(4) * a6t) == 0)
      return finish(KodairaSymbol::of(Tag::IV_star), R.quadroots(E(1), a3t, -a6t) ? 3 : 1);

    if (pc == 2) t = -R.pi_pow(2) * R.root(a6t);
    else t = R.pi_pow(2) * R.residue(-a3t * R.inv(E(2)));
    A = rst_transform(A, E(0), E(0), t);
    if (R.val(A[3]) < 4) return finish(KodairaSymbol::of(Tag::III_star), 2);
    if (R.val(A[4]) < 6) return finish(KodairaSymbol::of(Tag::II_star), 1);

    // Not minimal: scale by the uniformizer and start over.
    A = {R.div_pi(A[0], 1), R.div_pi(A[1], 2), R.div_pi(A[2], 3), R.div_pi(A[3], 4),
         R.div_pi(A[4], 6)};
  }
  throw domain_error("Tate's algorithm did not reach a minimal model");
}

}  // namespace twoisog
