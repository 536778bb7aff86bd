#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twoisog/errors.hpp"
#include "twoisog/rational.hpp"

namespace twoisog {

// ---------------------------------------------------------------------------
// Primality

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = [] {
    constexpr std::uint32_t limit = 1'000'000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return ps;
  }();
  return table;
}

inline bool miller_rabin_round(const Integer& n, const Integer& d, unsigned s, unsigned long base) {
  Integer a = base, x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

/// Deterministic Miller-Rabin below 3.3e24 (first thirteen prime bases).
/// Larger inputs fall back to GMP's BPSW test.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long b : bases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  static const Integer deterministic_bound("3317044064679887385961981");
  if (n >= deterministic_bound) return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  for (unsigned long b : bases)
    if (!detail::miller_rabin_round(n, d, s, b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Factorization

struct PrimeFactorization {
  int sign = 1;
  std::vector<std::pair<Integer, int>> factors;  // primes strictly increasing, exponents nonzero

  Rational value() const {
    Rational r(sign);
    for (const auto& [p, e] : factors) r *= pow(Rational(p), e);
    return r;
  }
  int exponent(const Integer& p) const {
    for (const auto& [q, e] : factors)
      if (q == p) return e;
    return 0;
  }
  std::vector<Integer> primes() const {
    std::vector<Integer> out;
    for (const auto& f : factors) out.push_back(f.first);
    return out;
  }
};

struct FactorOptions {
  /// Total Pollard-rho iterations allowed across all cofactors.
  std::uint64_t rho_iterations = 4'000'000;
};

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor or nullopt when
// the budget runs out.
inline std::optional<Integer> pollard_brent(const Integer& n, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  for (unsigned long c = 1; c < 64 && budget > 0; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto step = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += lim;
        if (budget <= lim) {
          budget = 0;
          break;
        }
        budget -= lim;
      }
      r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

inline void split_into(const Integer& n, std::map<Integer, int>& out, std::uint64_t& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  if (is_perfect_square(n)) {
    Integer s = isqrt(n);
    std::map<Integer, int> sub;
    split_into(s, sub, budget);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  auto f = pollard_brent(n, budget);
  if (!f) throw factorization_error("factorization effort exceeded", n.get_str());
  split_into(*f, out, budget);
  split_into(Integer(n / *f), out, budget);
}

}  // namespace detail

/// Complete factorization of a nonzero integer: trial division to 10^6, then
/// Pollard-Brent under an effort cap.
inline PrimeFactorization factor(const Integer& n, const FactorOptions& opts = {}) {
  if (sign(n) == 0) throw domain_error("cannot factor zero");
  PrimeFactorization out;
  out.sign = sign(n);
  Integer m = abs(n);
  std::map<Integer, int> found;
  for (std::uint32_t p : detail::small_primes()) {
    if (m == 1) break;
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      found[Integer(p)] = e;
    }
  }
  if (m > 1) {
    std::uint64_t budget = opts.rho_iterations;
    detail::split_into(m, found, budget);
  }
  for (auto& [p, e] : found) out.factors.emplace_back(p, e);
  return out;
}

template <class U>
PrimeFactorization factor(const __gmp_expr<mpz_t, U>& n, const FactorOptions& opts = {}) {
  return factor(Integer(n), opts);
}

/// Factorization of a nonzero rational; denominator primes get negative exponents.
inline PrimeFactorization factor(const Rational& q, const FactorOptions& opts = {}) {
  if (q.is_zero()) throw domain_error("cannot factor zero");
  PrimeFactorization num = factor(q.num(), opts);
  if (q.den() == 1) return num;
  PrimeFactorization den = factor(q.den(), opts);
  std::map<Integer, int> merged;
  for (auto& [p, e] : num.factors) merged[p] += e;
  for (auto& [p, e] : den.factors) merged[p] -= e;
  PrimeFactorization out;
  out.sign = num.sign;
  for (auto& [p, e] : merged)
    if (e != 0) out.factors.emplace_back(p, e);
  return out;
}

// ---------------------------------------------------------------------------
// Valuations

namespace detail {

inline int valuation_int(const Integer& n, const Integer& p) {
  if (sign(n) == 0) throw domain_error("valuation of zero");
  if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) return 0;
  thread_local Integer scratch;
  return static_cast<int>(mpz_remove(scratch.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline int valuation_unchecked(const Rational& q, const Integer& p) {
  if (q.is_zero()) throw domain_error("valuation of zero is not representable");
  return valuation_int(q.num(), p) - valuation_int(q.den(), p);
}

/// q / p^v_p(q): the p-unit part.
inline Rational unit_part(const Rational& q, const Integer& p, int v) {
  return q / pow(Rational(p), v);
}

}  // namespace detail

/// v_p(q) for nonzero q and prime p.
inline int valuation(const Rational& q, const Integer& p) {
  if (!is_prime(p)) throw domain_error("valuation at non-prime " + p.get_str());
  return detail::valuation_unchecked(q, p);
}

// ---------------------------------------------------------------------------
// Square classes of Q^x

/// The class of sign * prod(support) in Q^x / (Q^x)^2.
struct SquareClassQ {
  int sign = 1;
  std::vector<Integer> support;  // strictly increasing primes

  bool is_identity() const { return sign == 1 && support.empty(); }

  /// The squarefree integer representative.
  Integer representative() const {
    Integer r = sign;
    for (const auto& p : support) r *= p;
    return r;
  }

  bool contains(const Integer& p) const {
    return std::binary_search(support.begin(), support.end(), p);
  }

  friend SquareClassQ operator*(const SquareClassQ& x, const SquareClassQ& y) {
    SquareClassQ r;
    r.sign = x.sign * y.sign;
    std::set_symmetric_difference(x.support.begin(), x.support.end(), y.support.begin(),
                                  y.support.end(), std::back_inserter(r.support));
    return r;
  }
  friend bool operator==(const SquareClassQ&, const SquareClassQ&) = default;
  friend auto operator<=>(const SquareClassQ& x, const SquareClassQ& y) {
    if (x.sign != y.sign) return x.sign <=> y.sign;
    if (x.support.size() != y.support.size()) return x.support.size() <=> y.support.size();
    for (std::size_t i = 0; i < x.support.size(); ++i) {
      int c = cmp(x.support[i], y.support[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::string str() const { return representative().get_str(); }
};

inline SquareClassQ square_class(const PrimeFactorization& f) {
  SquareClassQ c;
  c.sign = f.sign;
  for (const auto& [p, e] : f.factors)
    if (e % 2 != 0) c.support.push_back(p);
  return c;
}

/// Squarefree representative of q modulo squares.
inline SquareClassQ square_class(const Rational& q, const FactorOptions& opts = {}) {
  if (q.is_zero()) throw domain_error("square class of zero");
  return square_class(factor(q, opts));
}

/// Square class of a squarefree nonzero integer whose prime support is already known.
inline SquareClassQ square_class_of_squarefree(const Integer& d) {
  return square_class(factor(d));
}

// ---------------------------------------------------------------------------
// Places of Q and local squares

/// A completion of Q: the real place or the p-adic place for a prime p.
class QPlace {
 public:
  static QPlace real() { return QPlace(); }
  static QPlace prime(const Integer& p) {
    if (!is_prime(p)) throw domain_error("place at non-prime " + p.get_str());
    QPlace v;
    v.p_ = p;
    return v;
  }
  bool is_real() const { return sign(p_) == 0; }
  const Integer& p() const { return p_; }
  std::string str() const { return is_real() ? "inf" : p_.get_str(); }
  friend bool operator==(const QPlace&, const QPlace&) = default;

 private:
  QPlace() = default;
  Integer p_ = 0;
};

/// True iff q is a square in the completion.
inline bool is_square_local(const Rational& q, const QPlace& place) {
  if (q.is_zero()) throw domain_error("is_square_local of zero");
  if (place.is_real()) return q.sign() > 0;
  const Integer& p = place.p();
  int v = detail::valuation_unchecked(q, p);
  if (v % 2 != 0) return false;
  Rational u = detail::unit_part(q, p, v);
  Integer w = u.num() * u.den();  // same unit class as num/den since den^2 is a unit square
  if (p == 2) return mod(w, Integer(8)) == 1;
  return mpz_legendre(w.get_mpz_t(), p.get_mpz_t()) == 1;
}

}  // namespace twoisog
