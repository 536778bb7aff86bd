#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "twoisog/arith.hpp"

namespace twoisog {

/// Dense univariate polynomial over Q, coefficient i multiplies T^i.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  RationalPolynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(c);
  }
  RationalPolynomial(int c) : RationalPolynomial(Rational(c)) {}  // NOLINT
  explicit RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// The indeterminate T.
  static RationalPolynomial T() { return RationalPolynomial(std::vector<Rational>{0, 1}); }
  /// c * T^k.
  static RationalPolynomial monomial(const Rational& c, int k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return RationalPolynomial(std::move(v));
  }
  /// T - e.
  static RationalPolynomial linear(const Rational& e) {
    return RationalPolynomial(std::vector<Rational>{-e, 1});
  }

  /// Degree; the zero polynomial has degree -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }
  Rational constant_term() const { return coeff(0); }

  /// Index of the lowest nonzero coefficient, i.e. the T-adic valuation.
  int low_degree() const {
    if (is_zero()) throw domain_error("valuation of the zero polynomial");
    int i = 0;
    while (c_[i].is_zero()) ++i;
    return i;
  }

  Rational operator()(const Rational& t) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
  }

  RationalPolynomial operator-() const {
    RationalPolynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  RationalPolynomial& operator+=(const RationalPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  RationalPolynomial& operator-=(const RationalPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend RationalPolynomial operator*(const RationalPolynomial& f, const RationalPolynomial& g) {
    if (f.is_zero() || g.is_zero()) return {};
    std::vector<Rational> r(f.c_.size() + g.c_.size() - 1);
    for (std::size_t i = 0; i < f.c_.size(); ++i) {
      if (f.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
    }
    return RationalPolynomial(std::move(r));
  }
  RationalPolynomial& operator*=(const RationalPolynomial& o) { return *this = *this * o; }
  friend RationalPolynomial operator+(RationalPolynomial f, const RationalPolynomial& g) { return f += g; }
  friend RationalPolynomial operator-(RationalPolynomial f, const RationalPolynomial& g) { return f -= g; }

  /// Euclidean division: returns (q, r) with f = q*g + r, deg r < deg g.
  friend std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& f,
                                                                  const RationalPolynomial& g) {
    if (g.is_zero()) throw domain_error("polynomial division by zero");
    RationalPolynomial r = f;
    if (f.degree() < g.degree()) return {RationalPolynomial(), r};
    std::vector<Rational> q(f.degree() - g.degree() + 1);
    Rational lc = g.leading();
    for (int k = f.degree() - g.degree(); k >= 0; --k) {
      Rational c = r.coeff(k + g.degree()) / lc;
      q[k] = c;
      if (c.is_zero()) continue;
      for (int i = 0; i <= g.degree(); ++i) r.c_[k + i] -= c * g.c_[i];
      r.trim();
    }
    return {RationalPolynomial(std::move(q)), r};
  }
  friend RationalPolynomial operator/(const RationalPolynomial& f, const RationalPolynomial& g) {
    return divmod(f, g).first;
  }
  friend RationalPolynomial operator%(const RationalPolynomial& f, const RationalPolynomial& g) {
    return divmod(f, g).second;
  }

  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

  RationalPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return RationalPolynomial(std::move(d));
  }

  /// f(T + c).
  RationalPolynomial shift(const Rational& c) const {
    RationalPolynomial r;
    RationalPolynomial lin(std::vector<Rational>{c, 1});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + RationalPolynomial(*it);
    return r;
  }

  /// f(s T).
  RationalPolynomial scale_var(const Rational& s) const {
    RationalPolynomial r = *this;
    Rational p(1);
    for (auto& x : r.c_) {
      x *= p;
      p *= s;
    }
    r.trim();
    return r;
  }

  /// T^n f(1/T); requires n >= deg f.
  RationalPolynomial reversed(int n) const {
    if (n < degree()) throw domain_error("reversal degree below polynomial degree");
    std::vector<Rational> r(n + 1);
    for (int i = 0; i <= degree(); ++i) r[n - i] = c_[i];
    return RationalPolynomial(std::move(r));
  }

  /// f / T^k; requires T^k | f.
  RationalPolynomial div_T(int k) const {
    if (k == 0 || is_zero()) return *this;
    if (low_degree() < k) throw domain_error("div_T: not divisible");
    return RationalPolynomial(std::vector<Rational>(c_.begin() + k, c_.end()));
  }
  RationalPolynomial mul_T(int k) const {
    if (k == 0 || is_zero()) return *this;
    std::vector<Rational> r(k, Rational(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return RationalPolynomial(std::move(r));
  }

  RationalPolynomial monic() const {
    if (is_zero()) return {};
    RationalPolynomial r = *this;
    Rational lc = leading();
    for (auto& x : r.c_) x /= lc;
    return r;
  }

  /// (content, primitive integer coefficients) with f = content * primitive and
  /// the primitive part having positive leading coefficient.
  std::pair<Rational, std::vector<Integer>> primitive_part() const {
    if (is_zero()) throw domain_error("primitive part of zero");
    Integer l = 1;
    for (const auto& x : c_) l = lcm(l, x.den());
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& x : c_) {
      Integer v = x.num() * (l / x.den());
      g = gcd(g, v);
      ints.push_back(v);
    }
    if (sign(ints.back()) < 0) g = -g;
    for (auto& v : ints) v /= g;
    return {Rational(g, l), ints};
  }

  std::string str(const std::string& var = "T") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline RationalPolynomial pow(const RationalPolynomial& f, int e) {
  if (e < 0) throw domain_error("negative polynomial power");
  RationalPolynomial r(1), b = f;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::string RationalPolynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    std::string cs = c.is_integer() ? c.num().get_str() : c.str();
    if (!s.empty()) {
      if (c.sign() > 0) s += " + ";
      else {
        s += " - ";
        Rational m = -c;
        cs = m.is_integer() ? m.num().get_str() : m.str();
      }
    }
    if (i == 0) s += cs;
    else {
      if (cs == "1") cs.clear();
      else if (cs == "-1") cs = "-";
      else cs += "*";
      s += cs + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
  }
  return s;
}

/// Monic gcd; gcd(0, 0) = 0.
inline RationalPolynomial gcd(RationalPolynomial f, RationalPolynomial g) {
  while (!g.is_zero()) {
    RationalPolynomial r = f % g;
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

/// f(t) by Horner evaluation.
inline Rational eval_at(const RationalPolynomial& f, const Rational& t) { return f(t); }

/// f / gcd(f, f'), made monic.
inline RationalPolynomial squarefree_part(const RationalPolynomial& f) {
  if (f.is_zero()) throw domain_error("squarefree part of zero");
  return (f / gcd(f, f.derivative())).monic();
}

namespace detail {

/// Positive divisors of |n| (n nonzero), ascending.
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : factor(n).factors) {
    std::size_t base = ds.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// Evaluates the primitive integer polynomial at num/den scaled by den^deg.
inline Integer homogeneous_eval(const std::vector<Integer>& c, const Integer& num, const Integer& den) {
  // sum of c_i num^i den^(n-i)
  Integer acc = 0;
  const std::size_t n = c.size() - 1;
  std::vector<Integer> denp(n + 1);
  denp[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) denp[i] = denp[i - 1] * den;
  for (std::size_t i = n + 1; i-- > 0;) acc = acc * num + c[i] * denp[n - i];
  return acc;
}

}  // namespace detail

/// All rational roots with multiplicities, ascending.
inline std::vector<std::pair<Rational, int>> rational_roots(const RationalPolynomial& f) {
  if (f.is_zero()) throw domain_error("rational_roots of the zero polynomial");
  std::vector<std::pair<Rational, int>> out;
  RationalPolynomial g = f;
  int zero_mult = g.low_degree();
  g = g.div_T(zero_mult);
  if (zero_mult > 0) out.emplace_back(Rational(0), zero_mult);
  if (g.degree() >= 1) {
    RationalPolynomial sf = squarefree_part(g);
    auto [content, ints] = sf.primitive_part();
    std::vector<Rational> found;
    for (const auto& q : detail::divisors(ints.back())) {
      for (const auto& p : detail::divisors(ints.front())) {
        if (gcd(p, q) != 1) continue;
        for (int s : {1, -1}) {
          Integer num = s * p;
          if (sign(detail::homogeneous_eval(ints, num, q)) == 0) found.emplace_back(num, q);
        }
      }
      if (static_cast<int>(found.size()) == sf.degree()) break;
    }
    for (const auto& r : found) {
      int m = 0;
      RationalPolynomial lin = RationalPolynomial::linear(r);
      while (true) {
        auto [q, rem] = divmod(g, lin);
        if (!rem.is_zero()) break;
        g = q;
        ++m;
      }
      out.emplace_back(r, m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff f is a constant times a product of linear factors over Q.
inline bool splits_linearly(const RationalPolynomial& f) {
  if (f.is_zero()) throw domain_error("splits_linearly of the zero polynomial");
  int total = 0;
  for (const auto& r : rational_roots(f)) total += r.second;
  return total == f.degree();
}

/// 16 (a^2 - 4b) b^2.
inline RationalPolynomial model_discriminant(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial bp = a * a - RationalPolynomial(4) * b;
  if (b.is_zero() || bp.is_zero()) throw singular_model_error("singular model: b = 0 or a^2 = 4b");
  return RationalPolynomial(16) * bp * b * b;
}

/// Discriminant of the dual model (a', b') = (-2a, a^2 - 4b), i.e. 256 b (a^2 - 4b)^2.
inline RationalPolynomial dual_model_discriminant(const RationalPolynomial& a,
                                                  const RationalPolynomial& b) {
  RationalPolynomial ap = RationalPolynomial(-2) * a;
  RationalPolynomial bp = a * a - RationalPolynomial(4) * b;
  return model_discriminant(ap, bp);
}

// ---------------------------------------------------------------------------
// Square classes of Q(T)^x supported on linear factors

/// The class of c * prod(T - e) modulo squares in Q(T)^x.
struct SquareClassFT {
  SquareClassQ constant_class;
  std::vector<Rational> linear_support;  // strictly increasing

  bool is_identity() const { return constant_class.is_identity() && linear_support.empty(); }

  friend SquareClassFT operator*(const SquareClassFT& x, const SquareClassFT& y) {
    SquareClassFT r;
    r.constant_class = x.constant_class * y.constant_class;
    std::set_symmetric_difference(x.linear_support.begin(), x.linear_support.end(),
                                  y.linear_support.begin(), y.linear_support.end(),
                                  std::back_inserter(r.linear_support));
    return r;
  }
  friend bool operator==(const SquareClassFT&, const SquareClassFT&) = default;
  friend auto operator<=>(const SquareClassFT& x, const SquareClassFT& y) {
    if (auto c = x.constant_class <=> y.constant_class; c != 0) return c;
    return x.linear_support <=> y.linear_support;
  }

  /// Monic representative polynomial times the squarefree constant.
  RationalPolynomial representative() const {
    RationalPolynomial f(Rational(constant_class.representative()));
    for (const auto& e : linear_support) f *= RationalPolynomial::linear(e);
    return f;
  }
  std::string str() const {
    std::string s = constant_class.str();
    for (const auto& e : linear_support) {
      if (e.is_zero()) {
        s += "*T";
        continue;
      }
      Rational m = e.sign() > 0 ? e : -e;
      std::string ms = m.is_integer() ? m.num().get_str() : m.str();
      s += "*(T" + std::string(e.sign() > 0 ? "-" : "+") + ms + ")";
    }
    return s;
  }

};

/// Square class of a polynomial that splits into linear factors over Q.
inline SquareClassFT ft_square_class(const RationalPolynomial& f) {
  if (f.is_zero()) throw domain_error("square class of the zero polynomial");
  auto roots = rational_roots(f);
  int total = 0;
  SquareClassFT c;
  for (const auto& [e, m] : roots) {
    total += m;
    if (m % 2 != 0) c.linear_support.push_back(e);
  }
  if (total != f.degree())
    throw unsupported_error("polynomial " + f.str() + " has a nonlinear irreducible factor");
  c.constant_class = square_class(f.leading());
  return c;
}

}  // namespace twoisog
