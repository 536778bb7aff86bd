#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoisog/localdata.hpp"
#include "twoisog/localsolv.hpp"

namespace twoisog {

/// w^2 = d z^4 - 2a z^2 + (a^2 - 4b)/d, the homogeneous space attached to the
/// class of d in the descent by phi on y^2 = x^3 + a x^2 + b x.
struct Torsor {
  Integer d;
  Rational a, b;

  /// Quartic coefficients, constant term first.
  std::vector<Rational> quartic() const {
    Rational D(d);
    return {(a * a - Rational(4) * b) / D, 0, Rational(-2) * a, 0, D};
  }
};

inline bool torsor_solvable_at(const Torsor& tor, const QPlace& place,
                               const LocalSolvOptions& opts = {}) {
  if (sign(tor.d) == 0) throw domain_error("torsor with d = 0");
  auto g = tor.quartic();
  if (place.is_real()) return quartic_solvable_real(g[4], g[2], g[0]);
  return quartic_solvable_padic(g, place.p(), opts);
}

/// phi: the descent whose classes are images of delta on E'(Q), tested on the
/// torsors of (a, b). phi_hat: images of delta on E(Q), tested on the torsors of
/// the dual model.
enum class SelmerContext { phi, phi_hat };

inline std::string to_string(SelmerContext c) { return c == SelmerContext::phi ? "phi" : "phi-hat"; }

// ---------------------------------------------------------------------------
// F_2 coordinates of local square classes

namespace detail {

using Bits = std::uint64_t;
constexpr int kMaxGenerators = 64;

/// Coordinates of Q_v^x / Q_v^x^2: real (sign); odd p (v mod 2, unit nonsquare);
/// p = 2 (v mod 2, unit = 3 mod 4, unit = 3 or 5 mod 8).
inline int local_dimension(const QPlace& v) {
  if (v.is_real()) return 1;
  return v.p() == 2 ? 3 : 2;
}

inline Bits local_coordinates(const Integer& x, const QPlace& v) {
  if (v.is_real()) return sign(x) < 0 ? 1 : 0;
  const Integer& p = v.p();
  int e = valuation_int(x, p);
  Integer u = x;
  if (e > 0) {
    Integer q = pow(p, e);
    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), q.get_mpz_t());
  }
  Bits b = e % 2 ? 1 : 0;
  if (p == 2) {
    long r = mod(u, Integer(8)).get_si();
    if (r % 4 == 3) b |= 2;
    if (r == 3 || r == 5) b |= 4;
  } else if (fp::legendre(u, p) == -1) {
    b |= 2;
  }
  return b;
}

/// Representatives of all local square classes.
inline std::vector<Integer> local_representatives(const QPlace& v) {
  if (v.is_real()) return {Integer(1), Integer(-1)};
  const Integer& p = v.p();
  if (p == 2) return {1, 3, 5, 7, 2, 6, 10, 14};
  Integer n = 2;
  while (fp::legendre(n, p) != -1) ++n;
  return {Integer(1), n, p, n * p};
}

inline int popcount(Bits x) { return __builtin_popcountll(x); }

}  // namespace detail

/// Image of the local delta map at one place, as a subgroup of Q_v^x / Q_v^x^2.
struct LocalImage {
  QPlace place = QPlace::real();
  std::vector<Integer> classes;  // representatives in the image, sorted by coordinates
  int dim = 0;

  bool contains(const Integer& x) const {
    detail::Bits c = detail::local_coordinates(x, place);
    for (const auto& r : classes)
      if (detail::local_coordinates(r, place) == c) return true;
    return false;
  }
};

/// Local image for the given descent at a place; requires an integral model.
inline LocalImage local_image(const CurveQ& E, SelmerContext ctx, const QPlace& v,
                              const LocalSolvOptions& opts = {}) {
  CurveQ F = ctx == SelmerContext::phi ? E : dual_model(E);
  LocalImage out;
  out.place = v;
  std::vector<detail::Bits> coords;
  for (const auto& r : detail::local_representatives(v)) {
    if (torsor_solvable_at(Torsor{r, F.a(), F.b()}, v, opts)) {
      out.classes.push_back(r);
      coords.push_back(detail::local_coordinates(r, v));
    }
  }
  for (auto x : coords)
    for (auto y : coords)
      if (std::find(coords.begin(), coords.end(), x ^ y) == coords.end())
        throw error("local image at " + v.str() + " is not a subgroup");
  int n = static_cast<int>(coords.size());
  while ((1 << out.dim) < n) ++out.dim;
  if ((1 << out.dim) != n) throw error("local image at " + v.str() + " has non-power-of-2 order");
  return out;
}

// ---------------------------------------------------------------------------
// Selmer groups

struct SelmerGroup {
  SelmerContext context = SelmerContext::phi;
  std::vector<SquareClassQ> basis;

  int dim() const { return static_cast<int>(basis.size()); }

  /// All 2^dim elements, sorted canonically.
  std::vector<SquareClassQ> elements() const {
    std::vector<SquareClassQ> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
      SquareClassQ c;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (mask >> i & 1) c = c * basis[i];
      out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  bool contains(const SquareClassQ& c) const {
    auto all = elements();
    return std::binary_search(all.begin(), all.end(), c);
  }
};

struct DescentOptions {
  LocalSolvOptions local;
  FactorOptions factor;
  std::vector<Integer> prime_hints;  // primes that may divide b b'; verified before use
};

/// Everything one descent produces: the candidate group, the places tested, the
/// local images and the Selmer group.
struct DescentData {
  CurveQ model{1, 1};                  // integral model the descent ran on
  std::vector<Integer> primes;         // odd and even primes of 2 b b'
  std::vector<SquareClassQ> generators;  // -1 and the primes above
  std::vector<LocalImage> images;      // real place, 2, odd primes of b b'
  SelmerGroup selmer;
};

namespace detail {

/// Primes dividing n, using the hints first and factoring only what remains.
inline std::vector<Integer> prime_support(Integer n, const std::vector<Integer>& hints,
                                          const FactorOptions& fo) {
  std::vector<Integer> out;
  n = abs(n);
  for (const auto& p : hints) {
    if (n == 1) break;
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      if (!is_prime(p)) throw domain_error("prime hint " + p.get_str() + " is not prime");
      out.push_back(p);
      mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    }
  }
  if (n != 1)
    for (const auto& [p, e] : factor(n, fo).factors) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline SquareClassQ class_of_generator(const Integer& g) {
  SquareClassQ c;
  if (g == -1) c.sign = -1;
  else c.support.push_back(g);
  return c;
}

/// Reduced echelon basis of the span of v, pivots on the highest set bit, sorted
/// by pivot. Canonical for the subspace.
inline std::vector<Bits> rref(std::vector<Bits> v, int n) {
  std::vector<Bits> out;
  for (int c = n - 1; c >= 0; --c) {
    auto it = std::find_if(v.begin(), v.end(), [&](Bits x) { return x >> c & 1; });
    if (it == v.end()) continue;
    Bits piv = *it;
    v.erase(it);
    for (auto& x : v)
      if (x >> c & 1) x ^= piv;
    for (auto& x : out)
      if (x >> c & 1) x ^= piv;
    out.push_back(piv);
  }
  // Finish reduction: clear each pivot bit from the other vectors.
  for (std::size_t i = 0; i < out.size(); ++i) {
    int c = 63 - __builtin_clzll(out[i]);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i && (out[j] >> c & 1)) out[j] ^= out[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Basis of {x : M x = 0} over F_2 in reduced echelon form; rows of M are masks.
inline std::vector<Bits> nullspace(const std::vector<Bits>& rows, int n) {
  std::vector<Bits> m = rows;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < static_cast<int>(m.size()); ++c) {
    int sel = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (m[i] >> c & 1) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
      if (i != r && (m[i] >> c & 1)) m[i] ^= m[r];
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<Bits> basis;
  for (int f = 0; f < n; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
    Bits v = Bits{1} << f;
    for (int i = 0; i < r; ++i)
      if (m[i] >> f & 1) v |= Bits{1} << pivot_col[i];
    basis.push_back(v);
  }
  return rref(basis, n);
}

}  // namespace detail

/// Selmer group of E for one descent, with the intermediate local data.
inline DescentData descent(const CurveQ& E, SelmerContext ctx, const DescentOptions& opts = {}) {
  DescentData out;
  out.model = integral_model(E).first;
  out.selmer.context = ctx;
  Integer b = out.model.b().num(), bd = out.model.b_dual().num();
  out.primes = detail::prime_support(Integer(2 * b * bd), opts.prime_hints, opts.factor);
  if (static_cast<int>(out.primes.size()) + 1 > detail::kMaxGenerators)
    throw unsupported_error("too many primes for the descent");

  std::vector<Integer> gens{Integer(-1)};
  gens.insert(gens.end(), out.primes.begin(), out.primes.end());
  for (const auto& g : gens) out.generators.push_back(detail::class_of_generator(g));

  std::vector<QPlace> places{QPlace::real()};
  for (const auto& p : out.primes) places.push_back(QPlace::prime(p));

  std::vector<detail::Bits> rows;
  for (const auto& v : places) {
    LocalImage img = local_image(out.model, ctx, v, opts.local);
    int ld = detail::local_dimension(v);
    std::vector<detail::Bits> gc;
    for (const auto& g : gens) gc.push_back(detail::local_coordinates(g, v));
    for (detail::Bits lam = 1; lam < (detail::Bits{1} << ld); ++lam) {
      bool kills = true;
      for (const auto& r : img.classes)
        if (detail::popcount(lam & detail::local_coordinates(r, v)) % 2) kills = false;
      if (!kills) continue;
      detail::Bits row = 0;
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (detail::popcount(lam & gc[i]) % 2) row |= detail::Bits{1} << i;
      rows.push_back(row);
    }
    out.images.push_back(std::move(img));
  }

  for (detail::Bits x : detail::nullspace(rows, static_cast<int>(gens.size()))) {
    SquareClassQ c;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (x >> i & 1) c = c * out.generators[i];
    out.selmer.basis.push_back(c);
  }
  return out;
}

inline SelmerGroup selmer_group(const CurveQ& E, SelmerContext ctx, const DescentOptions& opts = {}) {
  return descent(E, ctx, opts).selmer;
}

// ---------------------------------------------------------------------------
// Spans of square classes

/// Incremental F_2 span of square classes of Q^x.
class ClassSpan {
 public:
  /// Adds c; returns true if it enlarged the span.
  bool add(const SquareClassQ& c) {
    SquareClassQ r = reduce(c);
    if (r.is_identity()) return false;
    basis_.push_back(r);
    std::sort(basis_.begin(), basis_.end(), [](const auto& x, const auto& y) { return lead(y) < lead(x); });
    return true;
  }
  bool contains(const SquareClassQ& c) const { return reduce(c).is_identity(); }
  int dim() const { return static_cast<int>(basis_.size()); }

 private:
  // Leading coordinate: the largest prime, or 0 for the sign alone.
  static Integer lead(const SquareClassQ& c) { return c.support.empty() ? Integer(0) : c.support.back(); }

  SquareClassQ reduce(SquareClassQ c) const {
    // basis_ is kept sorted by decreasing leading coordinate with distinct leads.
    for (const auto& b : basis_) {
      Integer l = lead(b);
      bool hit = sign(l) == 0 ? c.sign == -1 : c.contains(l);
      if (hit) c = c * b;
    }
    return c;
  }
  std::vector<SquareClassQ> basis_;
};

inline int span_dimension(const std::vector<SquareClassQ>& cs) {
  ClassSpan s;
  for (const auto& c : cs) s.add(c);
  return s.dim();
}

// ---------------------------------------------------------------------------
// Cassels ratio

enum class CheckStatus { pass, fail, skipped };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

/// log2 of |Sel_phi| / |Sel_phi-hat| against the sum over places of log2 of
/// half the local image order of delta on E'.
struct CasselsCheck {
  CheckStatus status = CheckStatus::skipped;
  int lhs = 0;
  int rhs = 0;
  std::string note;
};

namespace detail {

/// log2 of a positive rational that must be a power of 2.
inline std::optional<int> exact_log2(const Rational& q) {
  if (q.sign() <= 0) return std::nullopt;
  Integer n = q.num(), d = q.den();
  if (mpz_popcount(n.get_mpz_t()) != 1 || mpz_popcount(d.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
         static_cast<int>(mpz_sizeinbase(d.get_mpz_t(), 2));
}

}  // namespace detail

/// Cassels check from finished descents of both contexts. The real and 2-adic
/// terms come from the enumerated local images, odd primes from Tamagawa numbers.
inline CasselsCheck cassels_ratio_check(const DescentData& phi, const DescentData& phi_hat) {
  CasselsCheck out;
  out.lhs = phi.selmer.dim() - phi_hat.selmer.dim();
  int rhs = 0;
  for (const auto& img : phi.images) {
    if (img.place.is_real() || img.place.p() == 2) {
      rhs += img.dim - 1;
      continue;
    }
    auto l = detail::exact_log2(local_image_order(phi.model, img.place.p()));
    if (!l) {
      out.status = CheckStatus::fail;
      out.note = "Tamagawa ratio at " + img.place.str() + " is not a power of 2";
      return out;
    }
    rhs += *l;
  }
  out.rhs = rhs;
  out.status = out.lhs == out.rhs ? CheckStatus::pass : CheckStatus::fail;
  return out;
}

inline CasselsCheck cassels_ratio_check(const CurveQ& E, const DescentOptions& opts = {}) {
  try {
    return cassels_ratio_check(descent(E, SelmerContext::phi, opts),
                               descent(E, SelmerContext::phi_hat, opts));
  } catch (const precision_error& e) {
    CasselsCheck out;
    out.note = e.what();
    return out;
  }
}

}  // namespace twoisog
