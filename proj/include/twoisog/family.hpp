#pragma once

#include <algorithm>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "twoisog/families_data.hpp"
#include "twoisog/localdata.hpp"

namespace twoisog {

/// Bad places of a family split into additive (A), (I_2n, I_n) (M) and
/// (I_n, I_2n) (M_prime) places, each list sorted by place_less.
struct PlaceClassification {
  std::vector<Place> A, M, M_prime;

  bool contains(const std::vector<Place>& s, const Place& v) const {
    return std::find(s.begin(), s.end(), v) != s.end();
  }
  std::vector<Place> all() const {
    std::vector<Place> out = A;
    out.insert(out.end(), M.begin(), M.end());
    out.insert(out.end(), M_prime.begin(), M_prime.end());
    std::sort(out.begin(), out.end(), place_less);
    return out;
  }
  friend bool operator==(const PlaceClassification&, const PlaceClassification&) = default;
};

struct FamilyRecord {
  std::string name;
  CurveQT E{RationalFunction(1), RationalFunction(1)};
  std::vector<PointQT> points_E, points_E_dual;
  std::vector<PointQT> extra_points_E;  // further points on E, used for lower bounds only
  PlaceClassification expected;
  int target_rank = 0;
};

// ---------------------------------------------------------------------------
// F_2 spans of square classes over Q(T)

/// Incremental span of SquareClassFT elements. Coordinates are the sign, the
/// primes of the constant and the roots of the linear support.
class FtClassSpan {
 public:
  bool add(const SquareClassFT& c) {
    Vec v = reduce(coords(c));
    if (v.empty()) return false;
    for (auto& b : basis_)
      if (std::binary_search(b.begin(), b.end(), v.back())) b = sum(b, v);
    basis_.push_back(std::move(v));
    std::sort(basis_.begin(), basis_.end(), [](const Vec& x, const Vec& y) { return x.back() > y.back(); });
    return true;
  }
  bool contains(const SquareClassFT& c) const { return reduce(coords(c)).empty(); }
  int dim() const { return static_cast<int>(basis_.size()); }

 private:
  using Vec = std::vector<std::string>;  // sorted set of coordinates

  static Vec coords(const SquareClassFT& c) {
    Vec v;
    if (c.constant_class.sign < 0) v.push_back("s");
    for (const auto& p : c.constant_class.support) v.push_back("p" + p.get_str());
    for (const auto& e : c.linear_support) v.push_back("r" + e.str());
    std::sort(v.begin(), v.end());
    return v;
  }
  static Vec sum(const Vec& x, const Vec& y) {
    Vec r;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r));
    return r;
  }
  Vec reduce(Vec v) const {
    for (const auto& b : basis_)
      if (std::binary_search(v.begin(), v.end(), b.back())) v = sum(v, b);
    return v;
  }
  std::vector<Vec> basis_;  // distinct leading coordinates, decreasing
};

// ---------------------------------------------------------------------------
// Classification

/// 2|A| + |M| + |M'| - 4.
inline int geometric_rank(const PlaceClassification& c) {
  int r = 2 * static_cast<int>(c.A.size()) + static_cast<int>(c.M.size() + c.M_prime.size()) - 4;
  if (r < 0) throw family_error("negative geometric rank " + std::to_string(r));
  return r;
}

inline PlaceClassification classify_places(const CurveQT& E) {
  RationalPolynomial disc = detail::as_polynomial(E.discriminant());
  if (!splits_linearly(disc)) throw family_error("condition (a): the discriminant has a nonlinear factor");
  CurveQT Ed = dual_model(E);
  PlaceClassification out;
  for (const auto& v : bad_places(E)) {
    LocalReduction x = tate_local(E, v), y = tate_local(Ed, v);
    if (x.reduction == ReductionType::additive) {
      out.A.push_back(v);
      continue;
    }
    if (!x.kodaira.is_multiplicative() || !y.kodaira.is_multiplicative())
      throw family_error("place " + v.str() + " is multiplicative on E but not on E'");
    if (x.kodaira.n == 2 * y.kodaira.n) out.M.push_back(v);
    else if (y.kodaira.n == 2 * x.kodaira.n) out.M_prime.push_back(v);
    else
      throw family_error("place " + v.str() + " has symbols " + x.kodaira.str() + ", " + y.kodaira.str());
  }
  for (auto* s : {&out.A, &out.M, &out.M_prime}) std::sort(s->begin(), s->end(), place_less);
  return out;
}

// ---------------------------------------------------------------------------
// Admissible divisors

/// A squarefree divisor f of b (or of a^2 - 4b), scaled so that it is trivial
/// at the normalization place, with its square class.
struct AdmissibleDivisor {
  RationalPolynomial f;
  SquareClassFT cls;
};

struct AdmissibleDivisorSets {
  Place e0, e0_prime;  // least places of M and M' under place_less
  std::vector<AdmissibleDivisor> F, F_prime;
};

namespace detail {

/// Divisors of `poly` supported on the roots lying in `support`, with v_inf
/// even unless infinity is in `support`, normalized to be a square at `norm`.
inline std::vector<AdmissibleDivisor> divisor_set(const RationalPolynomial& poly,
                                                  const std::vector<Place>& support, const Place& norm) {
  bool inf_free = std::find(support.begin(), support.end(), Place::infinity()) != support.end();
  std::vector<Rational> roots;
  for (const auto& [e, m] : rational_roots(poly)) {
    if (std::find(support.begin(), support.end(), Place::linear(e)) == support.end())
      throw family_error("root " + Place::short_str(e) + " lies outside the expected place set");
    roots.push_back(e);
  }
  if (roots.size() > 20) throw unsupported_error("too many roots for divisor enumeration");
  std::vector<AdmissibleDivisor> out;
  for (unsigned mask = 0; mask < (1u << roots.size()); ++mask) {
    RationalPolynomial f(Rational(1));
    int deg = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (mask >> i & 1) {
        f *= RationalPolynomial::linear(roots[i]);
        ++deg;
      }
    if (!inf_free && deg % 2) continue;
    if (norm.kind == Place::Kind::ft_infinity) {
      if (deg % 2) continue;  // a square at infinity has even degree and square leading term
    } else {
      f *= RationalPolynomial(Rational(1) / f(norm.e));
    }
    out.push_back({f, ft_square_class(f)});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.cls < y.cls; });
  return out;
}

}  // namespace detail

inline AdmissibleDivisorSets admissible_divisor_sets(const CurveQT& E, const PlaceClassification& c) {
  if (c.M.empty() || c.M_prime.empty()) throw family_error("condition (b): M and M' must be nonempty");
  AdmissibleDivisorSets out;
  out.e0 = c.M.front();
  out.e0_prime = c.M_prime.front();
  std::vector<Place> am = c.A, amp = c.A;
  am.insert(am.end(), c.M.begin(), c.M.end());
  amp.insert(amp.end(), c.M_prime.begin(), c.M_prime.end());
  out.F = detail::divisor_set(detail::as_polynomial(E.b()), am, out.e0_prime);
  out.F_prime = detail::divisor_set(detail::as_polynomial(E.b_dual()), amp, out.e0);
  return out;
}

// ---------------------------------------------------------------------------
// Conditions (a)-(g)

struct ConditionResult {
  char id = 'a';
  bool pass = false;
  std::string witness;  // empty on pass
};

struct ConditionReport {
  std::string family;
  std::vector<ConditionResult> conditions;  // (a) through (g), in order
  std::optional<PlaceClassification> classification;
  int span_E = 0, span_E_dual = 0;  // dims of the delta spans of the generic points
  int F_log = 0, F_prime_log = 0;   // log2 |F| and log2 |F'|
  std::optional<int> r;             // geometric rank when (a) and the classification succeed
  std::optional<int> conductor_degree;

  bool all_pass() const {
    return conditions.size() == 7 &&
           std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
  }
};

namespace detail {

inline int log2_exact(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  if ((std::size_t{1} << k) != n) throw family_error("divisor set size " + std::to_string(n) + " is not a power of 2");
  return k;
}

/// Span of delta classes of the given points plus (0,0).
inline FtClassSpan delta_span(const CurveQT& E, const std::vector<PointQT>& pts) {
  FtClassSpan s;
  s.add(delta_class(E, torsion_point(E)));
  for (const auto& P : pts) s.add(delta_class(E, P));
  return s;
}

inline std::vector<PointQT> lower_bound_points_E(const FamilyRecord& rec) {
  std::vector<PointQT> pts = rec.points_E;
  pts.insert(pts.end(), rec.extra_points_E.begin(), rec.extra_points_E.end());
  return pts;
}

}  // namespace detail

inline ConditionReport verify_conditions(const FamilyRecord& rec) {
  ConditionReport rep;
  rep.family = rec.name;
  auto set = [&](char id, bool pass, std::string witness = {}) {
    rep.conditions.push_back({id, pass, pass ? std::string() : std::move(witness)});
  };
  const CurveQT& E = rec.E;
  CurveQT Ed = dual_model(E);
  RationalPolynomial disc = detail::as_polynomial(E.discriminant());
  if (!splits_linearly(disc)) {
    set('a', false, "discriminant " + disc.str() + " does not split");
    for (char c = 'b'; c <= 'g'; ++c) set(c, false, "not checked: condition (a) fails");
    return rep;
  }
  set('a', true);
  PlaceClassification cls = classify_places(E);
  rep.classification = cls;
  rep.conductor_degree = conductor_degree(E);
  set('b', !cls.M.empty() && !cls.M_prime.empty(),
      "|M| = " + std::to_string(cls.M.size()) + ", |M'| = " + std::to_string(cls.M_prime.size()));

  auto split_or_odd = [](const CurveQT& F, const std::vector<Place>& places) -> std::string {
    for (const auto& v : places) {
      LocalReduction lr = tate_local(F, v);
      if (lr.reduction != ReductionType::split_multiplicative && lr.kodaira.n % 2 == 0)
        return v.str() + ": " + lr.kodaira.str() + " nonsplit";
    }
    return {};
  };
  std::string wc = split_or_odd(Ed, cls.M), wd = split_or_odd(E, cls.M_prime);
  set('c', wc.empty(), wc);
  set('d', wd.empty(), wd);

  std::string we;
  for (const auto& v : cls.A) {
    LocalReduction x = tate_local(E, v);
    if (x.kodaira.tag != KodairaSymbol::Tag::I_star) continue;
    int c2 = tate_local(Ed, v).tamagawa;
    if (x.tamagawa != 4 || c2 != 4) {
      we = v.str() + ": " + x.kodaira.str() + " with c = " + std::to_string(x.tamagawa) + ", c' = " +
           std::to_string(c2);
      break;
    }
  }
  set('e', we.empty(), we);

  int need_f = static_cast<int>(cls.A.size() + cls.M.size()) - 1;
  int need_g = static_cast<int>(cls.A.size() + cls.M_prime.size()) - 1;
  FtClassSpan sE = detail::delta_span(E, rec.points_E);
  FtClassSpan sEd = detail::delta_span(Ed, rec.points_E_dual);
  rep.span_E = sE.dim();
  rep.span_E_dual = sEd.dim();
  set('f', rep.span_E >= need_f, "span dimension " + std::to_string(rep.span_E) + " < " + std::to_string(need_f));
  set('g', rep.span_E_dual >= need_g,
      "span dimension " + std::to_string(rep.span_E_dual) + " < " + std::to_string(need_g));

  if (!cls.M.empty() && !cls.M_prime.empty()) {
    auto sets = admissible_divisor_sets(E, cls);
    rep.F_log = detail::log2_exact(sets.F.size());
    rep.F_prime_log = detail::log2_exact(sets.F_prime.size());
  }
  int r = 2 * static_cast<int>(cls.A.size()) + static_cast<int>(cls.M.size() + cls.M_prime.size()) - 4;
  if (r >= 0) rep.r = r;
  return rep;
}

inline nlohmann::ordered_json places_json(const std::vector<Place>& ps) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& v : ps) j.push_back(v.label());
  return j;
}

inline nlohmann::ordered_json to_json(const PlaceClassification& c) {
  return {{"A", places_json(c.A)}, {"M", places_json(c.M)}, {"M_prime", places_json(c.M_prime)}};
}

inline nlohmann::ordered_json to_json(const ConditionReport& rep) {
  nlohmann::ordered_json j;
  j["family"] = rep.family;
  nlohmann::ordered_json conds;
  for (const auto& c : rep.conditions) {
    nlohmann::ordered_json e{{"status", c.pass ? "pass" : "fail"}};
    if (!c.pass) e["witness"] = c.witness;
    conds[std::string(1, c.id)] = e;
  }
  j["conditions"] = conds;
  j["all_pass"] = rep.all_pass();
  if (rep.classification) j["classification"] = to_json(*rep.classification);
  j["span_dims"] = {rep.span_E, rep.span_E_dual};
  j["divisor_set_dims"] = {rep.F_log, rep.F_prime_log};
  j["r"] = rep.r ? nlohmann::ordered_json(*rep.r) : nlohmann::ordered_json();
  if (rep.conductor_degree) j["conductor_degree"] = *rep.conductor_degree;
  return j;
}

// ---------------------------------------------------------------------------
// Built-in records

namespace detail {

inline RationalPolynomial poly_from_json(const nlohmann::json& j) {
  std::vector<Rational> c;
  for (const auto& s : j) c.push_back(Rational::parse(s.get<std::string>()));
  return RationalPolynomial(c);
}

inline std::vector<PointQT> points_from_json(const nlohmann::json& j) {
  std::vector<PointQT> out;
  for (const auto& p : j)
    out.push_back(PointQT::finite(RationalFunction(poly_from_json(p["x"])), RationalFunction(poly_from_json(p["y"]))));
  return out;
}

inline std::vector<Place> places_from_json(const nlohmann::json& j) {
  std::vector<Place> out;
  for (const auto& s : j) {
    std::string v = s.get<std::string>();
    out.push_back(v == "inf" ? Place::infinity() : Place::linear(Rational::parse(v)));
  }
  std::sort(out.begin(), out.end(), place_less);
  return out;
}

inline RationalPolynomial factored_from_json(const nlohmann::json& j) {
  RationalPolynomial f(Rational::parse(j["constant"].get<std::string>()));
  for (const auto& r : j["roots"])
    f *= pow(RationalPolynomial::linear(Rational::parse(r[0].get<std::string>())), r[1].get<int>());
  return f;
}

inline FamilyRecord record_from_json(const nlohmann::json& j) {
  FamilyRecord rec;
  rec.name = j.at("name").get<std::string>();
  auto fail = [&](const std::string& what) { throw family_error("family " + rec.name + ": " + what); };
  RationalPolynomial a = poly_from_json(j.at("a")), b = poly_from_json(j.at("b"));
  rec.E = make_curve_qt(a, b);
  rec.points_E = points_from_json(j.at("points_E"));
  rec.points_E_dual = points_from_json(j.at("points_E_dual"));
  rec.extra_points_E = points_from_json(j.value("extra_points_E", nlohmann::json::array()));
  rec.target_rank = j.at("target_rank").get<int>();
  const auto& ex = j.at("expected");
  rec.expected = {places_from_json(ex.at("A")), places_from_json(ex.at("M")), places_from_json(ex.at("M_prime"))};

  CurveQT Ed = dual_model(rec.E);
  for (const auto& P : rec.points_E)
    if (!rec.E.contains(P)) fail("generic point is not on E");
  for (const auto& P : rec.extra_points_E)
    if (!rec.E.contains(P)) fail("extra point is not on E");
  for (const auto& P : rec.points_E_dual)
    if (!Ed.contains(P)) fail("generic point is not on E'");
  if (model_discriminant(a, b) != factored_from_json(j.at("discriminant"))) fail("discriminant mismatch");
  if (dual_model_discriminant(a, b) != factored_from_json(j.at("dual_discriminant")))
    fail("dual discriminant mismatch");
  if (rec.target_rank != geometric_rank(rec.expected)) fail("target rank disagrees with the place sets");
  return rec;
}

}  // namespace detail

/// The families shipped in data/families.json, validated on first use.
inline const std::vector<FamilyRecord>& builtin_families() {
  static const std::vector<FamilyRecord> families = [] {
    std::vector<FamilyRecord> out;
    nlohmann::json doc = nlohmann::json::parse(data::kFamiliesJson);
    for (const auto& j : doc.at("families"))
      out.push_back(detail::record_from_json(j));
    return out;
  }();
  return families;
}

inline const FamilyRecord& find_family(const std::string& name) {
  for (const auto& f : builtin_families())
    if (f.name == name) return f;
  throw domain_error("unknown family '" + name + "'");
}

}  // namespace twoisog
