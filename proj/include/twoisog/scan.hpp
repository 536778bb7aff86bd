#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "twoisog/family.hpp"
#include "twoisog/rank.hpp"

namespace twoisog {

struct ScanOptions {
  long height_bound = 50;
  int jobs = 1;
  RankOptions rank;
};

/// Checks attached to each record. good_at_infinity is not applicable when
/// infinity is itself a bad place of the family.
struct ScanChecks {
  CheckStatus cassels_ratio = CheckStatus::skipped;
  CheckStatus tamagawa_pattern = CheckStatus::pass;
  std::optional<CheckStatus> good_at_infinity;
};

struct ScanResult {
  std::string family;
  Rational t;
  bool skipped = false;
  std::string skip_reason;

  std::vector<Integer> bad_primes;
  int selmer_phi_hat = 0, selmer_phi = 0;
  RankStatus rank;
  Rational j;
  ScanChecks checks;
  bool local_pattern = false;  // v_p(t - e) = 1 at exactly one odd prime per bad place, primes distinct
  std::vector<ImageWitness> witnesses_E, witnesses_E_dual;
};

// ---------------------------------------------------------------------------
// Per-family data shared by every t

/// Primes where specialization is not controlled: 2 and the primes of the
/// coefficients, the roots and the root differences of the family.
struct FamilyScanData {
  const FamilyRecord* family = nullptr;
  PlaceClassification cls;
  std::vector<Rational> bad_values;  // finite bad places
  bool infinity_bad = false;
  std::set<Integer> excluded;        // S0
  RationalPolynomial a, b, bd;
  std::vector<Rational> roots_b, roots_bd;
};

namespace detail {

inline void add_primes(std::set<Integer>& s, const Integer& n) {
  if (sign(n) == 0) return;
  for (const auto& [p, e] : factor(n).factors) s.insert(p);
}

inline void add_primes(std::set<Integer>& s, const Rational& q) {
  add_primes(s, q.num());
  add_primes(s, q.den());
}

}  // namespace detail

inline FamilyScanData prepare_family(const FamilyRecord& rec) {
  FamilyScanData d;
  d.family = &rec;
  d.cls = classify_places(rec.E);
  d.a = detail::as_polynomial(rec.E.a());
  d.b = detail::as_polynomial(rec.E.b());
  d.bd = detail::as_polynomial(rec.E.b_dual());
  for (const auto& v : d.cls.all()) {
    if (v.kind == Place::Kind::ft_infinity) d.infinity_bad = true;
    else d.bad_values.push_back(v.e);
  }
  for (const auto& [e, m] : rational_roots(d.b)) d.roots_b.push_back(e);
  for (const auto& [e, m] : rational_roots(d.bd)) d.roots_bd.push_back(e);
  d.excluded.insert(Integer(2));
  RationalPolynomial disc = detail::as_polynomial(rec.E.discriminant());
  for (const auto* f : {&d.a, &d.b, &d.bd, &disc})
    for (const auto& c : f->coeffs()) detail::add_primes(d.excluded, c);
  for (std::size_t i = 0; i < d.bad_values.size(); ++i) {
    detail::add_primes(d.excluded, d.bad_values[i]);
    for (std::size_t k = i + 1; k < d.bad_values.size(); ++k)
      detail::add_primes(d.excluded, d.bad_values[i] - d.bad_values[k]);
  }
  return d;
}

/// t = m/n with |m|, n <= H, gcd(m, n) = 1, t not a bad place, ordered by (height, value).
inline std::vector<Rational> scan_parameters(const FamilyScanData& d, long H) {
  if (H < 1) throw domain_error("height bound must be positive");
  std::vector<Rational> out;
  for (long n = 1; n <= H; ++n)
    for (long m = -H; m <= H; ++m) {
      if (std::gcd(m, n) != 1) continue;
      Rational t{Integer(m), Integer(n)};
      if (std::find(d.bad_values.begin(), d.bad_values.end(), t) != d.bad_values.end()) continue;
      out.push_back(t);
    }
  std::sort(out.begin(), out.end(), [](const Rational& x, const Rational& y) {
    Integer hx = height(x), hy = height(y);
    return hx != hy ? hx < hy : x < y;
  });
  return out;
}

namespace detail {

/// Primes dividing the numerators of t - e for the roots e of b and b', and of
/// the family constants; they cover b(t) b'(t) up to the integral scaling.
inline std::vector<Integer> prime_hints(const FamilyScanData& d, const Rational& t) {
  std::set<Integer> s = d.excluded;
  add_primes(s, t.den());
  for (const auto* roots : {&d.roots_b, &d.roots_bd})
    for (const auto& e : *roots) add_primes(s, (t - e).num());
  return {s.begin(), s.end()};
}

inline std::optional<PointQ> specialize_point(const PointQT& P, const Rational& t) {
  try {
    return specialize(P, t);
  } catch (const domain_error&) {
    return std::nullopt;  // pole at t
  }
}

/// Prime-to-S0 factorization of the numerator of t - e (or of the denominator of t at infinity).
inline std::map<Integer, int> outside_s0(const FamilyScanData& d, const Integer& n) {
  std::map<Integer, int> out;
  if (sign(n) == 0) return out;
  for (const auto& [p, e] : factor(n).factors)
    if (!d.excluded.count(p)) out[p] = e;
  return out;
}

/// Expected c_p(E') / c_p(E) at a prime with v_p(t - e) = 1 for e in M, M' or A.
inline Rational expected_ratio(const PlaceClassification& c, const Place& v) {
  if (c.contains(c.M, v)) return Rational(1, 2);
  if (c.contains(c.M_prime, v)) return Rational(2);
  return Rational(1);
}

}  // namespace detail

inline ScanResult scan_one(const FamilyScanData& d, const Rational& t, const RankOptions& base) {
  const FamilyRecord& rec = *d.family;
  ScanResult out;
  out.family = rec.name;
  out.t = t;
  try {
    CurveQ Et = specialize(rec.E, t);
    std::vector<PointQ> pE, pEd;
    for (const auto* list : {&rec.points_E, &rec.extra_points_E})
      for (const auto& P : *list)
        if (auto Q = detail::specialize_point(P, t)) pE.push_back(*Q);
    for (const auto& P : rec.points_E_dual)
      if (auto Q = detail::specialize_point(P, t)) pEd.push_back(*Q);

    RankOptions opts = base;
    opts.descent.prime_hints = detail::prime_hints(d, t);
    RankResult rr = rank_bounds(Et, pE, pEd, opts);
    out.rank = rr.status;
    out.selmer_phi_hat = rr.selmer_dim_phi_hat();
    out.selmer_phi = rr.selmer_dim_phi();
    out.witnesses_E = rr.witnesses_E;
    out.witnesses_E_dual = rr.witnesses_E_dual;
    out.j = j_invariant(Et);
    out.checks.cassels_ratio = rr.cassels.status;

    const CurveQ& M = rr.phi.model;
    for (const auto& p : rr.phi.primes)
      if (!tate_local(M, p).kodaira.is_good()) out.bad_primes.push_back(p);

    // Tamagawa pattern and local pattern.
    bool pattern = true;
    std::set<Integer> used;
    auto visit = [&](const Place& v, const Integer& n) {
      // Exactly one odd prime divides n to the first power, not shared with another place.
      int simple = 0;
      for (const auto& [p, e] : factor(n).factors)
        if (p != 2 && e == 1) {
          ++simple;
          if (!used.insert(p).second) pattern = false;
        }
      if (simple != 1) pattern = false;
      for (const auto& [p, e] : detail::outside_s0(d, n))
        if (e == 1 && local_image_order(M, p) != detail::expected_ratio(d.cls, v))
          out.checks.tamagawa_pattern = CheckStatus::fail;
    };
    for (const auto& e : d.bad_values) visit(Place::linear(e), (t - e).num());
    if (d.infinity_bad) visit(Place::infinity(), t.den());
    out.local_pattern = pattern;

    if (d.infinity_bad) {
      out.checks.good_at_infinity.reset();
    } else {
      out.checks.good_at_infinity = CheckStatus::pass;
      for (const auto& [p, e] : detail::outside_s0(d, t.den()))
        if (std::binary_search(out.bad_primes.begin(), out.bad_primes.end(), p))
          out.checks.good_at_infinity = CheckStatus::fail;
    }
  } catch (const error& e) {
    out.skipped = true;
    out.skip_reason = e.what();
  }
  return out;
}

/// Specializations of the family at every t up to the height bound, in
/// (height, value) order. Work is sharded round-robin over `jobs` threads.
inline std::vector<ScanResult> run_scan(const FamilyRecord& rec, const ScanOptions& opts) {
  if (opts.jobs < 1) throw domain_error("jobs must be positive");
  FamilyScanData d = prepare_family(rec);
  std::vector<Rational> ts = scan_parameters(d, opts.height_bound);
  std::vector<ScanResult> out(ts.size());
  auto work = [&](int w) {
    for (std::size_t i = w; i < ts.size(); i += opts.jobs) out[i] = scan_one(d, ts[i], opts.rank);
  };
  if (opts.jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < opts.jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  return out;
}

inline std::vector<ScanResult> run_scan(const std::string& family, long height_bound, int jobs) {
  ScanOptions o;
  o.height_bound = height_bound;
  o.jobs = jobs;
  return run_scan(find_family(family), o);
}

// ---------------------------------------------------------------------------
// JSON lines

inline std::string rational_str(const Rational& q) { return q.num().get_str() + "/" + q.den().get_str(); }

inline nlohmann::ordered_json to_json(const RankStatus& r) {
  if (r.determined()) return {{"kind", "determined"}, {"value", r.lo}};
  return {{"kind", "bounded"}, {"lo", r.lo}, {"hi", r.hi}};
}

inline nlohmann::ordered_json to_json(const SquareClassQ& c) {
  nlohmann::ordered_json s = nlohmann::ordered_json::array();
  for (const auto& p : c.support) s.push_back(p.get_str());
  return {{"sign", c.sign}, {"support", s}};
}

inline nlohmann::ordered_json to_json(const PointQ& P) {
  if (P.infinity) return "inf";
  return nlohmann::ordered_json::array({rational_str(P.x), rational_str(P.y)});
}

inline nlohmann::ordered_json witnesses_json(const std::vector<ImageWitness>& ws) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& w : ws) a.push_back({{"class", w.cls.representative().get_str()}, {"point", to_json(w.point)}});
  return a;
}

inline nlohmann::ordered_json to_json(const ScanResult& r) {
  nlohmann::ordered_json j;
  j["family"] = r.family;
  j["t"] = rational_str(r.t);
  if (r.skipped) {
    j["status"] = "skipped";
    j["reason"] = r.skip_reason;
    return j;
  }
  j["status"] = "ok";
  nlohmann::ordered_json bp = nlohmann::ordered_json::array();
  for (const auto& p : r.bad_primes) bp.push_back(p.get_str());
  j["bad_primes"] = bp;
  j["selmer_dims"] = {r.selmer_phi_hat, r.selmer_phi};
  j["rank"] = to_json(r.rank);
  j["j"] = rational_str(r.j);
  nlohmann::ordered_json c;
  c["cassels_ratio"] = to_string(r.checks.cassels_ratio);
  c["tamagawa_pattern"] = to_string(r.checks.tamagawa_pattern);
  c["good_at_infinity"] = r.checks.good_at_infinity ? to_string(*r.checks.good_at_infinity) : "not_applicable";
  j["checks"] = c;
  j["local_pattern"] = r.local_pattern;
  j["witnesses"] = {{"E", witnesses_json(r.witnesses_E)}, {"E_dual", witnesses_json(r.witnesses_E_dual)}};
  return j;
}

struct ScanSummary {
  std::size_t records = 0, determined = 0, bounded = 0, skipped = 0;
  std::size_t distinct_j_at_target = 0;
};

inline ScanSummary summarize(const std::vector<ScanResult>& results, int target_rank) {
  ScanSummary s;
  std::set<Rational> js;
  for (const auto& r : results) {
    ++s.records;
    if (r.skipped) {
      ++s.skipped;
      continue;
    }
    if (r.rank.determined()) {
      ++s.determined;
      if (r.rank.lo == target_rank) js.insert(r.j);
    } else {
      ++s.bounded;
    }
  }
  s.distinct_j_at_target = js.size();
  return s;
}

inline nlohmann::ordered_json to_json(const ScanSummary& s) {
  return {{"records", s.records},       {"determined", s.determined},
          {"bounded", s.bounded},       {"skipped", s.skipped},
          {"distinct_j_at_target", s.distinct_j_at_target}};
}

namespace detail {

/// Drops a trailing partial line left by an interrupted write.
inline void truncate_partial_line(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return;
  auto size = std::filesystem::file_size(path);
  if (size == 0) return;
  std::ifstream in(path, std::ios::binary);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.back() == '\n') return;
  auto pos = data.rfind('\n');
  std::filesystem::resize_file(path, pos == std::string::npos ? 0 : pos + 1);
}

}  // namespace detail

/// Appends one JSON line per result, after truncating any partial last line.
inline ScanSummary emit_report(const std::vector<ScanResult>& results, const std::filesystem::path& out,
                               int target_rank) {
  if (results.empty()) throw domain_error("emit_report needs at least one result");
  detail::truncate_partial_line(out);
  std::ofstream f(out, std::ios::app | std::ios::binary);
  if (!f) throw error("cannot open " + out.string() + " for writing");
  for (const auto& r : results) f << to_json(r).dump() << '\n';
  f.flush();
  if (!f) throw error("write to " + out.string() + " failed");
  return summarize(results, target_rank);
}

}  // namespace twoisog
