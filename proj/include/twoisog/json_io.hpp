#pragma once

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <variant>

#include "twoisog/scan.hpp"

namespace twoisog {

// Command-line input: a curve over Q or Q(T), and point lists, as JSON.

namespace detail {

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.get<long>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw domain_error("expected a rational number, got " + j.dump());
}

inline RationalPolynomial poly_or_scalar_from_json(const nlohmann::json& j) {
  if (!j.is_array()) return RationalPolynomial(rational_from_json(j));
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return RationalPolynomial(c);
}

}  // namespace detail

/// The argument is either inline JSON or a path to a JSON file.
inline nlohmann::json load_json_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  try {
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return nlohmann::json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw domain_error("cannot read '" + arg + "'");
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw domain_error(std::string("malformed JSON: ") + e.what());
  }
}

using AnyCurve = std::variant<CurveQ, CurveQT>;

/// {"domain": "Q" | "QT", "a": ..., "b": ...}. Without "domain", polynomial
/// coefficients of positive degree select Q(T).
inline AnyCurve curve_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw domain_error("curve JSON needs \"a\" and \"b\"");
  RationalPolynomial a = detail::poly_or_scalar_from_json(j["a"]);
  RationalPolynomial b = detail::poly_or_scalar_from_json(j["b"]);
  std::string domain = j.value("domain", "");
  if (domain.empty()) domain = a.degree() > 0 || b.degree() > 0 ? "QT" : "Q";
  if (domain == "QT") return make_curve_qt(a, b);
  if (domain != "Q") throw domain_error("unknown domain '" + domain + "'");
  if (a.degree() > 0 || b.degree() > 0) throw domain_error("domain Q needs constant coefficients");
  return CurveQ(a.coeff(0), b.coeff(0));
}

inline CurveQ curve_q_from_json(const nlohmann::json& j) {
  AnyCurve c = curve_from_json(j);
  if (!std::holds_alternative<CurveQ>(c)) throw domain_error("this command needs a curve over Q");
  return std::get<CurveQ>(c);
}

struct PointLists {
  std::vector<PointQ> E, E_dual;
};

inline std::vector<PointQ> points_q_from_json(const nlohmann::json& j) {
  std::vector<PointQ> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw domain_error("a point is [x, y], got " + p.dump());
    out.push_back(PointQ::finite(detail::rational_from_json(p[0]), detail::rational_from_json(p[1])));
  }
  return out;
}

/// Either a list of points on E or {"E": [...], "E_dual": [...]}.
inline PointLists point_lists_from_json(const nlohmann::json& j) {
  PointLists out;
  if (j.is_array()) {
    out.E = points_q_from_json(j);
  } else if (j.is_object()) {
    if (j.contains("E")) out.E = points_q_from_json(j["E"]);
    if (j.contains("E_dual")) out.E_dual = points_q_from_json(j["E_dual"]);
  } else {
    throw domain_error("points JSON must be a list or an object");
  }
  return out;
}

// Output.

inline nlohmann::ordered_json to_json(const LocalReduction& r) {
  return {{"kodaira", r.kodaira.str()},
          {"reduction", to_string(r.reduction)},
          {"tamagawa", r.tamagawa},
          {"min_disc_valuation", r.min_disc_valuation},
          {"conductor_exponent", r.conductor_exponent}};
}

inline nlohmann::ordered_json to_json(const SelmerGroup& s) {
  nlohmann::ordered_json basis = nlohmann::ordered_json::array();
  for (const auto& c : s.basis) basis.push_back(to_json(c));
  return {{"dim", s.dim()}, {"basis", basis}};
}

inline nlohmann::ordered_json to_json(const CasselsCheck& c) {
  nlohmann::ordered_json j{{"status", to_string(c.status)}, {"lhs", c.lhs}, {"rhs", c.rhs}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline nlohmann::ordered_json selmer_json(const CurveQ& E, const DescentData& phi, const DescentData& phi_hat,
                                          const CasselsCheck& cassels) {
  nlohmann::ordered_json primes = nlohmann::ordered_json::array();
  for (const auto& p : phi.primes) primes.push_back(p.get_str());
  return {{"a", rational_str(E.a())},
          {"b", rational_str(E.b())},
          {"primes", primes},
          {"phi", to_json(phi.selmer)},
          {"phi_hat", to_json(phi_hat.selmer)},
          {"cassels_ratio", to_json(cassels)}};
}

inline nlohmann::ordered_json to_json(const CurveQ& E, const RankResult& r) {
  nlohmann::ordered_json j = selmer_json(E, r.phi, r.phi_hat, r.cassels);
  j["rank"] = to_json(r.status);
  j["selmer_dims"] = {r.selmer_dim_phi_hat(), r.selmer_dim_phi()};
  j["witnesses"] = {{"E", witnesses_json(r.witnesses_E)}, {"E_dual", witnesses_json(r.witnesses_E_dual)}};
  return j;
}

}  // namespace twoisog
