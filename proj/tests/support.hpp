#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "twoisog/poly.hpp"

namespace testsupport {

using twoisog::Integer;
using twoisog::Rational;
using twoisog::RationalPolynomial;

inline Rational q(const std::string& s) { return Rational::parse(s); }

/// Polynomial from integer coefficients, constant term first.
inline RationalPolynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RationalPolynomial(v);
}

inline RationalPolynomial T() { return RationalPolynomial::T(); }
inline RationalPolynomial lin(const Rational& e) { return RationalPolynomial::linear(e); }
inline RationalPolynomial C(const Rational& c) { return RationalPolynomial(c); }
inline RationalPolynomial C(long c) { return RationalPolynomial(Rational(c)); }
inline RationalPolynomial C(const std::string& c) { return RationalPolynomial(q(c)); }

/// T^2 - e^2.
inline RationalPolynomial sq_minus(const Rational& e) { return T() * T() - C(e * e); }

}  // namespace testsupport

namespace testsupport {

struct PrintedModel {
  const char* name;
  RationalPolynomial a, b;
};

/// The five family models as printed, typed in independently of data/families.json.
inline std::vector<PrintedModel> printed_models() {
  RationalPolynomial t = T();
  return {
      {"rank0", C(2), t},
      {"rank1", t * lin(3), t},
      {"rank2", C(10) * lin(-16), C(9) * t * lin(-16)},
      {"rank3", P({9725, 0, -98}), P({1162084, 0, -300125, 0, 2401})},
      {"rank4", C(-70) * sq_minus(25), C(16 * 49) * sq_minus(11) * sq_minus(25)},
  };
}

}  // namespace testsupport

namespace testsupport {

struct FamilyCoefficients {
  const char* name;
  RationalPolynomial a, b, disc, dual_disc;
};

// Models and printed discriminants, transcribed independently of data/families.json.
inline std::vector<FamilyCoefficients> printed_families() {
  using twoisog::pow;
  RationalPolynomial t = T();
  std::vector<FamilyCoefficients> out;
  out.push_back({"rank0", C(2), t, C(-64) * t * t * lin(1), C(4096) * t * pow(lin(1), 2)});
  out.push_back({"rank1", t * lin(3), t, C(16) * pow(t, 3) * pow(lin(1), 2) * lin(4),
                 C(256) * pow(t, 3) * pow(lin(1), 4) * pow(lin(4), 2)});
  out.push_back({"rank2", C(10) * lin(-16), C(9) * t * lin(-16),
                 C(Rational(1024 * 81)) * t * t * pow(lin(-16), 3) * lin(-25),
                 C(Rational((1L << 20) * 9)) * t * pow(lin(-16), 3) * pow(lin(-25), 2)});
  {
    Rational e = q("3161/280");
    RationalPolynomial A = P({9725, 0, -98});
    RationalPolynomial B = P({1162084, 0, -300125, 0, 2401});
    Integer k = Integer(-1024) * 9 * 25 * pow(Integer(7), 10);
    Integer kd = Integer(1L << 20) * 81 * 625 * pow(Integer(7), 8);
    out.push_back({"rank3", A, B,
                   C(Rational(k)) * pow(sq_minus(2), 2) * pow(sq_minus(11), 2) * sq_minus(e),
                   C(Rational(kd)) * sq_minus(2) * sq_minus(11) * pow(sq_minus(e), 2)});
  }
  {
    RationalPolynomial A = C(-70) * sq_minus(25);
    RationalPolynomial B = C(16 * 49) * sq_minus(11) * sq_minus(25);
    Integer k = Integer(1L << 14) * 9 * pow(Integer(7), 6);
    Integer kd = Integer(1L << 16) * 81 * pow(Integer(7), 6);
    out.push_back({"rank4", A, B,
                   C(Rational(k)) * pow(sq_minus(11), 2) * pow(sq_minus(25), 3) * sq_minus(39),
                   C(Rational(kd)) * sq_minus(11) * pow(sq_minus(25), 3) * pow(sq_minus(39), 2)});
  }
  return out;
}

}  // namespace testsupport
