#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <random>

#include "support.hpp"
#include "twoisog/localdata.hpp"

using namespace twoisog;
using namespace testsupport;

namespace {

nlohmann::json load_fixture(const std::string& name) {
  std::ifstream in(std::string(TWOISOG_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return nlohmann::json::parse(in);
}

CurveQT family(int i) {
  auto m = printed_models()[i];
  return make_curve_qt(m.a, m.b);
}

void expect_invariants(const LocalReduction& lr, bool function_field) {
  const auto& k = lr.kodaira;
  EXPECT_EQ(lr.reduction == ReductionType::good, k.is_good());
  EXPECT_EQ(k.is_good(), lr.min_disc_valuation == 0);
  if (k.is_multiplicative()) {
    EXPECT_EQ(lr.conductor_exponent, 1);
    if (lr.reduction == ReductionType::split_multiplicative) {
      EXPECT_EQ(lr.tamagawa, k.n);
    } else {
      EXPECT_EQ(lr.reduction, ReductionType::nonsplit_multiplicative);
      EXPECT_TRUE(lr.tamagawa == 1 || lr.tamagawa == 2);
    }
  }
  if (lr.reduction == ReductionType::additive) {
    EXPECT_GE(lr.conductor_exponent, 2);
    if (function_field) {
      EXPECT_EQ(lr.conductor_exponent, 2);
    }
  }
  if (function_field) {
    if (k.tag == KodairaSymbol::Tag::I) {
      EXPECT_EQ(lr.min_disc_valuation, k.n);
    }
    if (k.tag == KodairaSymbol::Tag::I_star) {
      EXPECT_EQ(lr.min_disc_valuation, k.n + 6);
    }
  }
}

bool in_excluded_set(const CurveQT& E, const Integer& p) {
  auto divides = [&](const Rational& x) {
    return !x.is_zero() && (x.num() % p == 0 || x.den() % p == 0);
  };
  for (const auto& f : {E.a().num(), E.b().num(), E.discriminant().num()})
    for (const auto& c : f.coeffs())
      if (divides(c)) return true;
  auto roots = rational_roots(E.discriminant().num());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (divides(roots[i].first)) return true;
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (divides(roots[i].first - roots[j].first)) return true;
  }
  return false;
}

}  // namespace

TEST(Place, ParseAndPrint) {
  EXPECT_EQ(Place::parse("7"), Place::prime(7));
  EXPECT_EQ(Place::parse("inf"), Place::infinity());
  EXPECT_EQ(Place::parse("T-25"), Place::linear(25));
  EXPECT_EQ(Place::parse("T+3161/280"), Place::linear(q("-3161/280")));
  EXPECT_EQ(Place::linear(-16).str(), "T+16");
  EXPECT_EQ(Place::linear(0).str(), "T");
  EXPECT_THROW(Place::parse("9"), domain_error);
  EXPECT_THROW(Place::parse("Tx"), domain_error);
}

TEST(TateLocal, MatchesPariFixtures) {
  auto fx = load_fixture("tate_oracle.json");
  int places = 0;
  for (const auto& c : fx["cases"]) {
    Weierstrass<Integer> A;
    for (int i = 0; i < 5; ++i) A[i] = Integer(c["ainvs"][i].get<std::string>());
    bool short_form = A[0] == 0 && A[2] == 0 && A[4] == 0;
    for (const auto& pl : c["places"]) {
      Integer p(pl["p"].get<std::string>());
      LocalReduction lr = tate_algorithm(PadicDvr(p), A);
      std::string ctx = c["tag"].get<std::string>() + " p=" + p.get_str();
      EXPECT_EQ(lr.kodaira.str(), pl["kodaira"].get<std::string>()) << ctx;
      EXPECT_EQ(lr.tamagawa, pl["tamagawa"].get<int>()) << ctx;
      EXPECT_EQ(lr.min_disc_valuation, pl["min_disc_valuation"].get<int>()) << ctx;
      EXPECT_EQ(lr.conductor_exponent, pl["conductor_exponent"].get<int>()) << ctx;
      expect_invariants(lr, false);
      if (short_form) {
        LocalReduction via = tate_local(CurveQ(Rational(A[1]), Rational(A[3])), p);
        EXPECT_EQ(via.kodaira, lr.kodaira) << ctx;
      }
      ++places;
    }
  }
  EXPECT_GT(places, 1500);
}

TEST(TateLocal, FunctionFieldExamples) {
  EXPECT_EQ(tate_local(family(0), Place::infinity()).kodaira.str(), "III*");
  auto r2 = tate_local(family(2), Place::infinity());
  EXPECT_EQ(r2.kodaira.str(), "I0*");
  EXPECT_EQ(r2.tamagawa, 4);
  EXPECT_EQ(tate_local(dual_model(family(2)), Place::infinity()).tamagawa, 4);
  EXPECT_EQ(tate_local(dual_model(family(1)), Place::infinity()).kodaira.str(), "I3");
  for (int e : {-25, 25}) EXPECT_EQ(tate_local(family(4), Place::linear(e)).kodaira.str(), "III");
  EXPECT_EQ(tate_local(family(0), Place::linear(1)).kodaira.str(), "I1");
  EXPECT_THROW(tate_local(family(0), Place::prime(3)), domain_error);
  EXPECT_THROW(tate_local(CurveQ(1, 1), Place::infinity()), domain_error);
}

TEST(TateLocal, FunctionFieldInvariantsAndIsogenyPairs) {
  for (int i = 0; i < 5; ++i) {
    CurveQT E = family(i), Ed = dual_model(E);
    for (const auto& v : bad_places(E)) {
      LocalReduction x = tate_local(E, v), y = tate_local(Ed, v);
      expect_invariants(x, true);
      expect_invariants(y, true);
      EXPECT_EQ(x.kodaira.is_multiplicative(), y.kodaira.is_multiplicative()) << v.str();
      if (x.kodaira.is_multiplicative()) {
        int m = x.kodaira.n, n = y.kodaira.n;
        EXPECT_TRUE(m == 2 * n || n == 2 * m || m == n) << v.str();
      }
    }
  }
}

TEST(TateLocal, SpecializationAgreesWithFunctionFieldPlace) {
  // With v_p(t - e) = 1 at a prime outside the excluded set, E_t at p has the
  // Kodaira symbol of E at T - e; with v_p(1/t) = 1 it has the symbol at infinity.
  const std::vector<Integer> primes = {Integer(10007), Integer(100003), Integer(1000003)};
  int compared = 0;
  for (int i = 0; i < 5; ++i) {
    CurveQT E = family(i);
    for (const auto& v : bad_places(E)) {
      for (const auto& p : primes) {
        if (in_excluded_set(E, p)) continue;
        Rational t = v.kind == Place::Kind::ft_infinity ? Rational(Integer(1), p) : v.e + Rational(p);
        CurveQ Et = specialize(E, t);
        EXPECT_EQ(tate_local(Et, p).kodaira, tate_local(E, v).kodaira) << i << " " << v.str();
        EXPECT_EQ(tate_local(dual_model(Et), p).kodaira, tate_local(dual_model(E), v).kodaira);
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 60);
}

TEST(TateLocal, IsogenyConstraintOnRandomSpecializations) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 20);
  int checked = 0;
  while (checked < 200) {
    int i = static_cast<int>(rng() % 5);
    Rational t(Integer(num(rng)), Integer(den(rng)));
    CurveQT E = family(i);
    if (E.discriminant()(t).is_zero()) continue;
    auto [M, u] = integral_model(specialize(E, t));
    CurveQ Md = dual_model(M);
    for (const auto& [p, e] : factor(M.discriminant()).factors) {
      LocalReduction x = tate_local(M, p), y = tate_local(Md, p);
      expect_invariants(x, false);
      ASSERT_EQ(x.kodaira.is_multiplicative(), y.kodaira.is_multiplicative());
      if (x.kodaira.is_multiplicative()) {
        int m = x.kodaira.n, n = y.kodaira.n;
        EXPECT_TRUE(m == 2 * n || n == 2 * m || m == n);
      }
    }
    ++checked;
  }
}

TEST(IntegralModel, ScalesCoefficients) {
  auto [M, u] = integral_model(CurveQ(q("1/2"), q("3/16")));
  EXPECT_TRUE(M.a().is_integer());
  EXPECT_TRUE(M.b().is_integer());
  EXPECT_EQ(M.a(), q("1/2") * u * u);
  EXPECT_EQ(M.b(), q("3/16") * u * u * u * u);
  auto [N, w] = integral_model(CurveQ(Rational(4 * 9), Rational(16 * 81 * 5)));
  EXPECT_EQ(N.a(), Rational(1));
  EXPECT_EQ(N.b(), Rational(5));
}

TEST(ConductorDegree, Examples) {
  EXPECT_EQ(conductor_degree(family(4)), 8);
  EXPECT_EQ(conductor_degree(family(0)), 4);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(conductor_degree(family(i)), 4 + i);
  EXPECT_THROW(conductor_degree(make_curve_qt(C(0), C(1))), domain_error);
  EXPECT_THROW(conductor_degree(make_curve_qt(C(0), P({1, 0, 1}))), unsupported_error);
}

TEST(LocalImageOrder, Examples) {
  CurveQ E(0, 1);
  EXPECT_EQ(local_image_order(E, 5), Rational(1));
  EXPECT_THROW(local_image_order(E, 2), domain_error);
  EXPECT_THROW(local_image_order(E, 9), domain_error);
  // Rank-4: 11 is an (I_2n, I_n) place, 39 an (I_n, I_2n) place, 25 additive.
  CurveQT E4 = family(4);
  Integer p(10007);
  EXPECT_EQ(local_image_order(specialize(E4, Rational(11) + Rational(p)), p), q("1/2"));
  EXPECT_EQ(local_image_order(specialize(E4, Rational(39) + Rational(p)), p), Rational(2));
  EXPECT_EQ(local_image_order(specialize(E4, Rational(25) + Rational(p)), p), Rational(1));
}
