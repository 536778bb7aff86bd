#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace twoisog;
using namespace testsupport;

namespace {

Rational random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

RationalPolynomial random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Rational> c;
  for (int i = deg(rng); i >= 0; --i) c.push_back(random_rational(rng, 50));
  return RationalPolynomial(c);
}

RationalPolynomial random_split(std::mt19937_64& rng, int factors) {
  RationalPolynomial f = C(random_rational(rng, 30));
  while (f.is_zero()) f = C(random_rational(rng, 30));
  for (int i = 0; i < factors; ++i) f *= lin(random_rational(rng, 12));
  return f;
}

}  // namespace

TEST(EvalAt, Examples) {
  RationalPolynomial d0 = C(-64) * T() * T() * lin(1);
  EXPECT_EQ(eval_at(d0, 1), Rational(0));
  EXPECT_EQ(eval_at(RationalPolynomial(), q("7/3")), Rational(0));
  EXPECT_EQ(eval_at(sq_minus(11), 39), Rational(1400));
  // Rank-4 factor at 39 by direct product, not Horner.
  EXPECT_EQ(Rational(39 - 11) * Rational(39 + 11), Rational(1400));
}

TEST(EvalAt, RingHomomorphism) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    RationalPolynomial f = random_poly(rng, 6), g = random_poly(rng, 6);
    Rational t = random_rational(rng, 40);
    EXPECT_EQ((f + g)(t), f(t) + g(t));
    EXPECT_EQ((f * g)(t), f(t) * g(t));
    EXPECT_EQ((f - g)(t), f(t) - g(t));
  }
}

TEST(PolynomialArithmetic, DivmodAndShift) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    RationalPolynomial f = random_poly(rng, 7), g = random_poly(rng, 4);
    if (g.is_zero()) continue;
    auto [quo, rem] = divmod(f, g);
    EXPECT_EQ(quo * g + rem, f);
    EXPECT_LT(rem.degree(), g.degree());
    Rational c = random_rational(rng, 10), t = random_rational(rng, 10);
    EXPECT_EQ(f.shift(c)(t), f(t + c));
  }
  EXPECT_EQ(P({1, 2, 3}).reversed(4), P({0, 0, 3, 2, 1}));
  EXPECT_EQ(P({0, 0, 5}).low_degree(), 2);
  EXPECT_EQ(RationalPolynomial().degree(), -1);
  EXPECT_THROW(P({1, 1}) / RationalPolynomial(), domain_error);
}

TEST(RationalRoots, Examples) {
  auto r0 = rational_roots(C(-64) * T() * T() * lin(1));
  ASSERT_EQ(r0.size(), 2u);
  EXPECT_EQ(r0[0], std::make_pair(Rational(0), 2));
  EXPECT_EQ(r0[1], std::make_pair(Rational(1), 1));

  auto fams = printed_families();
  auto r4 = rational_roots(fams[4].disc);
  std::vector<std::pair<Rational, int>> want = {{-39, 1}, {-25, 3}, {-11, 2},
                                                {11, 2},  {25, 3},  {39, 1}};
  EXPECT_EQ(r4, want);
  EXPECT_TRUE(rational_roots(P({1, 0, 1})).empty());
  EXPECT_THROW(rational_roots(RationalPolynomial()), domain_error);
}

TEST(RationalRoots, FractionalRoots) {
  auto r3 = rational_roots(printed_families()[3].disc);
  ASSERT_EQ(r3.size(), 6u);
  EXPECT_EQ(r3.front(), std::make_pair(q("-3161/280"), 1));
  EXPECT_EQ(r3.back(), std::make_pair(q("3161/280"), 1));
}

TEST(RationalRoots, RandomSplitPolynomials) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    RationalPolynomial f = random_split(rng, 5) * P({2, 0, 1});
    RationalPolynomial g = C(f.leading()) * P({2, 0, 1});
    for (const auto& [e, m] : rational_roots(f)) {
      EXPECT_EQ(f(e), Rational(0));
      g *= pow(lin(e), m);
    }
    EXPECT_EQ(g, f);
  }
}

TEST(SplitsLinearly, Examples) {
  EXPECT_TRUE(splits_linearly(printed_families()[3].disc));
  EXPECT_FALSE(splits_linearly(P({1, 0, 1})));
  EXPECT_TRUE(splits_linearly(C(5)));
}

TEST(ModelDiscriminant, Examples) {
  EXPECT_EQ(model_discriminant(C(2), T()), C(-64) * T() * T() * lin(1));
  EXPECT_EQ(model_discriminant(C(10) * lin(-16), C(9) * T() * lin(-16)),
            C(Rational(1024 * 81)) * T() * T() * pow(lin(-16), 3) * lin(-25));
  EXPECT_EQ(model_discriminant(C(0), C(-1)), C(64));
  EXPECT_THROW(model_discriminant(T(), RationalPolynomial()), singular_model_error);
  EXPECT_THROW(model_discriminant(C(2) * T(), T() * T()), singular_model_error);
}

TEST(ModelDiscriminant, MatchesPrintedForAllFamilies) {
  for (const auto& f : printed_families()) {
    EXPECT_EQ(model_discriminant(f.a, f.b), f.disc) << f.name;
    EXPECT_EQ(dual_model_discriminant(f.a, f.b), f.dual_disc) << f.name;
  }
}

TEST(FtSquareClass, Examples) {
  auto c = ft_square_class(C(14) * lin(11) * lin(-11));
  EXPECT_EQ(c.constant_class, square_class(Rational(14)));
  EXPECT_EQ(c.linear_support, (std::vector<Rational>{-11, 11}));
  EXPECT_TRUE(ft_square_class(C(9) * pow(lin(2), 2)).is_identity());
  auto b2 = ft_square_class(C(9) * T() * lin(-16));
  EXPECT_TRUE(b2.constant_class.is_identity());
  EXPECT_EQ(b2.linear_support, (std::vector<Rational>{-16, 0}));
  EXPECT_THROW(ft_square_class(P({1, 0, 1}) * T()), unsupported_error);
}

TEST(FtSquareClass, SquareInvarianceAndMultiplicativity) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    RationalPolynomial f = random_split(rng, 4), g = random_split(rng, 3);
    EXPECT_EQ(ft_square_class(f * g * g), ft_square_class(f));
    EXPECT_EQ(ft_square_class(f * g), ft_square_class(f) * ft_square_class(g));
    EXPECT_EQ(ft_square_class(ft_square_class(f).representative()), ft_square_class(f));
  }
}
