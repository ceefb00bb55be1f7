#include "test_util.hpp"

using namespace ruij;
using namespace testutil;

TEST(Laurent, ProductExamples) {
  auto a = mono({1, 0}) - mono({0, 1});
  auto b = mono({1, 0}) + mono({0, 1});
  EXPECT_EQ(a * b, mono({2, 0}) - mono({0, 2}));
  EXPECT_EQ(a * LaurentPoly<Rational>::constant(2, 1), a);
  EXPECT_EQ(mono({1, -1}) * mono({-1, 1}), LaurentPoly<Rational>::constant(2, 1));
}

TEST(Laurent, ProductDimensionMismatch) {
  EXPECT_THROW(mono({1, 0}) * mono({1, 0, 0}), DimensionMismatch);
}

TEST(Laurent, ExactDivisionExamples) {
  auto d = mono({1, 0}) - mono({0, 1});
  EXPECT_EQ(laurent_exact_div(mono({2, 0}) - mono({0, 2}), d), mono({1, 0}) + mono({0, 1}));
  EXPECT_EQ(laurent_exact_div(d, d), LaurentPoly<Rational>::constant(2, 1));
  auto cube = mono({3, 0}) - mono({0, 3});
  auto quot = laurent_exact_div(cube, d);
  EXPECT_EQ(quot, mono({2, 0}) + mono({1, 1}) + mono({0, 2}));
  EXPECT_EQ(quot * d, cube);
  const auto delta = vandermonde<Rational>(3);
  EXPECT_EQ(laurent_exact_div(delta, delta), LaurentPoly<Rational>::constant(3, 1));
}

TEST(Laurent, NonExactDivisionThrows) {
  auto d = mono({1, 0}) - mono({0, 1});
  EXPECT_THROW(laurent_exact_div(mono({2, 0}) + mono({0, 2}), d), NonExactDivision);
  EXPECT_THROW(laurent_exact_div(d, LaurentPoly<Rational>(2)), DivisionByZero);
}

TEST(Laurent, RandomRingAxioms) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_laurent(gen, 3, 4, 2), b = random_laurent(gen, 3, 3, 2), c = random_laurent(gen, 3, 3, 2);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) {
      EXPECT_EQ(laurent_exact_div(a * b, b), a);
    }
  }
}

TEST(Laurent, TermOrderIndependence) {
  std::mt19937_64 gen(5);
  auto a = random_laurent(gen, 2, 6, 3);
  LaurentPoly<Rational> fwd(2), rev(2);
  for (const auto& [e, c] : a.terms()) fwd.add_term(e, c);
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) rev.add_term(it->first, it->second);
  EXPECT_EQ(fwd.terms(), rev.terms());
}

TEST(Laurent, QShiftExamples) {
  const Rational q = R(3, 10);
  EXPECT_EQ(q_shift(mono({1, -1}), 0b01, q), mono({1, -1}, q));
  EXPECT_EQ(q_shift(mono({1, 1}), 0b11, q), mono({1, 1}, q * q));
  EXPECT_EQ(q_shift(LaurentPoly<Rational>::constant(2, 7), 0b01, q), LaurentPoly<Rational>::constant(2, 7));
  std::mt19937_64 gen(3);
  auto f = random_laurent(gen, 3, 5, 3);
  EXPECT_EQ(q_shift(q_shift(f, 0b101, q, 1), 0b101, q, -1), f);
}

TEST(Laurent, Pochhammer) {
  const Rational q = R(3, 10), t = R(1, 2);
  EXPECT_EQ(pochhammer(t, q, 0), 1);
  EXPECT_EQ(pochhammer(t, q, 1), 1 - t);
  EXPECT_EQ(pochhammer(t, q, 2), (1 - t) * (1 - q * t));
}

TEST(Laurent, Weights) {
  EXPECT_EQ(rho(3), Exponent({2, 1, 0}));
  EXPECT_EQ(phi(3), Exponent({1, 0, -1}));
  EXPECT_EQ(reversal(Exponent({1, 2, 3})), Exponent({3, 2, 1}));
}

TEST(Field, ParseRational) {
  EXPECT_EQ(parse_rational("3/10"), R(3, 10));
  EXPECT_EQ(parse_rational("0.3"), R(3, 10));
  EXPECT_EQ(parse_rational("-2"), R(-2));
  EXPECT_EQ(parse_rational("-1.25e-2"), R(-1, 80));
  EXPECT_EQ(parse_rational("6/4"), R(3, 2));
  EXPECT_THROW(parse_rational("abc"), ConfigError);
  EXPECT_THROW(parse_rational("1/0"), ConfigError);
  EXPECT_EQ(rational_to_string(R(-3, 6)), "-1/2");
  EXPECT_EQ(rational_to_string(R(4)), "4/1");
}

TEST(Field, DivisionByZeroIsReported) {
  EXPECT_THROW(inverse(Rational(0)), DivisionByZero);
  EXPECT_THROW(ipow(Rational(0), -1), DivisionByZero);
  EXPECT_EQ(ipow(R(2), -3), R(1, 8));
}

TEST(Laurent, EvaluateNumeric) {
  auto f = mono({2, -1}, R(3)) + mono({0, 0}, R(-1));
  const std::vector<Complex> x{{0.5, 0.1}, {-0.3, 0.7}};
  const Complex direct = 3.0 * x[0] * x[0] / x[1] - 1.0;
  EXPECT_NEAR(std::abs(evaluate(f, x) - direct), 0.0, 1e-14);
}

TEST(Field, ConversionRoundsToNearest) {
  EXPECT_EQ(to_complex(R(1, 10)).real(), 0.1);
  EXPECT_EQ(to_complex(R(3, 10)).real(), 0.3);
  EXPECT_EQ(to_complex(R(-1, 3)).real(), -1.0 / 3.0);
  EXPECT_EQ(to_complex(R(2, 7)).real(), 2.0 / 7.0);
  EXPECT_EQ(from_rational<Complex>(R(1, 20)), Complex(0.05));
}
