#include "test_util.hpp"

using namespace ruij;
using namespace testutil;

TEST(JsonIo, Scalars) {
  EXPECT_EQ(scalar_to_json(R(-3, 7)).get<std::string>(), "-3/7");
  EXPECT_EQ(scalar_from_json<Rational>(Json("5/10")), R(1, 2));
  EXPECT_EQ(scalar_from_json<Complex>(Json::array({0.5, -1.0})), Complex(0.5, -1.0));
  EXPECT_THROW(scalar_from_json<Rational>(Json(0.5)), ConfigError);
}

TEST(JsonIo, LaurentRoundTrip) {
  std::mt19937_64 gen(2);
  const auto f = random_laurent(gen, 3, 6, 2);
  EXPECT_EQ(laurent_from_json<Rational>(Json::parse(to_json(f).dump())), f);
}

TEST(JsonIo, ZSeriesRoundTrip) {
  const auto s = b_coefficient_series(3, 0b010, R(1, 2), 5, 1);
  const auto back = zseries_from_json<Rational>(Json::parse(to_json(s).dump()), 3, 5, 1);
  EXPECT_EQ(back.p_cutoff(), 1);
  EXPECT_EQ(back.height_cutoff(), 5);
  EXPECT_TRUE((back - s).terms().empty());
}

TEST(JsonIo, EllipticRoundTrip) {
  RuijsenaarsOperators<Rational> ops(context(2));
  const auto em = elliptic_macdonald(ops, {1, 0}, 2);
  const auto text = to_json(em).dump();
  const auto back = elliptic_from_json<Rational>(Json::parse(text));
  EXPECT_EQ(back.layers, em.layers);
  EXPECT_EQ(back.eigenvalues, em.eigenvalues);
  EXPECT_EQ(back.gamma, em.gamma);
  EXPECT_EQ(back.c, em.c);
  EXPECT_EQ(to_json(back).dump(), text);
  EXPECT_TRUE(check_eigen_equations(ops, back).ok);
}

TEST(JsonIo, AsymptoticRoundTrip) {
  auto ctx = context(2);
  ctx.s = std::vector<Rational>{R(1, 3), R(2, 7)};
  const auto fr = stationary_ruijsenaars(ctx, 6);
  const auto text = to_json(fr).dump();
  const auto back = asymptotic_from_json<Rational>(Json::parse(text));
  EXPECT_EQ(back.eps, fr.eps);
  EXPECT_EQ(back.s, fr.s);
  EXPECT_EQ(to_json(back).dump(), text);
  EXPECT_TRUE(check_joint_eigen(back).ok);
}

TEST(JsonIo, ComplexArtifact) {
  RuijsenaarsOperators<Complex> ops(OperatorContext<Complex>(2, Complex(0.3, 0.1), Complex(0.5)));
  const auto em = elliptic_macdonald(ops, {1, 0}, 1);
  const auto j = to_json(em);
  EXPECT_EQ(j["field"], "complex");
  const auto back = elliptic_from_json<Complex>(Json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(JsonIo, RejectsWrongFormat) {
  RuijsenaarsOperators<Rational> ops(context(2));
  auto j = to_json(elliptic_macdonald(ops, {0, 0}, 1));
  j["format"] = 99;
  EXPECT_THROW(elliptic_from_json<Rational>(j), ConfigError);
}

TEST(JsonIo, SymbolTableLayout) {
  const auto tab = build_symbol_table(2, R(3, 10), R(1, 2), 2);
  const auto j = to_json(tab);
  EXPECT_EQ(j["kind"], "symbols");
  bool found = false;
  for (const auto& e : j["entries"])
    if (e["I"] == Json::array({1}) && e["beta"] == Json::array({0, 1})) {
      EXPECT_EQ(e["coeff"], "-1/1");
      found = true;
    }
  EXPECT_TRUE(found);
}
