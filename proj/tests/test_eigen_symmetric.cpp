#include "oracles/macdonald_gram.hpp"
#include "test_util.hpp"

using namespace ruij;
using namespace testutil;

namespace {

// Pads a partition with zeros to length n, or returns nullopt when it is too long.
std::optional<Exponent> pad(const oracle::Partition& p, int n) {
  if (static_cast<int>(p.size()) > n) return std::nullopt;
  Exponent e(n);
  for (std::size_t i = 0; i < p.size(); ++i) e[static_cast<int>(i)] = p[i];
  return e;
}

}  // namespace

TEST(Macdonald, AgreesWithGramSchmidtOracle) {
  const Rational q = R(3, 10), t = R(1, 2);
  for (int n : {2, 3}) {
    RuijsenaarsOperators<Rational> ops(context(n, q, t));
    for (int d = 1; d <= 4; ++d) {
      const auto ref = oracle::macdonald_by_gram(d, q, t);
      for (const auto& [lam, expansion] : ref) {
        const auto lam_n = pad(lam, n);
        if (!lam_n) continue;
        MBasisVector<Rational> want(n);
        for (const auto& [mu, c] : expansion)
          if (auto mu_n = pad(mu, n)) want.add(*mu_n, c);
        EXPECT_EQ(macdonald_polynomial(ops, *lam_n), want) << "n=" << n << " lambda=" << lam_n->str();
      }
    }
  }
}

TEST(Macdonald, TwoRowExample) {
  const Rational q = R(2, 5), t = R(1, 3);
  RuijsenaarsOperators<Rational> ops(context(2, q, t));
  MBasisVector<Rational> want(2);
  want.add({2, 0}, 1);
  want.add({1, 1}, (1 + q) * (1 - t) / (1 - q * t));
  EXPECT_EQ(macdonald_polynomial(ops, {2, 0}), want);
}

TEST(Macdonald, EigenvaluesMatchProduct) {
  const Rational q = R(3, 10), t = R(1, 2);
  RuijsenaarsOperators<Rational> ops(context(3, q, t));
  for (const Exponent lam : {Exponent{2, 1, 0}, Exponent{3, 0, 0}, Exponent{1, 1, 1}}) {
    const auto P = macdonald_polynomial(ops, lam);
    const auto e = macdonald_eigenvalues(lam, q, t);
    for (int r = 0; r <= 3; ++r) EXPECT_EQ(ops.macdonald_apply(r, P), P * e[r]);
  }
}

TEST(Macdonald, ShiftRule) {
  RuijsenaarsOperators<Rational> ops(context(2));
  EXPECT_EQ(macdonald_polynomial(ops, {1, -1}), macdonald_polynomial(ops, {2, 0}).shifted(-1));
  RuijsenaarsOperators<Rational> ops3(context(3));
  EXPECT_EQ(macdonald_polynomial(ops3, {0, -1, -2}), macdonald_polynomial(ops3, {2, 1, 0}).shifted(-2));
}

TEST(Macdonald, RejectsNonDominant) {
  RuijsenaarsOperators<Rational> ops(context(2));
  EXPECT_THROW(macdonald_polynomial(ops, {0, 1}), NotDominant);
}

TEST(Macdonald, GenericityViolation) {
  EXPECT_THROW(
      {
        RuijsenaarsOperators<Rational> ops(context(2, R(1, 2), R(1, 4)));
        macdonald_polynomial(ops, {1, 0});
      },
      GenericityViolation);
}

TEST(Elliptic, JointEigenAndNormalization) {
  for (int n : {2, 3}) {
    RuijsenaarsOperators<Rational> ops(context(n));
    Exponent lam(n);
    lam[0] = 1;
    const auto em = elliptic_macdonald(ops, lam, 3);
    const auto rep = check_eigen_equations(ops, em);
    EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_GT(rep.checked, 0);
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(em.layers[k].coeff(lam), k == 0 ? 1 : 0);
    EXPECT_EQ(em.layers[0], macdonald_polynomial(ops, lam));
    const auto e0 = macdonald_eigenvalues(lam, em.q, em.t);
    for (int r = 0; r <= n; ++r) EXPECT_EQ(em.eigenvalues[r][0], e0[r]);
  }
}

TEST(Elliptic, TopEigenvalueHasNoCorrection) {
  const Rational q = R(3, 10), t = R(1, 2);
  RuijsenaarsOperators<Rational> ops(context(3, q, t));
  const Exponent lam{2, 1, 0};
  const auto em = elliptic_macdonald(ops, lam, 2);
  EXPECT_EQ(em.eigenvalues[3][0], ipow(t, 3) * ipow(q, 3));
  for (int k = 1; k <= 2; ++k) EXPECT_EQ(em.eigenvalues[3][k], 0);
}

TEST(Elliptic, LeadingCoefficient) {
  const Rational q = R(3, 10), t = R(1, 2);
  for (int n : {2, 3}) {
    RuijsenaarsOperators<Rational> ops(context(n, q, t));
    for (const Exponent lam : n == 2 ? std::vector<Exponent>{{0, 0}, {2, 0}} : std::vector<Exponent>{{1, 0, 0}}) {
      const auto em = elliptic_macdonald(ops, lam, 3);
      for (int k = 0; k <= 3; ++k) {
        // hand-expanded q-Pochhammer ratio
        const int gap = lam[0] - lam[n - 1];
        Rational want = ipow(Rational(q / t), k);
        for (int i = 0; i < k; ++i) {
          want *= (1 - t * ipow(q, i)) * (1 - ipow(t, n) * ipow(q, gap + i));
          want /= (1 - ipow(q, i + 1)) * (1 - ipow(t, n - 1) * ipow(q, gap + 1 + i));
        }
        EXPECT_EQ(em.layers[k].coeff(lam + phi(n) * k), want) << lam.str() << " k=" << k;
        EXPECT_EQ(leading_coefficient_formula(lam, k, q, t), want);
      }
    }
  }
}

TEST(Elliptic, Triangularity) {
  RuijsenaarsOperators<Rational> ops(context(3));
  const Exponent lam{2, 0, 0};
  const auto em = elliptic_macdonald(ops, lam, 3);
  for (int k = 0; k <= 3; ++k)
    for (const auto& [w, c] : em.layers[k].terms()) {
      EXPECT_TRUE(dominance_leq(w, lam + phi(3) * k)) << w.str();
      // (x_1...x_n)^k P_{lambda,k} is a polynomial
      EXPECT_GE(w[2] + k, 0) << w.str();
    }
}

TEST(Elliptic, DeterminantShift) {
  RuijsenaarsOperators<Rational> ops(context(2));
  const auto a = elliptic_macdonald(ops, {1, 1}, 3);
  const auto b = elliptic_macdonald(ops, {0, 0}, 3);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(a.layers[k], b.layers[k].shifted(1));
}

TEST(Elliptic, IndependentOfConstant) {
  RuijsenaarsOperators<Rational> ops(context(3));
  auto ctx = context(3);
  ctx.c_index = 4;
  RuijsenaarsOperators<Rational> other(ctx);
  const Exponent lam{1, 1, 0};
  const auto a = elliptic_macdonald(ops, lam, 2);
  const auto b = elliptic_macdonald(other, lam, 2);
  EXPECT_NE(a.c, b.c);
  for (int k = 0; k <= 2; ++k) EXPECT_EQ(a.layers[k], b.layers[k]);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
}

TEST(Elliptic, ComplexFieldMatchesRational) {
  RuijsenaarsOperators<Rational> ops(context(2));
  RuijsenaarsOperators<Complex> cops(OperatorContext<Complex>(2, Complex(0.3), Complex(0.5)));
  const auto a = elliptic_macdonald(ops, {2, 0}, 2);
  const auto b = elliptic_macdonald(cops, {2, 0}, 2);
  for (int k = 0; k <= 2; ++k)
    for (const auto& [w, c] : a.layers[k].terms())
      EXPECT_NEAR(std::abs(to_complex(c) - b.layers[k].coeff(w)), 0.0, 1e-10) << w.str();
}
