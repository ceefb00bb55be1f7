#include "test_util.hpp"

using namespace ruij;
using namespace testutil;

namespace {

MBasisVector<Rational> m(std::initializer_list<int> w, Rational c = 1) {
  return MBasisVector<Rational>::single(Exponent(w), c);
}

MBasisVector<Rational> random_symmetric(std::mt19937_64& gen, int n) {
  std::uniform_int_distribution<int> d(-1, 2), c(-4, 4);
  MBasisVector<Rational> v(n);
  for (int k = 0; k < 3; ++k) {
    Exponent e(n);
    for (int i = 0; i < n; ++i) e[i] = d(gen);
    v.add(dominant_rep(e), R(c(gen), 3));
  }
  return v;
}

}  // namespace

TEST(Operators, MacdonaldExamples) {
  RuijsenaarsOperators<Rational> ops(context(2));
  const Rational q = R(3, 10), t = R(1, 2);
  EXPECT_EQ(ops.macdonald_apply(1, m({1, 0})), m({1, 0}, t * q + 1));
  auto f = m({2, 0}, R(3)) + m({1, -1}, R(-2));
  EXPECT_EQ(ops.macdonald_apply(0, f), f);
  EXPECT_EQ(ops.macdonald_apply(2, m({1, 1})), m({1, 1}, t * q * q));
}

TEST(Operators, TopOrderIsPureShift) {
  for (int n : {2, 3}) {
    RuijsenaarsOperators<Rational> ops(context(n));
    std::mt19937_64 gen(n);
    auto f = random_symmetric(gen, n);
    const Rational tb = ipow(R(1, 2), n * (n - 1) / 2);
    MBasisVector<Rational> want(n);
    for (const auto& [w, c] : f.terms()) want.add(w, c * tb * ipow(R(3, 10), w.total()));
    EXPECT_EQ(ops.macdonald_apply(n, f), want);
  }
}

TEST(Operators, EllipticCoefficientOrderZero) {
  RuijsenaarsOperators<Rational> ops(context(3));
  for (Subset I = 0; I < 8; ++I) EXPECT_EQ(ops.elliptic_coeff_p(I, 0), LaurentPoly<Rational>::constant(3, 1));
  for (int k = 1; k <= 3; ++k) {
    EXPECT_TRUE(ops.elliptic_coeff_p(0, k).is_zero());
    EXPECT_TRUE(ops.elliptic_coeff_p(7, k).is_zero());
  }
}

TEST(Operators, EllipticCoefficientFirstOrderSign) {
  // First-order expansion of the four factors for n=2, I={1}:
  // (p t x1/x2;p)(p x2/(t x1);p) / ((p x1/x2;p)(p x2/x1;p))
  //   = 1 + p(-t x1/x2 - x2/(t x1) + x1/x2 + x2/x1) + O(p^2)
  RuijsenaarsOperators<Rational> ops(context(2));
  const Rational t = R(1, 2);
  auto want = mono({1, -1}, -t) + mono({-1, 1}, -1 / t) + mono({1, -1}) + mono({-1, 1});
  EXPECT_EQ(ops.elliptic_coeff_p(0b01, 1), want);
  // I={2} is the mirror image
  auto mirror = mono({-1, 1}, -t) + mono({1, -1}, -1 / t) + mono({-1, 1}) + mono({1, -1});
  EXPECT_EQ(ops.elliptic_coeff_p(0b10, 1), mirror);
}

TEST(Operators, EllipticOrderZeroIsMacdonald) {
  RuijsenaarsOperators<Rational> ops(context(3));
  std::mt19937_64 gen(7);
  auto f = random_symmetric(gen, 3);
  for (int r = 0; r <= 3; ++r) EXPECT_EQ(ops.elliptic_apply_order_k(r, 0, f), ops.macdonald_apply(r, f));
}

TEST(Operators, FirstOrderOnConstantSupport) {
  RuijsenaarsOperators<Rational> ops(context(2));
  auto out = ops.elliptic_apply_order_k(1, 1, m({0, 0}));
  for (const auto& [w, c] : out.terms()) EXPECT_TRUE(w == Exponent({1, -1}) || w == Exponent({0, 0})) << w.str();
  EXPECT_FALSE(out.is_zero());
}

TEST(Operators, TopOrderHasNoEllipticCorrection) {
  for (int n : {2, 3}) {
    RuijsenaarsOperators<Rational> ops(context(n));
    std::mt19937_64 gen(n + 10);
    auto f = random_symmetric(gen, n);
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(ops.elliptic_apply_order_k(n, k, f).is_zero());
  }
}

TEST(Operators, Triangularity) {
  RuijsenaarsOperators<Rational> ops(context(3));
  const Exponent lam{2, 1, 0};
  auto f = MBasisVector<Rational>::single(lam);
  for (int k = 0; k <= 2; ++k)
    for (const auto& out : ops.elliptic_apply_all_orders(k, f))
      for (const auto& [w, c] : out.terms()) EXPECT_TRUE(dominance_leq(w, lam + phi(3) * k));
}

TEST(Operators, CommutativityAtTruncation) {
  for (int n : {2, 3}) {
    RuijsenaarsOperators<Rational> ops(context(n));
    std::mt19937_64 gen(100 + n);
    auto f = random_symmetric(gen, n);
    const int K = 2;
    for (int r1 = 1; r1 < n; ++r1)
      for (int r2 = r1 + 1; r2 <= n; ++r2)
        for (int k = 0; k <= K; ++k) {
          MBasisVector<Rational> lhs(n), rhs(n);
          for (int i = 0; i <= k; ++i) {
            lhs += ops.elliptic_apply_order_k(r1, i, ops.elliptic_apply_order_k(r2, k - i, f));
            rhs += ops.elliptic_apply_order_k(r2, k - i, ops.elliptic_apply_order_k(r1, i, f));
          }
          EXPECT_EQ(lhs, rhs) << "n=" << n << " r=" << r1 << "," << r2 << " p^" << k;
        }
  }
}

TEST(Operators, AllOrdersMatchesSingleOrders) {
  RuijsenaarsOperators<Rational> ops(context(3));
  std::mt19937_64 gen(12);
  auto f = random_symmetric(gen, 3);
  auto all = ops.elliptic_apply_all_orders(2, f);
  for (int r = 0; r <= 3; ++r) EXPECT_EQ(all[r], ops.elliptic_apply_order_k(r, 2, f));
}

TEST(Symbols, ConstantTermsAndExamples) {
  const Rational q = R(3, 10), t = R(1, 2);
  auto tab = build_symbol_table(2, q, t, 4);
  for (Subset I = 0; I < 4; ++I) EXPECT_EQ(tab.b(I, AffineCoords{0, 0}), 1);
  EXPECT_EQ(tab.b(0b01, AffineCoords{0, 1}), 1 - 1 / t);
  for (const auto& [b, c] : tab.B[0].terms()) EXPECT_EQ(b, AffineCoords(2));
  for (const auto& [b, c] : tab.B[3].terms()) EXPECT_EQ(b, AffineCoords(2));
}

TEST(Symbols, LogRouteAgreesWithProductRoute) {
  const Rational t = R(2, 7);
  for (int n : {2, 3})
    for (Subset I = 0; I < (1u << n); ++I)
      EXPECT_EQ(b_coefficient_series_via_log(n, I, t, 6), b_coefficient_series(n, I, t, 6)) << n << " " << I;
}

TEST(Symbols, Evaluation) {
  const Rational q = R(3, 10), t = R(1, 2), u = R(2, 9);
  const std::vector<Rational> s{R(1, 3), R(5, 4)};
  auto tab = build_symbol_table(2, q, t, 4);
  const AffineCoords zero(2);
  EXPECT_EQ(symbol_eval(tab, s, zero, zero, u), (1 - u * s[0]) * (1 - u * s[1]));
  EXPECT_EQ(symbol_eval(tab, s, zero, AffineCoords{0, 1}, u), (1 - u * s[0] / q) * (1 - u * s[1] * q));
  EXPECT_EQ(symbol_eval(tab, s, zero, delta_coords(2), u), symbol_eval(tab, s, zero, zero, u));
}

TEST(Symbols, ConsistentWithLaurentExpansion) {
  // A_I(x) C_I(x;p) = t^{<eps_I,rho>} B_I(x;p) at a point in the asymptotic domain.
  const int n = 3, K = 3, H = 30;
  const Rational q = R(3, 10), t = R(1, 2);
  RuijsenaarsOperators<Rational> ops(context(n, q, t));
  auto tab = build_symbol_table(n, q, t, H);
  const std::vector<Complex> x{{1.0, 0.1}, {0.3, -0.05}, {0.08, 0.02}};
  const Complex p = 1e-4;
  const auto delta = vandermonde<Rational>(n);
  for (Subset I = 0; I < 8; ++I) {
    Complex cval = 0, pk = 1;
    for (int k = 0; k <= K; ++k, pk *= p) cval += pk * evaluate(ops.elliptic_coeff_p(I, k), x);
    const Complex A = evaluate(scale_shift(delta, I, t), x) / evaluate(delta, x);
    long rho_pair = 0;
    for (int i = 0; i < n; ++i)
      if (in_subset(I, i)) rho_pair += n - 1 - i;
    const Complex rhs = std::pow(0.5, rho_pair) * eval_zseries_x(tab.B[I], x, p).value;
    EXPECT_NEAR(std::abs(A * cval - rhs), 0.0, 1e-9 * std::abs(rhs)) << "I=" << I;
  }
}

TEST(Symbols, ModifiedOperatorMatchesSymbolRecurrence) {
  // apply_modified and symbol_eval describe the same operator.
  const Rational q = R(3, 10), t = R(1, 2), u = R(3, 7);
  const std::vector<Rational> s{R(1, 3), R(2, 5)};
  auto tab = build_symbol_table(2, q, t, 5);
  std::vector<Rational> w(4);
  for (Subset I = 0; I < 4; ++I) w[I] = ipow(Rational(-u), subset_size(I));
  const AffineCoords nu{1, 0};
  auto out = apply_modified(tab, s, w, ZSeries<Rational>::monomial(nu, 1, 5));
  for (const auto& mu : coords_up_to_height(2, 5)) {
    const Rational want = coords_leq(nu, mu) ? symbol_eval(tab, s, mu - nu, nu, u) : Rational(0);
    EXPECT_EQ(out.coeff(mu), want) << mu.str();
  }
}
