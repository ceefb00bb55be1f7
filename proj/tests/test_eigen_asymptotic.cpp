#include "test_util.hpp"

using namespace ruij;
using namespace testutil;

namespace {

OperatorContext<Rational> asym_context(int n, std::vector<Rational> s, Rational q = R(3, 10), Rational t = R(1, 2)) {
  auto ctx = context(n, q, t);
  ctx.s = std::move(s);
  return ctx;
}

}  // namespace

TEST(Asymptotic, JointEigenN2) {
  const auto fr = stationary_ruijsenaars(asym_context(2, {R(1, 3), R(2, 7)}), 8);
  const auto rep = check_joint_eigen(fr);
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_EQ(fr.f.coeff(AffineCoords(2)), 1);
  for (int l = 1; 2 * l <= 8; ++l) EXPECT_EQ(fr.f.coeff(delta_coords(2, l)), 0);
}

TEST(Asymptotic, JointEigenN3) {
  const auto fr = stationary_ruijsenaars(asym_context(3, {R(1, 3), R(2, 7), R(5, 11)}), 6);
  const auto rep = check_joint_eigen(fr);
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_GT(rep.checked, 0);
}

TEST(Asymptotic, FirstCoefficientByHand) {
  // Height one, z_1 = x_2/x_1: only nu = 0 contributes and c cancels.
  // T_{q,x_1} z_1 = z_1/q and T_{q,x_2} z_1 = q z_1.
  const Rational q = R(3, 10), t = R(1, 2);
  const std::vector<Rational> s{R(1, 3), R(2, 7)};
  const auto fr = stationary_ruijsenaars(asym_context(2, s, q, t), 2);
  const Rational want = ((1 - 1 / t) * s[0] + (1 - t) * s[1]) / (s[0] * (1 - 1 / q) + s[1] * (1 - q));
  EXPECT_EQ(fr.f.coeff(AffineCoords{0, 1}), want);
}

TEST(Asymptotic, LowestEigenvalueIsElementary) {
  const std::vector<Rational> s{R(1, 3), R(2, 7), R(5, 11)};
  const auto fr = stationary_ruijsenaars(asym_context(3, s), 6);
  for (int r = 0; r <= 3; ++r) EXPECT_EQ(fr.eps[0][r], elementary_symmetric(r, s));
  for (std::size_t l = 1; l < fr.eps.size(); ++l) EXPECT_EQ(fr.eps[l][0], 0) << l;
  EXPECT_EQ(fr.poly_in_u(0)[1], -fr.eps[0][1]);
}

TEST(Asymptotic, IndependentOfConstant) {
  auto ctx = asym_context(2, {R(1, 3), R(2, 7)});
  const auto a = stationary_ruijsenaars(ctx, 8);
  ctx.c_index = 5;
  const auto b = stationary_ruijsenaars(ctx, 8);
  EXPECT_NE(a.c, b.c);
  const auto rep = compare_functions(a, b, "c");
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
}

TEST(Asymptotic, SpecializesToEllipticMacdonald) {
  const Rational q = R(3, 10), t = R(1, 2);
  for (const Exponent lam : {Exponent{0, 0}, Exponent{2, 0}, Exponent{1, 0, 0}}) {
    const int n = lam.size();
    RuijsenaarsOperators<Rational> ops(context(n, q, t));
    const auto em = elliptic_macdonald(ops, lam, 2);
    const auto fr = stationary_ruijsenaars(asym_context(n, t_rho_q_lambda(lam, q, t), q, t), 6);
    const auto rep = specialize_to_symmetric(fr, em);
    EXPECT_TRUE(rep.ok) << lam.str();
    EXPECT_GT(rep.checked, 0);
  }
}

TEST(Asymptotic, TrigonometricSliceIsClosed) {
  auto ctx = asym_context(3, {R(1, 3), R(2, 7), R(5, 11)});
  const auto full = stationary_ruijsenaars(ctx, 6);
  const auto slice = stationary_ruijsenaars(ctx, 6, 0);
  for (const auto& [b, c] : slice.f.terms()) {
    EXPECT_EQ(b[0], 0);
    EXPECT_EQ(full.f.coeff(b), c) << b.str();
  }
  for (const auto& [b, c] : full.f.terms()) {
    if (b[0] == 0) {
      EXPECT_EQ(slice.f.coeff(b), c) << b.str();
    }
  }
  const auto rep = check_joint_eigen(slice);
  EXPECT_TRUE(rep.ok);
}

TEST(Asymptotic, RotationCovariance) {
  for (int n : {2, 3}) {
    std::vector<Rational> s{R(1, 3), R(2, 7), R(5, 11)};
    s.resize(n);
    const auto rep = rotation_check(asym_context(n, s), n == 2 ? 8 : 6);
    EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(Asymptotic, Reflection) {
  const auto res = reflection_check(asym_context(2, {R(1, 3), R(2, 7)}), 8);
  EXPECT_TRUE(res.report.ok) << (res.report.failures.empty() ? "" : res.report.failures.front());
  EXPECT_EQ(res.gamma[0], 1);
  EXPECT_EQ(res.gamma_reflected[0], 1);
}

TEST(Asymptotic, ComplexFieldMatchesRational) {
  const auto a = stationary_ruijsenaars(asym_context(2, {R(1, 3), R(2, 7)}), 6);
  OperatorContext<Complex> cc(2, Complex(0.3), Complex(0.5));
  cc.s = std::vector<Complex>{Complex(1.0 / 3), Complex(2.0 / 7)};
  const auto b = stationary_ruijsenaars(cc, 6);
  for (const auto& [beta, c] : a.f.terms())
    EXPECT_NEAR(std::abs(to_complex(c) - b.f.coeff(beta)), 0.0, 1e-9 * std::max(1.0, std::abs(to_complex(c))));
}

TEST(Asymptotic, RequiresSpectralParameter) {
  EXPECT_ANY_THROW(stationary_ruijsenaars(context(2), 4));
}
