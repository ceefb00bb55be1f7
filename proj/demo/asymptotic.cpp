// Solves for f(x;s;p) with n=2 up to height 10 and prints the coefficients
// by height, then the fitted decay constants.

#include <cstdio>

#include "ruij/ruij.hpp"

using namespace ruij;

int main() {
  OperatorContext<Rational> ctx(2, Rational(3, 10), Rational(1, 2));
  ctx.s = std::vector<Rational>{Rational(1, 3), Rational(2, 7)};
  const auto fr = stationary_ruijsenaars(ctx, 10);

  std::printf("%-10s %-8s %s\n", "beta", "height", "f_beta");
  for (const auto& [b, c] : fr.f.terms())
    if (height(b) <= 4) std::printf("%-10s %-8d %s\n", b.str().c_str(), height(b), c.get_str().c_str());
  std::printf("... %zu coefficients up to height %d\n", fr.f.terms().size(), fr.H);

  for (std::size_t l = 0; l < fr.eps.size(); ++l) {
    const auto u = fr.poly_in_u(static_cast<int>(l));
    std::printf("eps_%zu(u) = %s + (%s)u + (%s)u^2\n", l, u[0].get_str().c_str(), u[1].get_str().c_str(),
                u[2].get_str().c_str());
  }
  const auto [C, sigma] = decay_fit(fr);
  std::printf("decay fit: |f_mu| <~ %.3g * %.3g^ht(mu) * |q|^d(mu)\n", C, sigma);
  std::printf("joint eigen-equations: %s\n", check_joint_eigen(fr).ok ? "exact" : "FAILED");
}
