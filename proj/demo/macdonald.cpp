// Prints P_(2,1,0) at q=3/10, t=1/2 and the first two p-layers of its
// elliptic deformation, with the eigenvalue series of D^(1)(p).

#include <cstdio>
#include <iostream>

#include "ruij/ruij.hpp"

using namespace ruij;

int main() {
  const Rational q(3, 10), t(1, 2);
  RuijsenaarsOperators<Rational> ops(OperatorContext<Rational>(3, q, t));
  const Exponent lam{2, 1, 0};

  std::cout << "P_" << lam.str() << " in the monomial basis:\n";
  const auto P = macdonald_polynomial(ops, lam);
  for (const auto& [w, c] : P.terms())
    std::cout << "  m_" << w.str() << "  " << c.get_str() << "\n";

  const auto em = elliptic_macdonald(ops, lam, 2);
  for (int k = 1; k <= 2; ++k) {
    std::cout << "p^" << k << " layer (" << em.layers[k].size() << " terms), leading m_"
              << (lam + phi(3) * k).str() << ": " << em.layers[k].coeff(lam + phi(3) * k).get_str() << "\n";
  }
  std::cout << "eps^(1)(p) = ";
  for (int k = 0; k <= 2; ++k) std::cout << (k ? " + (" : "(") << em.eigenvalues[1][k].get_str() << ")p^" << k;
  std::cout << " + O(p^3)\n";
  std::printf("joint eigen-equations: %s\n", check_eigen_equations(ops, em).ok ? "exact" : "FAILED");
}
