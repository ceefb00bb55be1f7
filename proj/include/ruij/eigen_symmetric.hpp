#pragma once

// Macdonald polynomials and their elliptic deformations as power series in p.

#include <map>
#include <string>
#include <vector>

#include "ruij/operators.hpp"

namespace ruij {

namespace detail {

// The chosen constant c collided; the caller retries with the next one.
class ConstantCollision : public EigenvalueCollision {
 public:
  using EigenvalueCollision::EigenvalueCollision;
};

}  // namespace detail

// d_mu(u) = prod_j (1 - u t^{n-j} q^{mu_j})
template <Field F>
F eigen_poly_value(const Exponent& mu, const F& q, const F& t, const F& u) {
  F r = one<F>();
  for (const auto& s : t_rho_q_lambda(mu, q, t)) r *= F(one<F>() - u * s);
  return r;
}

// The eigenvalues e_r(t^rho q^mu), r = 0..n.
template <Field F>
std::vector<F> macdonald_eigenvalues(const Exponent& mu, const F& q, const F& t) {
  const auto s = t_rho_q_lambda(mu, q, t);
  std::vector<F> e;
  for (int r = 0; r <= mu.size(); ++r) e.push_back(elementary_symmetric(r, s));
  return e;
}

// Coefficient of m_{lambda + k phi} in the p^k layer of the normalized
// elliptic deformation.
template <Field F>
F leading_coefficient_formula(const Exponent& lambda, int k, const F& q, const F& t) {
  const int n = lambda.size();
  const int gap = lambda[0] - lambda[n - 1];
  const F num = F(pochhammer(t, q, k) * pochhammer(F(ipow(t, n) * ipow(q, gap)), q, k));
  const F den = F(pochhammer(q, q, k) * pochhammer(F(ipow(t, n - 1) * ipow(q, gap + 1)), q, k));
  return F(num / den * ipow(F(q / t), k));
}

// P_mu for dominant mu, computed as the monic triangular eigenvector of the
// generating operator D_x(c).  Weights with negative parts come from the
// partition case by the shift rule.
template <Field F>
class MacdonaldBasis {
 public:
  explicit MacdonaldBasis(const RuijsenaarsOperators<F>& ops) : ops_(ops) {}

  const RuijsenaarsOperators<F>& operators() const { return ops_; }
  F c() const { return ops_.context().c(); }
  F d(const Exponent& mu) const { return eigen_poly_value(mu, ops_.context().q, ops_.context().t, c()); }

  const MBasisVector<F>& polynomial(const DominantWeight& mu) {
    require_dominant(mu);
    if (auto it = cache_.find(mu); it != cache_.end()) return it->second;
    const int k = mu[mu.size() - 1];
    Exponent base = mu;
    for (int& e : base) e -= k;
    MBasisVector<F> p = k == 0 ? solve_partition(base) : polynomial(base).shifted(k);
    return cache_.emplace(mu, std::move(p)).first->second;
  }

  // Expansion of v in the P-basis by top-down elimination.
  std::map<DominantWeight, F, WeightOrder> expand(const MBasisVector<F>& v) {
    std::map<DominantWeight, F, WeightOrder> a;
    MBasisVector<F> rest = v;
    const double scale = v.max_magnitude();
    while (!rest.is_zero()) {
      const auto [mu, coef] = *rest.terms().begin();
      a.emplace(mu, coef);
      rest -= polynomial(mu) * coef;
      rest.erase(mu);
      rest.prune(scale);
      if (!rest.is_zero() && !WeightOrder{}(mu, rest.terms().begin()->first))
        throw TriangularityViolation("P-basis expansion did not eliminate m_" + mu.str());
    }
    return a;
  }

  // D^{(r)} P_mu == e_r(t^rho q^mu) P_mu for every r.
  void verify(const DominantWeight& mu) {
    const auto& p = polynomial(mu);
    const auto e = macdonald_eigenvalues(mu, ops_.context().q, ops_.context().t);
    for (int r = 1; r <= ops_.n(); ++r) {
      auto res = ops_.macdonald_apply(r, p) - p * e[r];
      if (!res.negligible(p.max_magnitude()))
        throw NonConstantRatio("P_" + mu.str() + " fails the eigen-equation of D^(" + std::to_string(r) + ")");
    }
  }

  // Drops data that depends on c (after a retry).
  void reset_columns() { columns_.clear(); }

 private:
  // D_x(c) m_rho, cached.
  const MBasisVector<F>& column(const DominantWeight& rho) {
    if (auto it = columns_.find(rho); it != columns_.end()) return it->second;
    auto col = ops_.macdonald_apply_generating(c(), MBasisVector<F>::single(rho));
    return columns_.emplace(rho, std::move(col)).first->second;
  }

  MBasisVector<F> solve_partition(const DominantWeight& mu) {
    const auto below = dominant_below(mu);
    const F dmu = d(mu);
    const auto& q = ops_.context().q;
    const auto& t = ops_.context().t;
    std::map<DominantWeight, F, WeightOrder> coef;
    coef.emplace(mu, one<F>());
    for (std::size_t idx = 1; idx < below.size(); ++idx) {
      const auto& nu = below[idx];
      const F dnu = d(nu);
      if (scalars_equal(dmu, dnu)) {
        if (macdonald_eigenvalues(mu, q, t) == macdonald_eigenvalues(nu, q, t))
          throw EigenvalueCollision("eigenvalue polynomials of " + mu.str() + " and " + nu.str() + " coincide");
        throw detail::ConstantCollision("d_" + mu.str() + "(c) = d_" + nu.str() + "(c)");
      }
      F acc = zero<F>();
      for (const auto& [rho, cr] : coef) {
        if (rho == nu) continue;
        acc += F(column(rho).coeff(nu) * cr);
      }
      if (!is_zero(acc)) coef.emplace(nu, F(acc / (dmu - dnu)));
    }
    MBasisVector<F> p(mu.size());
    for (const auto& [rho, cr] : coef) p.add(rho, cr);
    return p;
  }

  const RuijsenaarsOperators<F>& ops_;
  std::map<DominantWeight, MBasisVector<F>, WeightOrder> cache_;
  std::map<DominantWeight, MBasisVector<F>, WeightOrder> columns_;
};

// Runs body(ops) and moves to the next constant c whenever it collides.
template <Field F, class Body>
auto with_c_retry(RuijsenaarsOperators<F>& ops, Body&& body) {
  for (;;) {
    try {
      return body();
    } catch (const detail::ConstantCollision& e) {
      ops.context().next_c(e.what());
    }
  }
}

template <Field F>
MBasisVector<F> macdonald_polynomial(RuijsenaarsOperators<F>& ops, const DominantWeight& lambda,
                                     bool verify = true) {
  require_dominant(lambda);
  ops.context().certify_symmetric();
  return with_c_retry(ops, [&] {
    MacdonaldBasis<F> basis(ops);
    auto p = basis.polynomial(lambda);
    if (verify) basis.verify(lambda);
    return p;
  });
}

template <Field F>
struct EllipticMacdonald {
  DominantWeight lambda;
  int n = 0;
  int K = 0;
  F q{};
  F t{};
  Rational c;                                // constant used by the solver
  std::vector<MBasisVector<F>> layers;       // normalized P_{lambda,k}
  std::vector<std::vector<F>> eigenvalues;   // eigenvalues[r][k], r = 0..n
  std::vector<F> gamma;                      // m_lambda coefficients in the phi-gauge
  std::vector<std::string> certificates;
};

struct EigenReport {
  bool ok = true;
  std::vector<std::string> failures;
  long checked = 0;
};

namespace detail {

template <Field F>
std::vector<std::vector<MBasisVector<F>>> residuals(const RuijsenaarsOperators<F>& ops,
                                                    const std::vector<MBasisVector<F>>& layers,
                                                    const std::vector<std::vector<F>>* eig,
                                                    std::vector<std::vector<F>>* extracted,
                                                    const DominantWeight& lambda) {
  const int n = ops.n();
  const int K = static_cast<int>(layers.size()) - 1;
  // Y[r][k] = sum_i D^{(r)}_{x,i} P_{k-i}
  std::vector<std::vector<MBasisVector<F>>> Y(n + 1, std::vector<MBasisVector<F>>(K + 1, MBasisVector<F>(n)));
  for (int k = 0; k <= K; ++k)
    for (int i = 0; i <= k; ++i) {
      auto all = ops.elliptic_apply_all_orders(i, layers[k - i]);
      for (int r = 0; r <= n; ++r) Y[r][k] += all[r];
    }
  std::vector<std::vector<F>> e(n + 1, std::vector<F>(K + 1, zero<F>()));
  if (eig) {
    e = *eig;
  } else {
    for (int r = 0; r <= n; ++r)
      for (int k = 0; k <= K; ++k) e[r][k] = Y[r][k].coeff(lambda);
  }
  if (extracted) *extracted = e;
  for (int r = 0; r <= n; ++r)
    for (int k = 0; k <= K; ++k)
      for (int i = 0; i <= k; ++i) Y[r][k] -= layers[k - i] * e[r][i];
  return Y;
}

}  // namespace detail

// Solves the p-recurrence in the phi-gauge, normalizes by gamma(p), then
// reads off every eigenvalue series and verifies the joint eigen-equations.
template <Field F>
EllipticMacdonald<F> elliptic_macdonald(RuijsenaarsOperators<F>& ops, const DominantWeight& lambda, int K) {
  require_dominant(lambda);
  if (K < 0) throw ConfigError("p-order must be nonnegative");
  const int n = ops.n();
  if (lambda.size() != n) throw DimensionMismatch("lambda has wrong length");
  ops.context().certify_symmetric();

  return with_c_retry(ops, [&] {
    MacdonaldBasis<F> basis(ops);
    const F c = basis.c();
    const F dl = basis.d(lambda);
    for (const auto& mu : dominant_below(lambda + phi(n) * K))
      if (mu != lambda && scalars_equal(basis.d(mu), dl)) {
        if (macdonald_eigenvalues(mu, ops.context().q, ops.context().t) ==
            macdonald_eigenvalues(lambda, ops.context().q, ops.context().t))
          throw EigenvalueCollision("eigenvalue polynomials of " + mu.str() + " and " + lambda.str() + " coincide");
        throw detail::ConstantCollision("d_" + mu.str() + "(c) = d_" + lambda.str() + "(c)");
      }

    std::vector<MBasisVector<F>> psi{basis.polynomial(lambda)};
    std::vector<F> eps{dl};
    for (int k = 1; k <= K; ++k) {
      MBasisVector<F> rhs(n);
      for (int i = 1; i <= k; ++i) rhs -= ops.elliptic_apply_generating_k(c, i, psi[k - i]);
      for (int i = 1; i <= k - 1; ++i) rhs += psi[k - i] * eps[i];
      const auto a = basis.expand(rhs);
      MBasisVector<F> next(n);
      F ek = zero<F>();
      for (const auto& [mu, amu] : a) {
        if (mu == lambda) {
          ek = F(-amu);
          continue;
        }
        next += basis.polynomial(mu) * F(amu / (basis.d(mu) - dl));
      }
      psi.push_back(std::move(next));
      eps.push_back(ek);
    }

    EllipticMacdonald<F> em;
    em.lambda = lambda;
    em.n = n;
    em.K = K;
    em.q = ops.context().q;
    em.t = ops.context().t;
    em.c = ops.context().c_candidates.at(ops.context().c_index);
    em.certificates = ops.context().certificates;

    PSeries<F> gamma(K, zero<F>());
    for (int k = 0; k <= K; ++k) gamma[k] = psi[k].coeff(lambda);
    em.gamma = gamma.coeffs();
    const auto ginv = pseries_unit_inverse(gamma);
    for (int k = 0; k <= K; ++k) {
      MBasisVector<F> layer(n);
      for (int j = 0; j <= k; ++j) layer += psi[k - j] * ginv[j];
      em.layers.push_back(std::move(layer));
    }

    auto res = detail::residuals<F>(ops, em.layers, nullptr, &em.eigenvalues, lambda);
    for (int r = 0; r <= n; ++r)
      for (int k = 0; k <= K; ++k)
        if (!res[r][k].negligible(1.0))
          throw NonConstantRatio("D^(" + std::to_string(r) + ") P / P is not constant at p^" + std::to_string(k));
    return em;
  });
}

// Re-applies every D^{(r)}(p) to the layers and checks the residual at each
// p-order.
template <Field F>
EigenReport check_eigen_equations(const RuijsenaarsOperators<F>& ops, const EllipticMacdonald<F>& em) {
  EigenReport rep;
  auto res = detail::residuals<F>(ops, em.layers, &em.eigenvalues, nullptr, em.lambda);
  for (int r = 1; r <= em.n; ++r)
    for (int k = 0; k <= em.K; ++k) {
      ++rep.checked;
      if (!res[r][k].negligible(1.0)) {
        rep.ok = false;
        rep.failures.push_back("r=" + std::to_string(r) + " p^" + std::to_string(k) + ": " +
                               std::to_string(res[r][k].size()) + " nonzero residual terms, leading m_" +
                               res[r][k].terms().begin()->first.str());
      }
    }
  return rep;
}

}  // namespace ruij
