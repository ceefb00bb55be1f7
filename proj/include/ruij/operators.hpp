#pragma once

// Trigonometric and elliptic Ruijsenaars operators.
//
// On symmetric Laurent polynomials every operator is applied as
//   (sum_I w_I T_t^I(Delta) C_{I,k} T_q^I f) / Delta,
// one exact division per application.  In the z-grading the operators are
// described by the symbol coefficients b^I_beta of B_I(x;p).

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ruij/context.hpp"
#include "ruij/parallel.hpp"
#include "ruij/series.hpp"

namespace ruij {

template <Field F>
class RuijsenaarsOperators {
 public:
  explicit RuijsenaarsOperators(OperatorContext<F> ctx) : ctx_(std::move(ctx)), n_(ctx_.n) {
    ctx_.validate_basic();
    delta_ = vandermonde<F>(n_);
    const Subset full = (1u << n_);
    t_delta_.resize(full);
    for (Subset I = 0; I < full; ++I) t_delta_[I] = scale_shift(delta_, I, ctx_.t);
  }

  const OperatorContext<F>& context() const { return ctx_; }
  OperatorContext<F>& context() { return ctx_; }
  int n() const { return n_; }
  Subset full_set() const { return (1u << n_) - 1; }

  // Weight vectors over subsets.
  std::vector<F> order_weights(int r) const {
    std::vector<F> w(1u << n_, zero<F>());
    for (Subset I = 0; I <= full_set(); ++I)
      if (subset_size(I) == r) w[I] = one<F>();
    return w;
  }
  std::vector<F> generating_weights(const F& u) const {
    std::vector<F> w(1u << n_);
    const F mu = F(-u);
    for (Subset I = 0; I <= full_set(); ++I) w[I] = ipow(mu, subset_size(I));
    return w;
  }

  // C_{I,k}(x), the p^k coefficient of C_I(x;p).
  LaurentPoly<F> elliptic_coeff_p(Subset I, int k) const {
    if (k < 0) throw Error("negative p-order");
    return c_coeff(I, k);
  }

  // (sum_I w_I T_t^I(Delta) C_{I,k} T_q^I f) / Delta on a Laurent polynomial.
  LaurentPoly<F> apply_laurent(const std::vector<F>& w, int k, const LaurentPoly<F>& f) const {
    LaurentPoly<F> acc(n_);
    for (Subset I = 0; I <= full_set(); ++I) {
      if (is_zero(w[I])) continue;
      acc += weighted_term(I, k, f) * w[I];
    }
    return laurent_exact_div(acc, delta_);
  }

  MBasisVector<F> apply(const std::vector<F>& w, int k, const MBasisVector<F>& f) const {
    auto out = laurent_to_m(apply_laurent(w, k, m_to_laurent(f)));
    check_triangular(f, out, k);
    return out;
  }

  MBasisVector<F> macdonald_apply(int r, const MBasisVector<F>& f) const { return apply(order_weights(r), 0, f); }
  MBasisVector<F> macdonald_apply_generating(const F& u, const MBasisVector<F>& f) const {
    return apply(generating_weights(u), 0, f);
  }
  MBasisVector<F> elliptic_apply_order_k(int r, int k, const MBasisVector<F>& f) const {
    return apply(order_weights(r), k, f);
  }
  MBasisVector<F> elliptic_apply_generating_k(const F& u, int k, const MBasisVector<F>& f) const {
    return apply(generating_weights(u), k, f);
  }

  // D^{(r)}_{x,k} f for every r = 0..n, sharing the per-subset products.
  std::vector<MBasisVector<F>> elliptic_apply_all_orders(int k, const MBasisVector<F>& f) const {
    const LaurentPoly<F> lf = m_to_laurent(f);
    std::vector<LaurentPoly<F>> terms(1u << n_);
    parallel_for(terms.size(), [&](std::size_t I) { terms[I] = weighted_term(static_cast<Subset>(I), k, lf); });
    std::vector<LaurentPoly<F>> by_r(n_ + 1, LaurentPoly<F>(n_));
    for (Subset I = 0; I <= full_set(); ++I) by_r[subset_size(I)] += terms[I];
    std::vector<MBasisVector<F>> out(n_ + 1);
    parallel_for(out.size(), [&](std::size_t r) { out[r] = laurent_to_m(laurent_exact_div(by_r[r], delta_)); });
    for (const auto& o : out) check_triangular(f, o, k);
    return out;
  }

  // Each weight nu of the output must satisfy nu <= mu + k phi for some mu in
  // the support of the input.
  void check_triangular(const MBasisVector<F>& in, const MBasisVector<F>& out, int k) const {
    const Exponent kphi = phi(n_) * k;
    for (const auto& kv : out.terms()) {
      bool ok = false;
      for (const auto& kv2 : in.terms())
        if (dominance_leq(kv.first, kv2.first + kphi)) {
          ok = true;
          break;
        }
      if (!ok)
        throw TriangularityViolation("operator output contains m_" + kv.first.str() +
                                     " outside the dominance ideal of the input");
    }
  }

  const LaurentPoly<F>& delta() const { return delta_; }

 private:
  LaurentPoly<F> weighted_term(Subset I, int k, const LaurentPoly<F>& f) const {
    LaurentPoly<F> g = laurent_mul(t_delta_[I], q_shift(f, I, ctx_.q));
    if (k == 0) return g;
    const LaurentPoly<F> c = elliptic_coeff_p(I, k);
    if (c.is_zero()) return LaurentPoly<F>(n_);
    return laurent_mul(c, g);
  }

  // p^K coefficient of C_I(x;p).  The series is cached per subset at the
  // largest order requested; the coefficient is copied out under the lock.
  LaurentPoly<F> c_coeff(Subset I, int K) const {
    std::lock_guard lock(cache_mu_);
    auto it = c_cache_.find(I);
    if (it != c_cache_.end() && it->second.order() >= K) return it->second[K];
    const int order = std::max(K, 4);
    using PS = PSeries<LaurentPoly<F>>;
    PS num(order, LaurentPoly<F>(n_)), den(order, LaurentPoly<F>(n_));
    num[0] = den[0] = LaurentPoly<F>::constant(n_, one<F>());
    const F tinv = inverse(ctx_.t);
    for (int i = 0; i < n_; ++i) {
      if (!in_subset(I, i)) continue;
      for (int j = 0; j < n_; ++j) {
        if (in_subset(I, j)) continue;
        Exponent e(n_);
        e[i] = 1;
        e[j] = -1;
        num = num * p_product(LaurentPoly<F>::monomial(e, ctx_.t), 1, order);
        num = num * p_product(LaurentPoly<F>::monomial(-e, tinv), 1, order);
        den = den * p_product(LaurentPoly<F>::monomial(e), 1, order);
        den = den * p_product(LaurentPoly<F>::monomial(-e), 1, order);
      }
    }
    PS c = num * pseries_unit_inverse(den);
    LaurentPoly<F> out = c[K];
    c_cache_.insert_or_assign(I, std::move(c));
    return out;
  }

  OperatorContext<F> ctx_;
  int n_;
  LaurentPoly<F> delta_;
  std::vector<LaurentPoly<F>> t_delta_;
  mutable std::mutex cache_mu_;
  mutable std::map<Subset, PSeries<LaurentPoly<F>>> c_cache_;
};

// ---------------------------------------------------------------- symbols

template <Field F>
struct SymbolTable {
  int n = 0;
  int H = 0;
  F q{};
  F t{};
  std::vector<ZSeries<F>> B;  // B[I] = B_I(x;p) in the z-grading
  int max_p_order = -1;       // k_0 cutoff of the stored series, -1 for none

  bool covers(int n_, int H_, int p_order) const {
    return n == n_ && H >= H_ && (max_p_order < 0 || (p_order >= 0 && p_order <= max_p_order));
  }

  F b(Subset I, const AffineCoords& beta) const { return B.at(I).coeff(beta); }
};

// B_I(x;p) = prod_{i<j, i in I, j not in I} theta(x_j/(t x_i))/theta(x_j/x_i)
//          * prod_{i<j, i not in I, j in I} theta(t x_j/x_i)/theta(x_j/x_i).
template <Field F>
ZSeries<F> b_coefficient_series(int n, Subset I, const F& t, int H, int max_p_order = -1) {
  ZSeries<F> num = ZSeries<F>::unit(n, H, max_p_order), den = ZSeries<F>::unit(n, H, max_p_order);
  const F tinv = inverse(t);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const bool ii = in_subset(I, i - 1), jj = in_subset(I, j - 1);
      if (ii == jj) continue;
      const AffineCoords Z = ratio_coords(n, i, j);
      num = num * theta_zseries(ii ? tinv : t, Z, H, max_p_order);
      den = den * theta_zseries(one<F>(), Z, H, max_p_order);
    }
  return num * zseries_unit_inverse(den);
}

template <Field F>
SymbolTable<F> build_symbol_table(int n, const F& q, const F& t, int H, int max_p_order = -1) {
  SymbolTable<F> tab{n, H, q, t, std::vector<ZSeries<F>>(1u << n), max_p_order};
  parallel_for(tab.B.size(), [&](std::size_t I) {
    tab.B[I] = b_coefficient_series(n, static_cast<Subset>(I), t, H, max_p_order);
  });
  return tab;
}

// xi^{eps_I} at xi = q^{-nu}: q^{-sum_{j in I} <eps_j, nu>}.
template <Field F>
F xi_power(const F& q, Subset I, const AffineCoords& nu) {
  const Exponent pe = eps_pairing(nu);
  long e = 0;
  for (int j = 0; j < nu.size(); ++j)
    if (in_subset(I, j)) e += pe[j];
  return ipow(q, -e);
}

template <Field F>
F s_power(const std::vector<F>& s, Subset I) {
  F r = one<F>();
  for (std::size_t j = 0; j < s.size(); ++j)
    if (in_subset(I, static_cast<int>(j))) r *= s[j];
  return r;
}

// Coefficients of (-u)^r, r = 0..n, in b_beta(q^{-nu}; u).
template <Field F>
std::vector<F> symbol_poly(const SymbolTable<F>& tab, const std::vector<F>& s, const AffineCoords& beta,
                           const AffineCoords& nu) {
  if (height(beta) > tab.H) throw Error("symbol requested above the table's height cutoff");
  std::vector<F> out(tab.n + 1, zero<F>());
  for (Subset I = 0; I < (1u << tab.n); ++I) {
    const F bI = tab.b(I, beta);
    if (is_zero(bI)) continue;
    out[subset_size(I)] += F(bI * s_power(s, I) * xi_power(tab.q, I, nu));
  }
  return out;
}

// b_beta(q^{-nu}; u)
template <Field F>
F symbol_eval(const SymbolTable<F>& tab, const std::vector<F>& s, const AffineCoords& beta, const AffineCoords& nu,
              const F& u) {
  const auto poly = symbol_poly(tab, s, beta, nu);
  F r = zero<F>(), mu = one<F>();
  for (int k = 0; k <= tab.n; ++k) {
    r += F(poly[k] * mu);
    mu *= F(-u);
  }
  return r;
}

// T^{eps_I}_{q,x} on a z-series: z^nu picks up q^{-sum_{j in I} <eps_j, nu>}.
template <Field F>
ZSeries<F> zseries_q_shift(const ZSeries<F>& f, Subset I, const F& q) {
  ZSeries<F> r(f.nvars(), f.height_cutoff(), f.p_cutoff());
  for (const auto& [nu, c] : f.terms()) r.add(nu, F(c * xi_power(q, I, nu)));
  return r;
}

// sum_I w_I s^I B_I T_q^I f, computed by series multiplication.
template <Field F>
ZSeries<F> apply_modified(const SymbolTable<F>& tab, const std::vector<F>& s, const std::vector<F>& w,
                          const ZSeries<F>& f) {
  ZSeries<F> out(f.nvars(), f.height_cutoff(), f.p_cutoff());
  for (Subset I = 0; I < (1u << tab.n); ++I) {
    if (is_zero(w[I])) continue;
    out += zseries_mul(tab.B[I], zseries_q_shift(f, I, tab.q)) * F(w[I] * s_power(s, I));
  }
  return out;
}

}  // namespace ruij
