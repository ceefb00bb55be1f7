#pragma once

// The stationary Ruijsenaars function f(x;s;p) in the asymptotic domain
// |x_1| >> ... >> |x_n| >> |p x_1|, as a z-series with f_0 = 1 and
// f_{l delta} = 0 for l > 0.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ruij/eigen_symmetric.hpp"

namespace ruij {

template <Field F>
struct RuijsenaarsFunction {
  int n = 0;
  int H = 0;
  int max_p_order = -1;  // -1: no restriction on k_0
  F q{};
  F t{};
  std::vector<F> s;
  Rational c;
  ZSeries<F> f;
  // eps[l][r] = eps^{(r)}_l; eps_l(u) = sum_r (-u)^r eps[l][r].
  std::vector<std::vector<F>> eps;
  std::vector<std::string> certificates;

  bool in_range(const AffineCoords& b) const { return max_p_order < 0 || b[0] <= max_p_order; }

  // Coefficients of u^0..u^n in eps_l(u).
  std::vector<F> poly_in_u(int l) const {
    std::vector<F> out;
    for (int r = 0; r <= n; ++r) out.push_back(F(r % 2 ? F(-eps[l][r]) : eps[l][r]));
    return out;
  }
};

struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  std::string name;
  bool ok = true;
  long checked = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void fail(std::string msg) {
    ok = false;
    if (failures.size() < 20) failures.push_back(std::move(msg));
  }
};

namespace detail {

template <Field F>
F eps_value(const std::vector<F>& eps_l, const F& u) {
  F r = zero<F>(), mu = one<F>();
  for (const auto& e : eps_l) {
    r += F(e * mu);
    mu *= F(-u);
  }
  return r;
}

template <Field F>
RuijsenaarsFunction<F> solve_asymptotic(const SymbolTable<F>& tab, const OperatorContext<F>& ctx, int H,
                                        int max_p_order) {
  const int n = ctx.n;
  const auto& s = *ctx.s;
  const F c = ctx.c();
  RuijsenaarsFunction<F> fr;
  fr.n = n;
  fr.H = H;
  fr.max_p_order = max_p_order;
  fr.q = ctx.q;
  fr.t = ctx.t;
  fr.s = s;
  fr.c = ctx.c_candidates.at(ctx.c_index);
  fr.f = ZSeries<F>::unit(n, H, max_p_order);

  const int L = H / n;
  fr.eps.assign(L + 1, std::vector<F>(n + 1, zero<F>()));
  for (int r = 0; r <= n; ++r) fr.eps[0][r] = elementary_symmetric(r, s);
  std::vector<F> eps_c(L + 1, zero<F>());
  eps_c[0] = eps_value(fr.eps[0], c);
  const AffineCoords zero_coords(n);

  for (int h = 1; h <= H; ++h) {
    std::vector<AffineCoords> level;
    for (const auto& mu : coords_of_height(n, h))
      if (fr.in_range(mu)) level.push_back(mu);
    std::vector<F> values(level.size(), zero<F>());
    const auto& known = fr.f;
    parallel_for(level.size(), [&](std::size_t idx) {
      const AffineCoords& mu = level[idx];
      if (is_delta_multiple(mu)) {
        // eps_l(u) = sum_{beta + nu = l delta, beta > 0} b_beta(q^{-nu}; u) f_nu
        const int l = mu[0];
        std::vector<F> acc(n + 1, zero<F>());
        for (const auto& [nu, fnu] : known.terms()) {
          if (nu == mu || !coords_leq(nu, mu)) continue;
          const auto poly = symbol_poly(tab, s, mu - nu, nu);
          for (int r = 0; r <= n; ++r) acc[r] += F(poly[r] * fnu);
        }
        fr.eps[l] = acc;
        return;
      }
      const F denom = F(symbol_eval(tab, s, zero_coords, mu, c) - eps_c[0]);
      if (is_zero(denom) || (!field_traits<F>::exact && field_traits<F>::magnitude(denom) < 1e-13))
        throw ConstantCollision("b_0(q^-mu;c) = eps_0(c) at mu = " + mu.str());
      F rhs = zero<F>();
      for (const auto& [nu, fnu] : known.terms()) {
        if (nu == mu || !coords_leq(nu, mu)) continue;
        rhs -= F(symbol_eval(tab, s, mu - nu, nu, c) * fnu);
      }
      for (int k = 1; k * n < h; ++k) {
        const AffineCoords kd = delta_coords(n, k);
        if (!coords_leq(kd, mu)) break;
        rhs += F(eps_c[k] * known.coeff(mu - kd));
      }
      values[idx] = F(rhs / denom);
    });
    for (std::size_t idx = 0; idx < level.size(); ++idx)
      if (!is_delta_multiple(level[idx])) fr.f.add(level[idx], values[idx]);
    if (h % n == 0 && h / n <= L) eps_c[h / n] = eps_value(fr.eps[h / n], c);
  }
  return fr;
}

}  // namespace detail

// Solves the height recurrence at the generic constant c; eps_l(u) is kept
// as a polynomial in u.  max_p_order >= 0 restricts to k_0 <= max_p_order,
// a closed subsystem (0 gives the trigonometric slice).
template <Field F>
RuijsenaarsFunction<F> stationary_ruijsenaars(OperatorContext<F> ctx, int H, int max_p_order = -1,
                                              const SymbolTable<F>* table = nullptr) {
  if (H < 0) throw ConfigError("height cutoff must be nonnegative");
  ctx.validate_basic();
  ctx.certify_asymptotic();
  std::optional<SymbolTable<F>> own;
  if (!table || !table->covers(ctx.n, H, max_p_order)) {
    own = build_symbol_table(ctx.n, ctx.q, ctx.t, H, max_p_order);
    table = &*own;
  }
  for (;;) {
    try {
      auto fr = detail::solve_asymptotic(*table, ctx, H, max_p_order);
      fr.certificates = ctx.certificates;
      return fr;
    } catch (const detail::ConstantCollision& e) {
      ctx.next_c(e.what());
    }
  }
}

// B_I(x;p) through log/exp: log theta(a z^Z;p) = -sum_k (a^k z^{kZ} + a^{-k} z^{k(delta-Z)}) / (k(1-p^k)).
// Independent of the product/inverse route used by build_symbol_table.
template <Field F>
ZSeries<F> b_coefficient_series_via_log(int n, Subset I, const F& t, int H, int max_p_order = -1) {
  auto log_theta = [&](const F& a, const AffineCoords& Z) {
    ZSeries<F> L(n, H, max_p_order);
    const AffineCoords Zc = delta_coords(n) - Z;
    const F ainv = inverse(a);
    for (int k = 1; k <= H; ++k)
      for (int m = 0; m * n <= H; ++m) {
        const AffineCoords shift = delta_coords(n, k * m);
        L.add(Z * k + shift, F(-ipow(a, k) / F(k)));
        L.add(Zc * k + shift, F(-ipow(ainv, k) / F(k)));
      }
    return L;
  };
  ZSeries<F> L(n, H, max_p_order);
  const F tinv = inverse(t);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const bool ii = in_subset(I, i - 1), jj = in_subset(I, j - 1);
      if (ii == jj) continue;
      const AffineCoords Z = ratio_coords(n, i, j);
      L += log_theta(ii ? tinv : t, Z);
      L -= log_theta(one<F>(), Z);
    }
  return zseries_exp(L);
}

namespace detail {

template <Field F>
void compare_zero(CheckReport& rep, const ZSeries<F>& residual, int max_p_order, const std::string& label) {
  for (const auto& [b, c] : residual.terms()) {
    if (max_p_order >= 0 && b[0] > max_p_order) continue;
    if (!field_traits<F>::negligible(c, 1.0)) rep.fail(label + ": residual at beta=" + b.str());
  }
  ++rep.checked;
}

}  // namespace detail

// Applies every E^{(r)}_{x,s}(p) to f by series multiplication, with B_I
// rebuilt through log/exp, and compares with eps^{(r)}(p) f.  Also checks
// the generating form at three values of u.  All heights <= H are exact.
template <Field F>
CheckReport check_joint_eigen(const RuijsenaarsFunction<F>& fr) {
  CheckReport rep{"joint_eigen"};
  const int n = fr.n, H = fr.H;
  SymbolTable<F> tab{n, H, fr.q, fr.t, std::vector<ZSeries<F>>(1u << n), fr.max_p_order};
  parallel_for(tab.B.size(), [&](std::size_t I) {
    tab.B[I] = b_coefficient_series_via_log(n, static_cast<Subset>(I), fr.t, H, fr.max_p_order);
  });
  for (Subset I = 0; I < (1u << n); ++I)
    if (!scalars_equal(tab.b(I, AffineCoords(n)), one<F>())) rep.fail("b^I_0 != 1");

  const int L = static_cast<int>(fr.eps.size()) - 1;
  auto eps_times_f = [&](auto coeff_of_l) {
    ZSeries<F> out(n, H, fr.max_p_order);
    for (int l = 0; l <= L; ++l) {
      const F e = coeff_of_l(l);
      if (is_zero(e)) continue;
      out += zseries_mul(ZSeries<F>::monomial(delta_coords(n, l), e, H, fr.max_p_order), fr.f);
    }
    return out;
  };

  for (int r = 0; r <= n; ++r) {
    std::vector<F> w(1u << n, zero<F>());
    for (Subset I = 0; I < (1u << n); ++I)
      if (subset_size(I) == r) w[I] = one<F>();
    const auto lhs = apply_modified(tab, fr.s, w, fr.f);
    const auto rhs = eps_times_f([&](int l) { return fr.eps[l][r]; });
    detail::compare_zero(rep, lhs - rhs, fr.max_p_order, "E^(" + std::to_string(r) + ")");
  }
  for (const auto& ur : {Rational(2, 3), Rational(-5, 7), Rational(3, 11)}) {
    const F u = from_rational<F>(ur);
    std::vector<F> w(1u << n);
    for (Subset I = 0; I < (1u << n); ++I) w[I] = ipow(F(-u), subset_size(I));
    const auto lhs = apply_modified(tab, fr.s, w, fr.f);
    const auto rhs = eps_times_f([&](int l) { return detail::eps_value(fr.eps[l], u); });
    detail::compare_zero(rep, lhs - rhs, fr.max_p_order, "E(u)");
  }
  if (!scalars_equal(fr.f.coeff(AffineCoords(n)), one<F>())) rep.fail("f_0 != 1");
  for (int l = 1; l * n <= H; ++l)
    if (!is_zero(fr.f.coeff(delta_coords(n, l)))) rep.fail("f_{l delta} != 0 at l=" + std::to_string(l));
  return rep;
}

// Compares two solutions coefficientwise (e.g. computed with different c).
template <Field F>
CheckReport compare_functions(const RuijsenaarsFunction<F>& a, const RuijsenaarsFunction<F>& b,
                              const std::string& name) {
  CheckReport rep{name};
  const auto diff = a.f - b.f;
  for (const auto& [beta, c] : diff.terms())
    if (!field_traits<F>::negligible(c, 1.0)) rep.fail("coefficient differs at beta=" + beta.str());
  for (std::size_t l = 0; l < std::min(a.eps.size(), b.eps.size()); ++l)
    for (int r = 0; r <= a.n; ++r)
      if (!scalars_equal(a.eps[l][r], b.eps[l][r]))
        rep.fail("eigenvalue differs at l=" + std::to_string(l) + " r=" + std::to_string(r));
  rep.checked = static_cast<long>(a.f.terms().size());
  return rep;
}

// P_lambda(x;p) = x^lambda f(x; t^rho q^lambda; p), compared up to heights
// <= H and p-orders <= K, together with the eigenvalue series.
template <Field F>
CheckReport specialize_to_symmetric(const RuijsenaarsFunction<F>& fr, const EllipticMacdonald<F>& em) {
  CheckReport rep{"specialize_to_symmetric"};
  const int n = fr.n;
  const auto s = t_rho_q_lambda(em.lambda, em.q, em.t);
  for (int i = 0; i < n; ++i)
    if (!scalars_equal(s[i], fr.s[i])) throw ConfigError("f was not computed at s = t^rho q^lambda");
  const int K = em.K;
  const int kmax = fr.max_p_order < 0 ? K : std::min(K, fr.max_p_order);

  ZSeries<F> from_poly(n, fr.H);
  for (int k = 0; k <= kmax; ++k) {
    const auto lp = m_to_laurent(em.layers[k]);
    for (const auto& [e, c] : lp.terms()) {
      const auto beta = monomial_to_coords(k, e - em.lambda);
      if (!beta) {
        rep.fail("monomial x^" + e.str() + " at p^" + std::to_string(k) + " lies outside the z-monoid");
        continue;
      }
      from_poly.add(*beta, c);
    }
  }
  for (const auto& b : coords_up_to_height(n, fr.H)) {
    if (b[0] > kmax) continue;
    ++rep.checked;
    if (!scalars_equal(from_poly.coeff(b), fr.f.coeff(b)))
      throw MismatchedCoefficient("x^lambda f and P_lambda differ at beta=" + b.str());
  }
  for (int l = 0; l <= kmax && l < static_cast<int>(fr.eps.size()); ++l)
    for (int r = 0; r <= n; ++r) {
      ++rep.checked;
      if (!scalars_equal(fr.eps[l][r], em.eigenvalues[r][l]))
        throw MismatchedCoefficient("eigenvalue eps^(" + std::to_string(r) + ") differs at p^" + std::to_string(l));
    }
  return rep;
}

// (s_2, ..., s_n, s_1)
template <class T>
std::vector<T> rotate_left(const std::vector<T>& s) {
  std::vector<T> r(s.begin() + 1, s.end());
  r.push_back(s.front());
  return r;
}

// Coefficient transport for f(x_2,...,x_n,p x_1; rot s; p) = f(x;s;p):
// z'_j = z_{j+1}, hence f_gamma(rot s) = f_beta(s) with beta_j = gamma_{j-1}.
inline AffineCoords rotation_source(const AffineCoords& gamma) {
  const int n = gamma.size();
  AffineCoords beta(n);
  for (int j = 0; j < n; ++j) beta[j] = gamma[(j + n - 1) % n];
  return beta;
}

// z-variables of a point: z_0 = p x_1/x_n, z_i = x_{i+1}/x_i.
inline std::vector<Complex> z_variables(const std::vector<Complex>& x, Complex p) {
  const int n = static_cast<int>(x.size());
  std::vector<Complex> z(n);
  z[0] = p * x[0] / x[n - 1];
  for (int i = 1; i < n; ++i) z[i] = x[i] / x[i - 1];
  return z;
}

template <Field F>
Complex eval_zseries_at(const ZSeries<F>& f, const std::vector<Complex>& z) {
  Complex sum{0, 0};
  for (const auto& [b, c] : f.terms()) {
    Complex m = to_complex(c);
    for (int i = 0; i < b.size(); ++i)
      if (b[i]) m *= complex_ipow(z[i], b[i]);
    sum += m;
  }
  return sum;
}

template <Field F>
CheckReport rotation_check(const OperatorContext<F>& ctx, int H) {
  CheckReport rep{"rotation"};
  const int n = ctx.n;
  auto fa = stationary_ruijsenaars(ctx, H);
  OperatorContext<F> rc = ctx;
  rc.s = rotate_left(*ctx.s);
  auto fb = stationary_ruijsenaars(rc, H);
  for (const auto& gamma : coords_up_to_height(n, H)) {
    ++rep.checked;
    if (!scalars_equal(fb.f.coeff(gamma), fa.f.coeff(rotation_source(gamma))))
      rep.fail("f_gamma(rot s) != f_beta(s) at gamma=" + gamma.str());
  }
  for (std::size_t l = 0; l < fa.eps.size(); ++l)
    for (int r = 0; r <= n; ++r) {
      ++rep.checked;
      if (!scalars_equal(fa.eps[l][r], fb.eps[l][r]))
        rep.fail("eps^(" + std::to_string(r) + ")_" + std::to_string(l) + " not rotation invariant");
    }

  // Direct substitution x -> (x_2, ..., x_n, p x_1) at a point inside the
  // domain of convergence, validating the transport rule above.
  std::vector<Complex> x(n);
  for (int i = 0; i < n; ++i) x[i] = std::polar(std::pow(0.2, i), 0.3 + 0.7 * i);
  const Complex p = 0.2 * std::pow(0.2, n - 1) * 0.5;
  std::vector<Complex> xr(x.begin() + 1, x.end());
  xr.push_back(p * x[0]);
  const Complex lhs = eval_zseries_at(fb.f, z_variables(xr, p));
  const Complex rhs = eval_zseries_at(fa.f, z_variables(x, p));
  const double diff = std::abs(lhs - rhs);
  rep.notes.push_back("direct substitution |f(x';rot s) - f(x;s)| = " + std::to_string(diff));
  if (diff > 1e-12 * std::max(1.0, std::abs(rhs))) rep.fail("direct substitution disagrees");
  return rep;
}

template <Field F>
struct ReflectionResult {
  CheckReport report = CheckReport("reflection");
  std::vector<F> gamma;          // gamma(s;p|q,t) coefficients of p^k
  std::vector<F> gamma_reflected;  // gamma(s;p|q,q/t)
};

// f(x;s;p|q,q/t) = gamma(s;p|q,t) prod_{i<j} Gamma(t x_j/x_i)/Gamma(q x_j/(t x_i)) f(x;s;p|q,t)
template <Field F>
ReflectionResult<F> reflection_check(const OperatorContext<F>& ctx, int H) {
  ReflectionResult<F> res;
  auto& rep = res.report;
  const int n = ctx.n;
  const F q = ctx.q, t = ctx.t, tr = F(q / t);
  OperatorContext<F> cr = ctx;
  cr.t = tr;
  auto f1 = stationary_ruijsenaars(ctx, H);
  auto f2 = stationary_ruijsenaars(cr, H);
  const auto G = gamma_ratio_zseries(n, t, tr, q, H);
  const auto Gr = gamma_ratio_zseries(n, tr, t, q, H);

  auto quotient = [&](const ZSeries<F>& num, const ZSeries<F>& g, const ZSeries<F>& den, std::vector<F>& out,
                      const std::string& label) {
    const auto Q = zseries_mul(num, zseries_unit_inverse(zseries_mul(g, den)));
    for (const auto& [b, c] : Q.terms())
      if (!is_delta_multiple(b) && !field_traits<F>::negligible(c, 1.0))
        throw NonConstantQuotient(label + ": quotient depends on x at beta=" + b.str());
    out.assign(H / n + 1, zero<F>());
    for (int l = 0; l * n <= H; ++l) out[l] = Q.coeff(delta_coords(n, l));
    ++rep.checked;
  };
  quotient(f2.f, G, f1.f, res.gamma, "t -> q/t");
  quotient(f1.f, Gr, f2.f, res.gamma_reflected, "q/t -> t");

  if (!scalars_equal(res.gamma[0], one<F>())) rep.fail("gamma(s;0) != 1");
  PSeries<F> g1(H / n, zero<F>()), g2(H / n, zero<F>());
  for (int l = 0; l <= H / n; ++l) {
    g1[l] = res.gamma[l];
    g2[l] = res.gamma_reflected[l];
  }
  const auto prod = g1 * g2;
  for (int l = 0; l <= H / n; ++l) {
    ++rep.checked;
    if (!scalars_equal(prod[l], l == 0 ? one<F>() : zero<F>()))
      rep.fail("gamma(t) gamma(q/t) != 1 at p^" + std::to_string(l));
  }
  for (std::size_t l = 0; l < f1.eps.size(); ++l)
    for (int r = 0; r <= n; ++r) {
      ++rep.checked;
      if (!scalars_equal(f1.eps[l][r], f2.eps[l][r]))
        rep.fail("eps^(" + std::to_string(r) + ")_" + std::to_string(l) + " changes under t -> q/t");
    }
  return res;
}

// Fits log max_{ht(mu)=h} |f_mu| / |q|^{d(mu)} ~ log C - h log sigma.
template <Field F>
std::pair<double, double> decay_fit(const RuijsenaarsFunction<F>& fr) {
  std::vector<double> hs, ys;
  const double lq = std::log(std::abs(to_complex(fr.q)));
  for (int h = 1; h <= fr.H; ++h) {
    double best = -1e300;
    for (const auto& [b, c] : fr.f.terms())
      if (height(b) == h) best = std::max(best, std::log(std::abs(to_complex(c))) - dstat(b) * lq);
    if (best > -1e299) {
      hs.push_back(h);
      ys.push_back(best);
    }
  }
  if (hs.size() < 2) return {1.0, 1.0};
  double mh = 0, my = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    mh += hs[i];
    my += ys[i];
  }
  mh /= hs.size();
  my /= hs.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    sxy += (hs[i] - mh) * (ys[i] - my);
    sxx += (hs[i] - mh) * (hs[i] - mh);
  }
  const double slope = sxy / sxx;
  double logC = -1e300;
  for (std::size_t i = 0; i < hs.size(); ++i) logC = std::max(logC, ys[i] - slope * hs[i]);
  return {std::exp(logC), std::exp(-slope)};
}

}  // namespace ruij
