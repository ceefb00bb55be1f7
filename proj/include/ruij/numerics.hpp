#pragma once

// Double-precision evaluation: truncated series, theta and elliptic gamma
// products, torus quadrature, the orthogonality pairing and the
// trigonometric kernel transform.

#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ruij/eigen_asymptotic.hpp"

namespace ruij {

struct SeriesValue {
  Complex value;
  bool tail_warning = false;  // last retained layer exceeds 1e-3 of the sum
};

inline bool tail_exceeds(Complex last, Complex total) { return std::abs(last) > 1e-3 * std::abs(total); }

// Double-precision copies, made once before a quadrature loop so that
// exact coefficients are not converted again at every grid point.
template <Field F>
LaurentPoly<Complex> complexify(const LaurentPoly<F>& f) {
  LaurentPoly<Complex> r(f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, to_complex(c));
  return r;
}

template <Field F>
ZSeries<Complex> complexify(const ZSeries<F>& f) {
  ZSeries<Complex> r(f.nvars(), f.height_cutoff(), f.p_cutoff());
  for (const auto& [b, c] : f.terms()) r.add(b, to_complex(c));
  return r;
}

template <Field F>
SeriesValue eval_series(const PSeries<LaurentPoly<F>>& s, const std::vector<Complex>& x, Complex p) {
  Complex sum{0, 0}, pk{1, 0}, last{0, 0};
  for (int k = 0; k <= s.order(); ++k) {
    last = pk * evaluate(s[k], x);
    sum += last;
    pk *= p;
  }
  return {sum, s.order() > 0 && tail_exceeds(last, sum)};
}

// Same, for a vector of p-layers in the m-basis.
template <Field F>
SeriesValue eval_layers(const std::vector<MBasisVector<F>>& layers, const std::vector<Complex>& x, Complex p) {
  Complex sum{0, 0}, pk{1, 0}, last{0, 0};
  for (const auto& layer : layers) {
    last = pk * evaluate(m_to_laurent(layer), x);
    sum += last;
    pk *= p;
  }
  return {sum, layers.size() > 1 && tail_exceeds(last, sum)};
}

template <Field F>
SeriesValue eval_zseries(const ZSeries<F>& f, const std::vector<Complex>& z) {
  const int H = f.height_cutoff();
  std::vector<Complex> by_height(H + 1, Complex{0, 0});
  for (const auto& [b, c] : f.terms()) {
    Complex m = to_complex(c);
    for (int i = 0; i < b.size(); ++i)
      if (b[i]) m *= complex_ipow(z[i], b[i]);
    by_height[height(b)] += m;
  }
  Complex sum{0, 0};
  for (const auto& v : by_height) sum += v;
  return {sum, H > 0 && tail_exceeds(by_height[H], sum)};
}

// f as a function of x at nome p, through z_0 = p x_1/x_n, z_i = x_{i+1}/x_i.
template <Field F>
SeriesValue eval_zseries_x(const ZSeries<F>& f, const std::vector<Complex>& x, Complex p) {
  return eval_zseries(f, z_variables(x, p));
}

// ---------------------------------------------------------------- products

inline constexpr double kProductTol = 1e-16;
inline constexpr double kPoleTol = 1e-10;

inline Complex checked_factor(Complex w, const char* what) {
  const Complex f = 1.0 - w;
  if (std::abs(f) < kPoleTol) throw PoleProximity(std::string(what) + ": argument is within 1e-10 of a pole");
  return f;
}

// (a;q)_inf
inline Complex qpoch_inf(Complex a, Complex q) {
  if (std::abs(q) >= 1) throw ConfigError("(a;q)_inf needs |q| < 1");
  Complex r{1, 0}, w = a;
  for (int m = 0; m < 100000 && std::abs(w) > kProductTol; ++m) {
    r *= 1.0 - w;
    w *= q;
  }
  return r;
}

// theta(z;p) = (z;p)_inf (p/z;p)_inf
inline Complex theta_numeric(Complex z, Complex p) {
  if (std::abs(p) >= 1) throw ConfigError("theta needs |p| < 1");
  if (std::abs(z) == 0) throw PoleProximity("theta at z = 0");
  return qpoch_inf(z, p) * qpoch_inf(p / z, p);
}

// Number of factors per direction so that the geometric tail
// sum_{i+j >= M} r^{i+j} (|z| + |pq/z|) stays below 1e-12.
inline int gamma_truncation(Complex z, Complex p, Complex q) {
  const double r = std::max(std::abs(p), std::abs(q));
  if (r == 0) return 1;
  const double scale = std::abs(z) + std::abs(p * q / z) + 1.0;
  int M = 1;
  while (M < 10000) {
    const double tail = scale * std::pow(r, M) * (M + 1) / ((1 - r) * (1 - r));
    if (tail < 1e-12 * 1e-2) break;
    ++M;
  }
  return M;
}

// Gamma(z;p,q) = prod_{i,j>=0} (1 - p^{i+1} q^{j+1}/z) / (1 - p^i q^j z)
inline Complex elliptic_gamma_numeric(Complex z, Complex p, Complex q, int M = 0) {
  if (std::abs(p) >= 1 || std::abs(q) >= 1) throw ConfigError("elliptic gamma needs |p|, |q| < 1");
  if (std::abs(z) == 0) throw PoleProximity("elliptic gamma at z = 0");
  if (M <= 0) M = gamma_truncation(z, p, q);
  Complex num{1, 0}, den{1, 0};
  Complex pi{1, 0};
  for (int i = 0; i < M; ++i) {
    Complex pq = pi;
    for (int j = 0; j < M; ++j) {
      if (std::abs(pq) * (std::abs(z) + std::abs(p * q / z)) < kProductTol && j > 0) break;
      den *= checked_factor(pq * z, "elliptic gamma");
      num *= 1.0 - pq * p * q / z;
      pq *= q;
    }
    pi *= p;
    if (std::abs(pi) * (std::abs(z) + 1.0) < kProductTol) break;
  }
  return num / den;
}

// w^sym(x;p) with 1/(Gamma(w)Gamma(1/w)) = theta(w;p) theta(1/w;q).
inline Complex weight_sym_numeric(const std::vector<Complex>& x, Complex p, Complex q, Complex t) {
  const int n = static_cast<int>(x.size());
  Complex w{1, 0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex a = x[i] / x[j], b = x[j] / x[i];
      Complex g = elliptic_gamma_numeric(t * a, p, q) * elliptic_gamma_numeric(t * b, p, q);
      // theta(.;0) = 1 - z
      const Complex tp = std::abs(p) == 0 ? 1.0 - a : theta_numeric(a, p);
      const Complex tq = std::abs(q) == 0 ? 1.0 - b : theta_numeric(b, q);
      w *= g * tp * tq;
    }
  return w;
}

// ---------------------------------------------------------------- quadrature

struct QuadratureGrid {
  int n = 1;
  int N = 64;
  std::vector<double> radii;  // one per variable

  static QuadratureGrid torus(int n, int N) { return {n, N, std::vector<double>(n, 1.0)}; }
  // |y_i| = sigma^{i-1} r
  static QuadratureGrid ladder(int n, int N, double r, double sigma) {
    QuadratureGrid g{n, N, {}};
    for (int i = 0; i < n; ++i) g.radii.push_back(r * std::pow(sigma, i));
    return g;
  }
  long size() const {
    long s = 1;
    for (int i = 0; i < n; ++i) s *= N;
    return s;
  }
  std::vector<Complex> point(long idx) const {
    std::vector<Complex> y(n);
    for (int i = 0; i < n; ++i) {
      const int a = static_cast<int>(idx % N);
      idx /= N;
      y[i] = std::polar(radii[i], 2 * std::numbers::pi * a / N);
    }
    return y;
  }
};

// Sum with a fixed pairwise reduction tree.
inline Complex pairwise_sum(const std::vector<Complex>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    Complex s{0, 0};
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

// Normalized mean of fn over the grid (d omega_n = prod dy_i / (2 pi i y_i)).
inline Complex grid_mean(const QuadratureGrid& g, const std::function<Complex(const std::vector<Complex>&)>& fn) {
  const long size = g.size();
  std::vector<Complex> vals(size);
  parallel_for(static_cast<std::size_t>(size), [&](std::size_t i) { vals[i] = fn(g.point(static_cast<long>(i))); });
  return pairwise_sum(vals, 0, vals.size()) / static_cast<double>(size);
}

// ---------------------------------------------------------------- orthogonality

// <P_lambda, P_mu> = int P_lambda(x^{-1};p) P_mu(x;p) w^sym(x;p) d omega_n
template <Field F>
Complex orthogonality_check(const EllipticMacdonald<F>& em_lambda, const EllipticMacdonald<F>& em_mu, Complex p,
                            int N, bool* tail_warning = nullptr) {
  if (em_lambda.n != em_mu.n) throw DimensionMismatch("pairing of polynomials in different numbers of variables");
  const int n = em_lambda.n;
  const Complex q = to_complex(em_lambda.q), t = to_complex(em_lambda.t);
  if (std::abs(t) >= 1) throw ConfigError("orthogonality needs |t| < 1");
  std::vector<PSeries<LaurentPoly<Complex>>> polys;
  for (const auto* em : {&em_lambda, &em_mu}) {
    PSeries<LaurentPoly<Complex>> s(em->K, LaurentPoly<Complex>(n));
    for (int k = 0; k <= em->K; ++k) s[k] = complexify(m_to_laurent(em->layers[k]));
    polys.push_back(std::move(s));
  }
  std::atomic<bool> warn{false};
  const auto g = QuadratureGrid::torus(n, N);
  const Complex v = grid_mean(g, [&](const std::vector<Complex>& x) {
    std::vector<Complex> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = 1.0 / x[i];
    const auto a = eval_series(polys[0], xi, p);
    const auto b = eval_series(polys[1], x, p);
    if (a.tail_warning || b.tail_warning) warn = true;
    return a.value * b.value * weight_sym_numeric(x, p, q, t);
  });
  if (tail_warning) *tail_warning = warn;
  return v;
}

// ---------------------------------------------------------------- kernel transform

// prod_{i<=j} (t^{j-i+1} q^{l_i-l_j}; q)_{l_j - l_{j+1}} / (t^{j-i} q^{l_i-l_j+1}; q)_{l_j - l_{j+1}}, l_{n+1} = 0
template <Field F>
F b_lambda(const Exponent& lambda, const F& q, const F& t) {
  const int n = lambda.size();
  F r = one<F>();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int len = lambda[j] - (j + 1 < n ? lambda[j + 1] : 0);
      const int gap = lambda[i] - lambda[j];
      r *= pochhammer(F(ipow(t, j - i + 1) * ipow(q, gap)), q, len);
      r /= pochhammer(F(ipow(t, j - i) * ipow(q, gap + 1)), q, len);
    }
  return r;
}

// K(x,y) = prod_{i,j} (t x_i/y_j;q)_inf / (x_i/y_j;q)_inf
inline Complex cauchy_kernel(const std::vector<Complex>& x, const std::vector<Complex>& y, Complex q, Complex t) {
  Complex r{1, 0};
  for (const auto& xi : x)
    for (const auto& yj : y) {
      const Complex den = qpoch_inf(xi / yj, q);
      if (std::abs(den) < kPoleTol) throw PoleProximity("Cauchy kernel near a pole");
      r *= qpoch_inf(t * xi / yj, q) / den;
    }
  return r;
}

// w(y) = prod_{i<j} (1 - y_j/y_i) (q y_j/(t y_i);q)_inf / (t y_j/y_i;q)_inf
inline Complex transform_weight(const std::vector<Complex>& y, Complex q, Complex t) {
  const int n = static_cast<int>(y.size());
  Complex r{1, 0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex a = y[j] / y[i];
      r *= (1.0 - a) * qpoch_inf(q * a / t, q) / qpoch_inf(t * a, q);
    }
  return r;
}

struct TransformReport {
  std::vector<Complex> points_x;
  std::vector<Complex> integral;      // one per point, at radius r
  std::vector<Complex> integral_r2;   // same points, at radius r2
  std::vector<Complex> reference;     // b_lambda P_lambda(x)
  double max_rel_error = 0;
  double max_r_dependence = 0;
  Complex b{};
  bool tail_warning = false;
};

// int_{C_{r,sigma}} K(x,y) w(y) y^{lambda^vee} f(y;s^vee) d omega_n(y),
// with f the p = 0 slice of the asymptotic function at s^vee = t^{rho^vee} q^{lambda^vee}.
template <Field F>
Complex trig_transform(const Exponent& lambda, const RuijsenaarsFunction<F>& fr, const std::vector<Complex>& x,
                       double r, double sigma, int N, bool* tail_warning = nullptr) {
  const int n = lambda.size();
  const Complex q = to_complex(fr.q), t = to_complex(fr.t);
  const Exponent lv = reversal(lambda);
  std::atomic<bool> warn{false};
  const auto g = QuadratureGrid::ladder(n, N, r, sigma);
  const auto fc = complexify(fr.f);
  const Complex v = grid_mean(g, [&](const std::vector<Complex>& y) {
    Complex m{1, 0};
    for (int i = 0; i < n; ++i) m *= complex_ipow(y[i], lv[i]);
    const auto f = eval_zseries_x(fc, y, Complex{0, 0});
    if (f.tail_warning) warn = true;
    return cauchy_kernel(x, y, q, t) * transform_weight(y, q, t) * m * f.value;
  });
  if (tail_warning) *tail_warning = warn;
  return v;
}

// s^vee = reversal of t^rho q^lambda.
template <Field F>
std::vector<F> dual_spectral(const Exponent& lambda, const F& q, const F& t) {
  auto s = t_rho_q_lambda(lambda, q, t);
  std::reverse(s.begin(), s.end());
  return s;
}

// Compares the transform with b_lambda P_lambda(x) at the given points and
// at two radii.  Points must satisfy |x_i| < sigma^{n-1} min(r, r2).
template <Field F>
TransformReport trig_transform_check(const Exponent& lambda, const RuijsenaarsFunction<F>& fr,
                                     const MBasisVector<F>& p_lambda, const std::vector<std::vector<Complex>>& points,
                                     double r, double r2, double sigma, int N) {
  TransformReport rep;
  rep.b = to_complex(b_lambda(lambda, fr.q, fr.t));
  const auto lp = m_to_laurent(p_lambda);
  for (const auto& x : points) {
    bool w1 = false, w2 = false;
    const Complex a = trig_transform(lambda, fr, x, r, sigma, N, &w1);
    const Complex b = trig_transform(lambda, fr, x, r2, sigma, N, &w2);
    const Complex ref = rep.b * evaluate(lp, x);
    rep.tail_warning = rep.tail_warning || w1 || w2;
    rep.integral.push_back(a);
    rep.integral_r2.push_back(b);
    rep.reference.push_back(ref);
    rep.max_rel_error = std::max(rep.max_rel_error, std::abs(a - ref) / std::abs(ref));
    rep.max_r_dependence = std::max(rep.max_r_dependence, std::abs(a - b) / std::abs(a));
  }
  return rep;
}

// Random points with |x_i| < bound, deterministic in the seed.
inline std::vector<std::vector<Complex>> random_points(int n, int count, double bound, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> rad(0.2 * bound, 0.8 * bound), ang(0, 2 * std::numbers::pi);
  std::vector<std::vector<Complex>> pts;
  for (int k = 0; k < count; ++k) {
    std::vector<Complex> x(n);
    for (auto& v : x) v = std::polar(rad(gen), ang(gen));
    pts.push_back(std::move(x));
  }
  return pts;
}

struct PQExperiment {
  double max_deviation = 0;
  double max_value = 0;
  bool tail_warning = false;
};

// Compares P_0(x;p|q,t) with P_0(x;q|p,t) at (p,q) = (a,b) on points of the
// torus, each side truncated at p-order K.
template <Field F>
PQExperiment pq_groundstate_experiment(int n, const F& a, const F& b, const F& t, int K,
                                       const std::vector<std::vector<Complex>>& points) {
  auto build = [&](const F& q) {
    RuijsenaarsOperators<F> ops(OperatorContext<F>(n, q, t));
    return elliptic_macdonald(ops, Exponent(n), K);
  };
  const auto e1 = build(b);  // nome a, q = b
  const auto e2 = build(a);  // nome b, q = a
  PQExperiment out;
  for (const auto& x : points) {
    const auto v1 = eval_layers(e1.layers, x, to_complex(a));
    const auto v2 = eval_layers(e2.layers, x, to_complex(b));
    out.tail_warning = out.tail_warning || v1.tail_warning || v2.tail_warning;
    out.max_deviation = std::max(out.max_deviation, std::abs(v1.value - v2.value));
    out.max_value = std::max(out.max_value, std::abs(v1.value));
  }
  return out;
}

}  // namespace ruij
