#pragma once

// Truncated formal series in two gradings.
//
// PSeries<C>: powers of p, coefficients C (scalars or Laurent polynomials).
// ZSeries<F>: monomials z^beta = z_0^{k_0} ... z_{n-1}^{k_{n-1}} graded by
// height k_0 + ... + k_{n-1}, where z_0 = p x_1/x_n and z_i = x_{i+1}/x_i.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ruij/laurent.hpp"

namespace ruij {

// ---------------------------------------------------------------- PSeries

template <class C>
class PSeries {
 public:
  PSeries() = default;
  PSeries(int order, C zero_value) : zero_(std::move(zero_value)), c_(order + 1, zero_) {}

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const C& operator[](int k) const { return c_.at(k); }
  C& operator[](int k) { return c_.at(k); }
  const std::vector<C>& coeffs() const { return c_; }
  const C& zero_value() const { return zero_; }

  PSeries& operator+=(const PSeries& o) {
    check_order(o);
    for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  PSeries& operator-=(const PSeries& o) {
    check_order(o);
    for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend PSeries operator+(PSeries a, const PSeries& b) { return a += b; }
  friend PSeries operator-(PSeries a, const PSeries& b) { return a -= b; }

  // Truncated Cauchy product mod p^{K+1}.
  friend PSeries operator*(const PSeries& a, const PSeries& b) {
    a.check_order(b);
    PSeries r(a.order(), a.zero_);
    for (int i = 0; i <= a.order(); ++i)
      for (int j = 0; i + j <= a.order(); ++j) r.c_[i + j] += C(a.c_[i] * b.c_[j]);
    return r;
  }

  friend bool operator==(const PSeries& a, const PSeries& b) { return a.c_ == b.c_; }

 private:
  void check_order(const PSeries& o) const {
    if (o.order() != order()) throw DimensionMismatch("PSeries truncation orders differ");
  }
  C zero_{};
  std::vector<C> c_;
};

namespace detail {

template <Field F>
F unit_inverse_coeff(const F& a) {
  if (is_zero(a)) throw NonUnitSeries("constant term is zero");
  return inverse(a);
}

template <Field F>
LaurentPoly<F> unit_inverse_coeff(const LaurentPoly<F>& a) {
  if (a.size() != 1) throw NonUnitSeries("constant term is not a monomial");
  const auto& [e, c] = *a.terms().begin();
  return LaurentPoly<F>::monomial(-e, inverse(c));
}

}  // namespace detail

// Inverse mod p^{K+1} of a series whose constant term is a unit.
template <class C>
PSeries<C> pseries_unit_inverse(const PSeries<C>& a) {
  const int K = a.order();
  PSeries<C> b(K, a.zero_value());
  const C inv0 = detail::unit_inverse_coeff(a[0]);
  b[0] = inv0;
  for (int m = 1; m <= K; ++m) {
    C acc = a.zero_value();
    for (int i = 1; i <= m; ++i) acc += C(a[i] * b[m - i]);
    b[m] = C(-(inv0 * acc));
  }
  return b;
}

// prod_{m=start}^{K} (1 - p^m w) mod p^{K+1}, w a Laurent polynomial.
template <Field F>
PSeries<LaurentPoly<F>> p_product(const LaurentPoly<F>& w, int start, int K) {
  const int n = w.nvars();
  PSeries<LaurentPoly<F>> r(K, LaurentPoly<F>(n));
  r[0] = LaurentPoly<F>::constant(n, one<F>());
  for (int m = start; m <= K; ++m) {
    PSeries<LaurentPoly<F>> f(K, LaurentPoly<F>(n));
    if (m == 0) {
      f[0] = LaurentPoly<F>::constant(n, one<F>()) - w;
    } else {
      f[0] = LaurentPoly<F>::constant(n, one<F>());
      f[m] = -w;
    }
    r = r * f;
  }
  return r;
}

// theta(w;p) = (w;p)_inf (p/w;p)_inf mod p^{K+1}, w a nonzero monomial c x^e.
template <Field F>
PSeries<LaurentPoly<F>> theta_p_expansion(const LaurentPoly<F>& w, int K) {
  if (w.size() != 1) throw Error("theta_p_expansion expects a single nonzero monomial");
  const auto& [e, c] = *w.terms().begin();
  const auto winv = LaurentPoly<F>::monomial(-e, inverse(c));
  return p_product(w, 0, K) * p_product(winv, 1, K);
}

// ---------------------------------------------------------------- affine coordinates

using AffineCoords = Exponent;

inline int height(const AffineCoords& b) { return b.total(); }

// sum_j max(k_j - k_{j-1}, 0) with k_n := k_0, i.e. j runs cyclically.
inline int dstat(const AffineCoords& b) {
  const int n = b.size();
  int d = 0;
  for (int j = 1; j <= n; ++j) {
    const int kj = b[j % n], kprev = b[j - 1];
    if (kj > kprev) d += kj - kprev;
  }
  return d;
}

inline AffineCoords delta_coords(int n, int k = 1) {
  AffineCoords d(n);
  for (int i = 0; i < n; ++i) d[i] = k;
  return d;
}

inline bool is_delta_multiple(const AffineCoords& b) {
  for (int i = 1; i < b.size(); ++i)
    if (b[i] != b[0]) return false;
  return true;
}

inline bool coords_leq(const AffineCoords& a, const AffineCoords& b) {
  for (int i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// <eps_j, beta> = k_j - k_{j-1}, j = 1..n, k_n := k_0; returned 0-indexed.
inline Exponent eps_pairing(const AffineCoords& b) {
  const int n = b.size();
  Exponent r(n);
  for (int j = 1; j <= n; ++j) r[j - 1] = b[j % n] - b[j - 1];
  return r;
}

// x-exponent of z^beta, with the power of p returned separately (= k_0).
inline std::pair<int, Exponent> coords_to_monomial(const AffineCoords& b) {
  const Exponent pe = eps_pairing(b);
  return {b[0], -pe};
}

// p^k x^e as z^beta, when that monomial lies in the z-monoid.
inline std::optional<AffineCoords> monomial_to_coords(int k, const Exponent& e) {
  const int n = e.size();
  if (e.total() != 0 || k < 0) return std::nullopt;
  AffineCoords b(n);
  b[0] = k;
  for (int j = 1; j < n; ++j) {
    b[j] = b[j - 1] - e[j - 1];
    if (b[j] < 0) return std::nullopt;
  }
  return b;
}

// x_j/x_i for 1-based i < j.
inline AffineCoords ratio_coords(int n, int i, int j) {
  AffineCoords b(n);
  for (int m = i; m < j; ++m) b[m] = 1;
  return b;
}

// p x_i/x_j for 1-based i < j.
inline AffineCoords dual_ratio_coords(int n, int i, int j) {
  return delta_coords(n) - ratio_coords(n, i, j);
}

// All coordinates of height exactly h, lexicographically ordered.
inline std::vector<AffineCoords> coords_of_height(int n, int h) {
  std::vector<AffineCoords> out;
  AffineCoords b(n);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      b[pos] = left;
      out.push_back(b);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      b[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (n == 0) return out;
  rec(rec, 0, h);
  return out;
}

inline std::vector<AffineCoords> coords_up_to_height(int n, int H) {
  std::vector<AffineCoords> out;
  for (int h = 0; h <= H; ++h) {
    auto level = coords_of_height(n, h);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------------- ZSeries

template <Field F>
class ZSeries {
 public:
  using Map = std::map<AffineCoords, F>;

  ZSeries() = default;
  ZSeries(int n, int H, int p_cutoff = -1) : n_(n), H_(H), P_(p_cutoff) {}

  static ZSeries unit(int n, int H, int p_cutoff = -1) {
    ZSeries s(n, H, p_cutoff);
    s.add(AffineCoords(n), one<F>());
    return s;
  }
  static ZSeries monomial(const AffineCoords& b, const F& c, int H, int p_cutoff = -1) {
    ZSeries s(b.size(), H, p_cutoff);
    s.add(b, c);
    return s;
  }

  int nvars() const { return n_; }
  int height_cutoff() const { return H_; }
  // Terms with k_0 above this are dropped (-1: none).  Products respect it
  // because k_0 only grows under multiplication.
  int p_cutoff() const { return P_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  F coeff(const AffineCoords& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? zero<F>() : it->second;
  }

  // Terms above the height (or p) cutoff are dropped.
  void add(const AffineCoords& b, const F& c) {
    if (b.size() != n_) throw DimensionMismatch("ZSeries: coordinates of wrong length");
    if (height(b) > H_ || (P_ >= 0 && b[0] > P_) || ruij::is_zero(c)) return;
    for (int v : b)
      if (v < 0) throw Error("ZSeries: negative affine coordinate");
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (ruij::is_zero(it->second)) terms_.erase(it);
    }
  }

  void set(const AffineCoords& b, const F& c) {
    terms_.erase(b);
    add(b, c);
  }

  ZSeries& operator+=(const ZSeries& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
  }
  ZSeries& operator-=(const ZSeries& o) {
    check_same(o);
    for (const auto& [b, c] : o.terms_) add(b, F(-c));
    return *this;
  }
  ZSeries& operator*=(const F& s) {
    if (ruij::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= s;
    return *this;
  }
  friend ZSeries operator+(ZSeries a, const ZSeries& b) { return a += b; }
  friend ZSeries operator-(ZSeries a, const ZSeries& b) { return a -= b; }
  friend ZSeries operator*(ZSeries a, const F& s) { return a *= s; }
  friend ZSeries operator*(const F& s, ZSeries a) { return a *= s; }
  friend bool operator==(const ZSeries& a, const ZSeries& b) {
    return a.n_ == b.n_ && a.H_ == b.H_ && a.terms_ == b.terms_;
  }

  void prune(double scale) {
    if constexpr (!field_traits<F>::exact) {
      for (auto it = terms_.begin(); it != terms_.end();)
        it = field_traits<F>::negligible(it->second, scale) ? terms_.erase(it) : std::next(it);
    }
  }

 private:
  void check_same(const ZSeries& o) const {
    if (o.n_ != n_ || o.H_ != H_) throw DimensionMismatch("ZSeries: mismatched dimension or cutoff");
  }

  int n_ = 0;
  int H_ = 0;
  int P_ = -1;
  Map terms_;
};

inline int combined_p_cutoff(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  return std::min(a, b);
}

template <Field F>
ZSeries<F> zseries_mul(const ZSeries<F>& a, const ZSeries<F>& b) {
  if (a.nvars() != b.nvars() || a.height_cutoff() != b.height_cutoff())
    throw DimensionMismatch("zseries_mul: mismatched series");
  const int H = a.height_cutoff();
  ZSeries<F> r(a.nvars(), H, combined_p_cutoff(a.p_cutoff(), b.p_cutoff()));
  for (const auto& [ba, ca] : a.terms()) {
    const int ha = height(ba);
    for (const auto& [bb, cb] : b.terms()) {
      if (ha + height(bb) > H) continue;
      r.add(ba + bb, F(ca * cb));
    }
  }
  return r;
}

template <Field F>
ZSeries<F> operator*(const ZSeries<F>& a, const ZSeries<F>& b) {
  return zseries_mul(a, b);
}

// Inverse up to height H, solved height by height.
template <Field F>
ZSeries<F> zseries_unit_inverse(const ZSeries<F>& a) {
  const int n = a.nvars(), H = a.height_cutoff();
  const F a0 = a.coeff(AffineCoords(n));
  if (is_zero(a0)) throw NonUnitSeries("ZSeries has zero constant term");
  const F inv0 = inverse(a0);
  ZSeries<F> b(n, H, a.p_cutoff());
  b.add(AffineCoords(n), inv0);
  for (int h = 1; h <= H; ++h)
    for (const auto& mu : coords_of_height(n, h)) {
      if (a.p_cutoff() >= 0 && mu[0] > a.p_cutoff()) continue;
      F acc = zero<F>();
      for (const auto& [beta, cb] : a.terms()) {
        if (height(beta) == 0 || !coords_leq(beta, mu)) continue;
        acc += F(cb * b.coeff(mu - beta));
      }
      b.add(mu, F(-(inv0 * acc)));
    }
  return b;
}

// exp(L) for L without constant term, from ht(mu) E_mu = sum ht(b) L_b E_{mu-b}.
template <Field F>
ZSeries<F> zseries_exp(const ZSeries<F>& L) {
  const int n = L.nvars(), H = L.height_cutoff();
  if (!is_zero(L.coeff(AffineCoords(n)))) throw NonUnitSeries("zseries_exp: argument has a constant term");
  ZSeries<F> E = ZSeries<F>::unit(n, H, L.p_cutoff());
  for (int h = 1; h <= H; ++h)
    for (const auto& mu : coords_of_height(n, h)) {
      if (L.p_cutoff() >= 0 && mu[0] > L.p_cutoff()) continue;
      F acc = zero<F>();
      for (const auto& [beta, cb] : L.terms()) {
        if (!coords_leq(beta, mu)) continue;
        acc += F(F(height(beta)) * cb * E.coeff(mu - beta));
      }
      E.add(mu, F(acc / F(h)));
    }
  return E;
}

// (1 - a z^m) as a series.
template <Field F>
ZSeries<F> one_minus(const AffineCoords& m, const F& a, int H) {
  ZSeries<F> s = ZSeries<F>::unit(m.size(), H);
  s.add(m, F(-a));
  return s;
}

// theta(a z^Z; p) where z^Z = x_j/x_i (i<j) so that p/(z^Z) = z^{delta - Z}:
// prod_{m>=0} (1 - a z^{Z + m delta})(1 - a^{-1} z^{delta - Z + m delta}).
template <Field F>
ZSeries<F> theta_zseries(const F& a, const AffineCoords& Z, int H, int p_cutoff = -1) {
  const int n = Z.size();
  const AffineCoords D = delta_coords(n);
  const AffineCoords Zc = D - Z;
  if (height(Z) <= 0 || height(Zc) <= 0) throw NonUnitSeries("theta_zseries: argument outside the z-monoid");
  const F ainv = inverse(a);
  ZSeries<F> r = ZSeries<F>::unit(n, H, p_cutoff);
  for (int m = 0; height(Z) + m * n <= H || height(Zc) + m * n <= H; ++m) {
    if (p_cutoff >= 0 && m > p_cutoff) break;
    const AffineCoords shift = delta_coords(n, m);
    r = r * one_minus(Z + shift, a, H);
    r = r * one_minus(Zc + shift, ainv, H);
  }
  return r;
}

// log (a z^W; p, q)_inf = - sum_{k>=1} a^k z^{kW} / (k (1-p^k)(1-q^k)),
// with 1/(1-p^k) = sum_m z^{k m delta}.  W must have positive height.
template <Field F>
ZSeries<F> log_qp_pochhammer(const F& a, const AffineCoords& W, const F& q, int H) {
  const int n = W.size();
  const int hw = height(W);
  if (hw <= 0) throw NonUnitSeries("log_qp_pochhammer: argument of nonpositive height");
  ZSeries<F> L(n, H);
  for (int k = 1; k * hw <= H; ++k) {
    const F base = F(-ipow(a, k) / (F(k) * (one<F>() - ipow(q, k))));
    AffineCoords kW(n);
    for (int i = 0; i < n; ++i) kW[i] = k * W[i];
    for (int m = 0; k * hw + k * m * n <= H; ++m) L.add(kW + delta_coords(n, k * m), base);
  }
  return L;
}

// One factor of gamma_ratio_zseries: log Gamma(a x_j/x_i; p, q).
// Gamma(w) = (pq/w;p,q)/(w;p,q), and pq/(a x_j/x_i) = (q/a) z^{delta - Z}.
template <Field F>
ZSeries<F> log_elliptic_gamma(const F& a, const AffineCoords& Z, const F& q, int H) {
  const AffineCoords Zc = delta_coords(Z.size()) - Z;
  return log_qp_pochhammer(F(q / a), Zc, q, H) - log_qp_pochhammer(a, Z, q, H);
}

// prod_{i<j} Gamma(num x_j/x_i; p,q) / Gamma(den x_j/x_i; p,q).  The
// reflection factor uses num = t, den = q/t.
template <Field F>
ZSeries<F> gamma_ratio_zseries(int n, const F& num, const F& den, const F& q, int H) {
  ZSeries<F> L(n, H);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const AffineCoords Z = ratio_coords(n, i, j);
      L += log_elliptic_gamma(num, Z, q, H);
      L -= log_elliptic_gamma(den, Z, q, H);
    }
  return zseries_exp(L);
}

}  // namespace ruij
