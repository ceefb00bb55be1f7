#pragma once

// Sparse Laurent polynomials in n variables over a field F.

#include <algorithm>
#include <array>
#include <compare>
#include <initializer_list>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ruij/field.hpp"

namespace ruij {

inline constexpr int kMaxVars = 8;

// Integer vector of fixed small capacity.  Used for monomial exponents,
// weights and affine coordinates; ordering is lexicographic.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(int n) : n_(n) {
    if (n < 0 || n > kMaxVars) throw DimensionMismatch("unsupported number of variables");
  }
  Exponent(std::initializer_list<int> v) : Exponent(static_cast<int>(v.size())) {
    std::copy(v.begin(), v.end(), e_.begin());
  }
  explicit Exponent(const std::vector<int>& v) : Exponent(static_cast<int>(v.size())) {
    std::copy(v.begin(), v.end(), e_.begin());
  }

  int size() const { return n_; }
  int& operator[](int i) { return e_[i]; }
  int operator[](int i) const { return e_[i]; }
  const int* begin() const { return e_.data(); }
  const int* end() const { return e_.data() + n_; }
  int* begin() { return e_.data(); }
  int* end() { return e_.data() + n_; }

  int total() const { return std::accumulate(begin(), end(), 0); }
  std::vector<int> to_vector() const { return {begin(), end()}; }

  Exponent& operator+=(const Exponent& o) {
    check_same(o);
    for (int i = 0; i < n_; ++i) e_[i] += o.e_[i];
    return *this;
  }
  Exponent& operator-=(const Exponent& o) {
    check_same(o);
    for (int i = 0; i < n_; ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
  friend Exponent operator*(Exponent a, int k) {
    for (int i = 0; i < a.n_; ++i) a.e_[i] *= k;
    return a;
  }
  friend Exponent operator-(Exponent a) {
    for (int i = 0; i < a.n_; ++i) a.e_[i] = -a.e_[i];
    return a;
  }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < n_; ++i) os << (i ? "," : "") << e_[i];
    os << ')';
    return os.str();
  }

 private:
  void check_same(const Exponent& o) const {
    if (o.n_ != n_) throw DimensionMismatch("exponent length mismatch");
  }
  std::array<int, kMaxVars> e_{};
  int n_ = 0;
};

// Bitmask over variables 0..n-1; bit i set means index i+1 is in the subset.
using Subset = unsigned;

inline int subset_size(Subset I) { return __builtin_popcount(I); }
inline bool in_subset(Subset I, int i) { return (I >> i) & 1u; }

inline std::vector<int> subset_to_indices(Subset I, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (in_subset(I, i)) out.push_back(i + 1);
  return out;
}

// rho = (n-1, ..., 0)
inline Exponent rho(int n) {
  Exponent r(n);
  for (int i = 0; i < n; ++i) r[i] = n - 1 - i;
  return r;
}

// phi = (1, 0, ..., 0, -1)
inline Exponent phi(int n) {
  Exponent r(n);
  if (n >= 2) {
    r[0] = 1;
    r[n - 1] = -1;
  }
  return r;
}

inline Exponent reversal(const Exponent& a) {
  Exponent r(a.size());
  for (int i = 0; i < a.size(); ++i) r[i] = a[a.size() - 1 - i];
  return r;
}

template <Field F>
class LaurentPoly {
 public:
  using Map = std::map<Exponent, F>;

  LaurentPoly() = default;
  explicit LaurentPoly(int n) : n_(n) {}

  static LaurentPoly constant(int n, const F& c) {
    LaurentPoly p(n);
    p.add_term(Exponent(n), c);
    return p;
  }
  static LaurentPoly monomial(const Exponent& e, const F& c = one<F>()) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  int nvars() const { return n_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  F coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero<F>() : it->second;
  }

  void add_term(const Exponent& e, const F& c) {
    if (e.size() != n_) throw DimensionMismatch("monomial has wrong number of variables");
    if (ruij::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (ruij::is_zero(it->second)) terms_.erase(it);
    }
  }

  // Drops numerically negligible terms (no-op in exact mode).
  void prune(double scale) {
    if constexpr (!field_traits<F>::exact) {
      for (auto it = terms_.begin(); it != terms_.end();) {
        if (field_traits<F>::negligible(it->second, scale))
          it = terms_.erase(it);
        else
          ++it;
      }
    }
  }

  double max_magnitude() const {
    double m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, field_traits<F>::magnitude(c));
    return m;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, F(-c));
    return *this;
  }
  LaurentPoly& operator*=(const F& s) {
    if (ruij::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const F& s) { return a *= s; }
  friend LaurentPoly operator*(const F& s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= F(-1); }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  // Multiplies by the monomial c*x^e.
  LaurentPoly shifted(const Exponent& e, const F& c = one<F>()) const {
    LaurentPoly r(n_);
    if (ruij::is_zero(c)) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m + e, F(v * c));
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      if constexpr (field_traits<F>::exact)
        os << it->second.get_str();
      else
        os << it->second;
      os << "*x^" << it->first.str();
    }
    return os.str();
  }

 private:
  void check_same(const LaurentPoly& o) const {
    if (o.n_ != n_) throw DimensionMismatch("Laurent polynomials in different numbers of variables");
  }

  int n_ = 0;
  Map terms_;
};

template <Field F>
LaurentPoly<F> laurent_mul(const LaurentPoly<F>& a, const LaurentPoly<F>& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("laurent_mul: dimension mismatch");
  LaurentPoly<F> r(a.nvars());
  if (a.is_zero() || b.is_zero()) return r;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [ea, ca] : small.terms())
    for (const auto& [eb, cb] : large.terms()) r.add_term(ea + eb, F(ca * cb));
  if constexpr (!field_traits<F>::exact) r.prune(a.max_magnitude() * b.max_magnitude());
  return r;
}

template <Field F>
LaurentPoly<F> operator*(const LaurentPoly<F>& a, const LaurentPoly<F>& b) {
  return laurent_mul(a, b);
}

namespace detail {

inline void exponent_box(const Exponent& e, Exponent& lo, Exponent& hi, bool first) {
  for (int i = 0; i < e.size(); ++i) {
    if (first || e[i] < lo[i]) lo[i] = e[i];
    if (first || e[i] > hi[i]) hi[i] = e[i];
  }
}

}  // namespace detail

// Exact quotient num/den in the Laurent ring.  Lex leading-term division; a
// quotient monomial outside the degree box forced by num and den proves the
// division is not exact.
template <Field F>
LaurentPoly<F> laurent_exact_div(const LaurentPoly<F>& num, const LaurentPoly<F>& den) {
  const int n = num.nvars();
  if (den.nvars() != n) throw DimensionMismatch("laurent_exact_div: dimension mismatch");
  if (den.is_zero()) throw DivisionByZero("laurent_exact_div: zero divisor");
  LaurentPoly<F> q(n);
  if (num.is_zero()) return q;

  Exponent nlo(n), nhi(n), dlo(n), dhi(n);
  bool first = true;
  for (const auto& kv : num.terms()) {
    detail::exponent_box(kv.first, nlo, nhi, first);
    first = false;
  }
  first = true;
  for (const auto& kv : den.terms()) {
    detail::exponent_box(kv.first, dlo, dhi, first);
    first = false;
  }
  const Exponent qlo = nlo - dlo, qhi = nhi - dhi;

  const auto& [dlead, dcoef] = *den.terms().rbegin();
  const F dinv = inverse(dcoef);
  const double scale = num.max_magnitude();

  auto rem = num.terms();
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    if constexpr (!field_traits<F>::exact) {
      if (field_traits<F>::negligible(top->second, scale)) {
        rem.erase(top);
        continue;
      }
    }
    const Exponent m = top->first - dlead;
    for (int i = 0; i < n; ++i)
      if (m[i] < qlo[i] || m[i] > qhi[i])
        throw NonExactDivision("Laurent division leaves a remainder at x^" + top->first.str());
    const F c = F(top->second * dinv);
    q.add_term(m, c);
    for (const auto& [e, v] : den.terms()) {
      const Exponent k = e + m;
      const F delta = F(v * c);
      auto [it, inserted] = rem.try_emplace(k, F(-delta));
      if (!inserted) {
        it->second -= delta;
        if (ruij::is_zero(it->second)) rem.erase(it);
      }
    }
  }
  return q;
}

// f(x) with x_i -> base^{dir} x_i for i in I: each x^mu picks up
// base^{dir * sum_{i in I} mu_i}.
template <Field F>
LaurentPoly<F> scale_shift(const LaurentPoly<F>& f, Subset I, const F& base, int direction = 1) {
  LaurentPoly<F> r(f.nvars());
  if (I == 0) return f;
  std::map<long, F> pow_cache;
  for (const auto& [e, c] : f.terms()) {
    long k = 0;
    for (int i = 0; i < f.nvars(); ++i)
      if (in_subset(I, i)) k += e[i];
    k *= direction;
    auto it = pow_cache.find(k);
    if (it == pow_cache.end()) it = pow_cache.emplace(k, ipow(base, k)).first;
    r.add_term(e, F(c * it->second));
  }
  return r;
}

// T^{eps_I}_{q,x} with direction +1, or its inverse with -1.
template <Field F>
LaurentPoly<F> q_shift(const LaurentPoly<F>& f, Subset I, const F& q, int direction = 1) {
  return scale_shift(f, I, q, direction);
}

// (a;q)_k = (1-a)(1-qa)...(1-q^{k-1}a)
template <Field F>
F pochhammer(const F& a, const F& q, int k) {
  F r = one<F>();
  F term = a;
  for (int i = 0; i < k; ++i) {
    r *= F(one<F>() - term);
    term *= q;
  }
  return r;
}

// Vandermonde product prod_{i<j} (x_i - x_j).
template <Field F>
LaurentPoly<F> vandermonde(int n) {
  LaurentPoly<F> d = LaurentPoly<F>::constant(n, one<F>());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Exponent ei(n), ej(n);
      ei[i] = 1;
      ej[j] = 1;
      LaurentPoly<F> f(n);
      f.add_term(ei, one<F>());
      f.add_term(ej, F(-1));
      d = laurent_mul(d, f);
    }
  return d;
}

inline Complex complex_ipow(Complex z, long e) {
  if (e < 0) {
    z = 1.0 / z;
    e = -e;
  }
  Complex r{1.0, 0.0};
  while (e > 0) {
    if (e & 1) r *= z;
    e >>= 1;
    if (e) z *= z;
  }
  return r;
}

template <Field F>
Complex evaluate(const LaurentPoly<F>& f, const std::vector<Complex>& x) {
  if (static_cast<int>(x.size()) != f.nvars()) throw DimensionMismatch("evaluate: wrong point dimension");
  Complex s{0.0, 0.0};
  for (const auto& [e, c] : f.terms()) {
    Complex m = to_complex(c);
    for (int i = 0; i < f.nvars(); ++i)
      if (e[i] != 0) m *= complex_ipow(x[i], e[i]);
    s += m;
  }
  return s;
}

}  // namespace ruij
