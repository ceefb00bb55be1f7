#pragma once

// Dominant weights, dominance order, and the monomial symmetric basis.

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

#include "ruij/laurent.hpp"

namespace ruij {

using DominantWeight = Exponent;

inline bool is_dominant(const Exponent& w) {
  for (int i = 0; i + 1 < w.size(); ++i)
    if (w[i] < w[i + 1]) return false;
  return true;
}

inline void require_dominant(const Exponent& w) {
  if (!is_dominant(w)) throw NotDominant("weight " + w.str() + " is not dominant");
}

inline Exponent dominant_rep(Exponent w) {
  std::sort(w.begin(), w.end(), std::greater<int>());
  return w;
}

inline std::vector<long> partial_sums(const Exponent& w) {
  std::vector<long> s(w.size());
  long acc = 0;
  for (int i = 0; i < w.size(); ++i) s[i] = acc += w[i];
  return s;
}

inline bool dominance_leq(const DominantWeight& mu, const DominantWeight& nu) {
  if (mu.size() != nu.size()) throw DimensionMismatch("dominance_leq: dimension mismatch");
  if (mu.total() != nu.total()) return false;
  long a = 0, b = 0;
  for (int i = 0; i < mu.size(); ++i) {
    a += mu[i];
    b += nu[i];
    if (a > b) return false;
  }
  return true;
}

// Total order refining dominance: larger |w| first, then partial-sum vectors
// compared lexicographically, larger first.  "Precedes" means "comes first".
struct WeightOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    long sa = 0, sb = 0;
    for (int i = 0; i < a.size(); ++i) {
      sa += a[i];
      sb += b[i];
      if (sa != sb) return sa > sb;
    }
    return false;
  }
};

namespace detail {

struct DominantBelowCache {
  std::mutex mu;
  std::map<Exponent, std::vector<Exponent>> table;
};

inline DominantBelowCache& dominant_below_cache() {
  static DominantBelowCache cache;
  return cache;
}

}  // namespace detail

// All dominant mu <= lambda, ordered by WeightOrder (lambda first).
// Depth-first over lambda - (eps_i - eps_j), i < j, keeping dominant results.
inline std::vector<DominantWeight> dominant_below(const DominantWeight& lambda) {
  require_dominant(lambda);
  auto& cache = detail::dominant_below_cache();
  {
    std::lock_guard lock(cache.mu);
    if (auto it = cache.table.find(lambda); it != cache.table.end()) return it->second;
  }
  const int n = lambda.size();
  std::map<Exponent, bool, WeightOrder> seen;
  std::vector<Exponent> stack{lambda};
  seen[lambda] = true;
  while (!stack.empty()) {
    Exponent w = stack.back();
    stack.pop_back();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Exponent v = w;
        --v[i];
        ++v[j];
        if (!is_dominant(v) || seen.count(v)) continue;
        seen[v] = true;
        stack.push_back(v);
      }
  }
  std::vector<Exponent> out;
  out.reserve(seen.size());
  for (const auto& kv : seen) out.push_back(kv.first);
  std::lock_guard lock(cache.mu);
  cache.table.emplace(lambda, out);
  return out;
}

// All distinct permutations of w.
inline std::vector<Exponent> orbit(const Exponent& w) {
  Exponent v = w;
  std::sort(v.begin(), v.end());
  std::vector<Exponent> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline long orbit_size(const Exponent& w) {
  std::map<int, int> counts;
  for (int v : w) ++counts[v];
  long r = 1;
  int k = 0;
  for (const auto& [val, c] : counts)
    for (int i = 1; i <= c; ++i) {
      ++k;
      r = r * k / i;  // multinomial, kept integral at every step
    }
  return r;
}

template <Field F>
class MBasisVector {
 public:
  using Map = std::map<DominantWeight, F, WeightOrder>;

  MBasisVector() = default;
  explicit MBasisVector(int n) : n_(n) {}

  static MBasisVector single(const DominantWeight& w, const F& c = one<F>()) {
    MBasisVector v(w.size());
    v.add(w, c);
    return v;
  }

  int nvars() const { return n_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  F coeff(const DominantWeight& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? zero<F>() : it->second;
  }

  void add(const DominantWeight& w, const F& c) {
    if (w.size() != n_) throw DimensionMismatch("MBasisVector: weight of wrong length");
    require_dominant(w);
    if (ruij::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (ruij::is_zero(it->second)) terms_.erase(it);
    }
  }

  void prune(double scale) {
    if constexpr (!field_traits<F>::exact) {
      for (auto it = terms_.begin(); it != terms_.end();)
        it = field_traits<F>::negligible(it->second, scale) ? terms_.erase(it) : std::next(it);
    }
  }

  void erase(const DominantWeight& w) { terms_.erase(w); }

  double max_magnitude() const {
    double m = 0;
    for (const auto& kv : terms_) m = std::max(m, field_traits<F>::magnitude(kv.second));
    return m;
  }

  // Exactly zero in exact mode; below the relative tolerance in numeric mode.
  bool negligible(double scale) const {
    if constexpr (field_traits<F>::exact) {
      return terms_.empty();
    } else {
      for (const auto& kv : terms_)
        if (!field_traits<F>::negligible(kv.second, scale)) return false;
      return true;
    }
  }

  MBasisVector& operator+=(const MBasisVector& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  MBasisVector& operator-=(const MBasisVector& o) {
    for (const auto& [w, c] : o.terms_) add(w, F(-c));
    return *this;
  }
  MBasisVector& operator*=(const F& s) {
    if (ruij::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= s;
    return *this;
  }
  friend MBasisVector operator+(MBasisVector a, const MBasisVector& b) { return a += b; }
  friend MBasisVector operator-(MBasisVector a, const MBasisVector& b) { return a -= b; }
  friend MBasisVector operator*(MBasisVector a, const F& s) { return a *= s; }
  friend MBasisVector operator*(const F& s, MBasisVector a) { return a *= s; }
  friend bool operator==(const MBasisVector& a, const MBasisVector& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  // Multiplication by (x_1...x_n)^k.
  MBasisVector shifted(int k) const {
    MBasisVector r(n_);
    for (const auto& [w, c] : terms_) {
      Exponent v = w;
      for (int& e : v) e += k;
      r.terms_.emplace(v, c);
    }
    return r;
  }

 private:
  int n_ = 0;
  Map terms_;
};

template <Field F>
LaurentPoly<F> m_to_laurent(const MBasisVector<F>& v) {
  LaurentPoly<F> f(v.nvars());
  for (const auto& [w, c] : v.terms())
    for (const auto& e : orbit(w)) f.add_term(e, c);
  return f;
}

template <Field F>
LaurentPoly<F> monomial_symmetric(const DominantWeight& w) {
  return m_to_laurent(MBasisVector<F>::single(w));
}

template <Field F>
MBasisVector<F> laurent_to_m(const LaurentPoly<F>& f) {
  MBasisVector<F> v(f.nvars());
  const double scale = f.max_magnitude();
  long covered = 0;
  for (const auto& [e, c] : f.terms()) {
    const Exponent rep = dominant_rep(e);
    const F rc = f.coeff(rep);
    if (!field_traits<F>::negligible(F(c - rc), scale))
      throw NotSymmetric("coefficient of x^" + e.str() + " differs from that of x^" + rep.str());
    if (e == rep) {
      v.add(rep, c);
      covered += orbit_size(rep);
    }
  }
  if (covered != static_cast<long>(f.size())) throw NotSymmetric("Laurent polynomial has incomplete orbits");
  return v;
}

template <Field F>
F elementary_symmetric(int r, const std::vector<F>& a) {
  const int n = static_cast<int>(a.size());
  if (r < 0 || r > n) return zero<F>();
  // e[k] after processing a prefix of a
  std::vector<F> e(n + 1, zero<F>());
  e[0] = one<F>();
  for (int i = 0; i < n; ++i)
    for (int k = std::min(i + 1, r); k >= 1; --k) e[k] += F(e[k - 1] * a[i]);
  return e[r];
}

// (t^{n-1} q^{lambda_1}, ..., t^0 q^{lambda_n})
template <Field F>
std::vector<F> t_rho_q_lambda(const Exponent& lambda, const F& q, const F& t) {
  const int n = lambda.size();
  std::vector<F> s(n);
  for (int i = 0; i < n; ++i) s[i] = F(ipow(t, n - 1 - i) * ipow(q, lambda[i]));
  return s;
}

}  // namespace ruij
