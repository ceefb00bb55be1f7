#pragma once

// Reference Macdonald polynomials by Gram-Schmidt on the (q,t) power-sum
// scalar product <p_a, p_b> = delta_ab z_a prod (1 - q^a_i)/(1 - t^a_i),
// carried out in the ring of symmetric functions and then restricted to n
// variables.  Shares nothing with the operator-based solver.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Partition = std::vector<int>;  // weakly decreasing, positive parts

inline std::vector<Partition> partitions(int d) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;  // lexicographically decreasing
}

inline Q qpow(const Q& a, int e) {
  Q r = 1;
  for (int i = 0; i < e; ++i) r *= a;
  return r;
}

// z_a = prod_i i^{m_i} m_i!
inline Q z_factor(const Partition& a) {
  std::map<int, int> mult;
  for (int v : a) ++mult[v];
  Q z = 1;
  for (auto [part, m] : mult)
    for (int k = 1; k <= m; ++k) z *= part * k;
  return z;
}

// Coefficient of m_mu in p_a: number of ways to assign the parts of a to
// positions so that the bins add up to mu.
inline Q power_sum_in_m(const Partition& a, const Partition& mu) {
  std::vector<int> bins(mu.size(), 0);
  long count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size()) {
      if (std::equal(bins.begin(), bins.end(), mu.begin())) ++count;
      return;
    }
    for (std::size_t b = 0; b < bins.size(); ++b) {
      bins[b] += a[i];
      if (bins[b] <= mu[b]) rec(i + 1);
      bins[b] -= a[i];
    }
  };
  rec(0);
  return count;
}

// Dense Gauss-Jordan inverse.
inline std::vector<std::vector<Q>> inverse(std::vector<std::vector<Q>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Q>> inv(n, std::vector<Q>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0) ++piv;
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const Q d = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Q f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// P_lambda for every partition of d, as maps partition -> coefficient of m.
inline std::map<Partition, std::map<Partition, Q>> macdonald_by_gram(int d, const Q& q, const Q& t) {
  const auto parts = partitions(d);
  const std::size_t N = parts.size();
  // L[a][mu]: p_a = sum_mu L[a][mu] m_mu, so m = L^{-1} p.
  std::vector<std::vector<Q>> L(N, std::vector<Q>(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t m = 0; m < N; ++m) L[a][m] = power_sum_in_m(parts[a], parts[m]);
  const auto Minv = inverse(L);  // m_mu = sum_a Minv[mu][a] p_a
  std::vector<Q> pnorm(N);
  for (std::size_t a = 0; a < N; ++a) {
    Q v = z_factor(parts[a]);
    for (int part : parts[a]) v *= (1 - qpow(q, part)) / (1 - qpow(t, part));
    pnorm[a] = v;
  }
  // Gram matrix of the m-basis.
  std::vector<std::vector<Q>> G(N, std::vector<Q>(N, 0));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t a = 0; a < N; ++a) G[i][j] += Minv[i][a] * Minv[j][a] * pnorm[a];
  auto inner = [&](const std::vector<Q>& u, const std::vector<Q>& v) {
    Q s = 0;
    for (std::size_t i = 0; i < N; ++i)
      if (u[i] != 0)
        for (std::size_t j = 0; j < N; ++j)
          if (v[j] != 0) s += u[i] * v[j] * G[i][j];
    return s;
  };
  // Increasing lexicographic order refines dominance.
  std::vector<std::vector<Q>> P(N);
  std::map<Partition, std::map<Partition, Q>> out;
  for (std::size_t k = N; k-- > 0;) {
    std::vector<Q> v(N, 0);
    v[k] = 1;
    for (std::size_t j = N - 1; j > k; --j) {
      const Q c = inner(v, P[j]) / inner(P[j], P[j]);
      for (std::size_t i = 0; i < N; ++i) v[i] -= c * P[j][i];
    }
    P[k] = v;
    for (std::size_t i = 0; i < N; ++i)
      if (v[i] != 0) out[parts[k]][parts[i]] = v[i];
  }
  return out;
}

// All weakly decreasing integer vectors of length n and sum s within
// [lo, hi], dominated by lambda, by plain enumeration.
inline std::vector<std::vector<int>> brute_force_dominant_below(const std::vector<int>& lambda) {
  const int n = static_cast<int>(lambda.size());
  const int lo = lambda.back(), hi = lambda.front();
  int total = 0;
  for (int v : lambda) total += v;
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n);
  std::function<void(int, int)> rec = [&](int i, int maxv) {
    if (i == n) {
      int s = 0, ps = 0, pl = 0;
      for (int v : cur) s += v;
      if (s != total) return;
      for (int j = 0; j < n; ++j) {
        ps += cur[j];
        pl += lambda[j];
        if (ps > pl) return;
      }
      out.push_back(cur);
      return;
    }
    for (int v = maxv; v >= lo; --v) {
      cur[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, hi);
  return out;
}

}  // namespace oracle
