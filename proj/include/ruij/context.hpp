#pragma once

// Parameters shared by the operators and solvers, and the genericity
// certificates they are checked against.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ruij/symfunc.hpp"

namespace ruij {

// Candidates for the generic constant c, tried in this order.
inline const std::vector<Rational>& default_c_candidates() {
  static const std::vector<Rational> list = {
      Rational(7, 11),  Rational(5, 13),  Rational(9, 17),  Rational(11, 19), Rational(13, 23),
      Rational(17, 29), Rational(19, 31), Rational(23, 37), Rational(29, 41), Rational(31, 43)};
  return list;
}

template <Field F>
bool scalars_equal(const F& a, const F& b) {
  if constexpr (field_traits<F>::exact) {
    return a == b;
  } else {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= 1e-12 * (scale > 0 ? scale : 1.0);
  }
}

template <Field F>
struct OperatorContext {
  int n = 2;
  F q{};
  F t{};
  std::optional<std::vector<F>> s;
  int B = 200;
  std::vector<Rational> c_candidates = default_c_candidates();
  std::size_t c_index = 0;
  std::vector<std::string> certificates;

  OperatorContext() = default;
  OperatorContext(int n_, F q_, F t_) : n(n_), q(std::move(q_)), t(std::move(t_)) { validate_basic(); }

  F c() const { return from_rational<F>(c_candidates.at(c_index)); }

  // Moves to the next candidate for c; throws once the list is exhausted.
  void next_c(const std::string& reason) {
    certificates.push_back("c = " + rational_to_string(c_candidates.at(c_index)) + " rejected: " + reason);
    if (++c_index >= c_candidates.size())
      throw EigenvalueCollision("every candidate for the generic constant collided (" + reason + ")");
  }

  void validate_basic() const {
    if (n < 1 || n > kMaxVars) throw ConfigError("n must be between 1 and " + std::to_string(kMaxVars));
    if (is_zero(q) || is_zero(t)) throw GenericityViolation("q and t must be nonzero");
    if (scalars_equal(q, one<F>()) || scalars_equal(q, F(-1))) throw GenericityViolation("q must not be +-1");
  }

  // a != q^m for m in [-B, B], excluding m = 0 when allow_zero_power is set.
  bool avoids_q_powers(const F& a, bool allow_zero_power = false) const {
    F qm = one<F>();
    F qinv = inverse(q);
    F qmi = one<F>();
    for (int m = 0; m <= B; ++m) {
      if (!(m == 0 && allow_zero_power)) {
        if (scalars_equal(a, qm) || scalars_equal(a, qmi)) return false;
      }
      qm *= q;
      qmi *= qinv;
    }
    return true;
  }

  // t^k not in q^[-B,B] for k = 1..n-1.
  void certify_symmetric() {
    F tk = one<F>();
    for (int k = 1; k < n; ++k) {
      tk *= t;
      if (!avoids_q_powers(tk))
        throw GenericityViolation("t^" + std::to_string(k) + " is an integral power of q within |m| <= " +
                                  std::to_string(B));
    }
    note("t^k avoids q^[-" + std::to_string(B) + "," + std::to_string(B) + "] for k=1.." + std::to_string(n - 1));
  }

  // s_j/s_i not in q^[-B,B] for i < j.
  void certify_asymptotic() {
    if (!s) throw ConfigError("asymptotic solver needs the spectral vector s");
    if (static_cast<int>(s->size()) != n) throw DimensionMismatch("s must have n entries");
    for (int i = 0; i < n; ++i) {
      if (is_zero((*s)[i])) throw GenericityViolation("s entries must be nonzero");
      for (int j = i + 1; j < n; ++j)
        if (!avoids_q_powers(F((*s)[j] / (*s)[i])))
          throw GenericityViolation("s_" + std::to_string(j + 1) + "/s_" + std::to_string(i + 1) +
                                    " is an integral power of q within |m| <= " + std::to_string(B));
    }
    note("s_j/s_i avoids q^[-" + std::to_string(B) + "," + std::to_string(B) + "]");
  }

  void note(const std::string& cert) {
    if (std::find(certificates.begin(), certificates.end(), cert) == certificates.end()) certificates.push_back(cert);
  }
};

}  // namespace ruij
