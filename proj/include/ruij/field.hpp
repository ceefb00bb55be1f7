#pragma once

// Scalar fields the library computes over.
//
// Every algorithm is a template over a field type F.  Two fields are
// supported: Rational (exact, GMP-backed) and Complex (IEEE double).  The
// differences between them are isolated in field_traits<F>.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "ruij/errors.hpp"

namespace ruij {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class F>
struct field_traits;

// Nearest double to r.  mpq_get_d truncates, so check the neighbour above.
inline double rational_to_double(const Rational& r) {
  const double d = r.get_d();
  if (!std::isfinite(d)) return d;
  const double up = std::nextafter(d, sgn(r) >= 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(up)) return d;
  const Rational ed = abs(Rational(d) - r), eu = abs(Rational(up) - r);
  return eu < ed ? up : d;
}

template <>
struct field_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";

  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  // Exact mode never discards a nonzero value.
  static bool negligible(const Rational& x, double /*scale*/) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static Complex to_complex(const Rational& x) { return {rational_to_double(x), 0.0}; }
};

template <>
struct field_traits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "numeric";
  static constexpr double rel_tol = 1e-11;

  static Complex from_rational(const Rational& r) { return {rational_to_double(r), 0.0}; }
  static bool is_zero(const Complex& x) { return x == Complex{0.0, 0.0}; }
  static bool negligible(const Complex& x, double scale) {
    return std::abs(x) <= rel_tol * (scale > 0 ? scale : 1.0);
  }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex to_complex(const Complex& x) { return x; }
};

template <class F>
concept Field = requires(const F& a, const F& b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { field_traits<F>::is_zero(a) } -> std::same_as<bool>;
};

template <Field F>
inline F zero() {
  return F(0);
}

template <Field F>
inline F one() {
  return F(1);
}

template <Field F>
inline bool is_zero(const F& x) {
  return field_traits<F>::is_zero(x);
}

template <Field F>
inline F divide(const F& a, const F& b) {
  if (is_zero(b)) throw DivisionByZero("division by zero");
  F r = a / b;
  return r;
}

template <Field F>
inline F inverse(const F& a) {
  return divide(one<F>(), a);
}

// a^e for any integer e; negative exponents invert (DivisionByZero on 0).
template <Field F>
F ipow(const F& base, long e) {
  if (e < 0) return ipow(inverse(base), -e);
  F result = one<F>();
  F b = base;
  while (e > 0) {
    if (e & 1) result = F(result * b);
    e >>= 1;
    if (e) b = F(b * b);
  }
  return result;
}

template <Field F>
inline Complex to_complex(const F& x) {
  return field_traits<F>::to_complex(x);
}

template <Field F>
inline F from_rational(const Rational& r) {
  return field_traits<F>::from_rational(r);
}

// Parses "a/b", "a", or a decimal literal such as "0.3" or "-1.25e-2" into
// an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.erase(v.begin());
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
  };
  trim(s);
  if (s.empty()) throw ConfigError("empty rational literal");
  try {
    if (s.find('/') != std::string::npos) {
      Rational r(s, 10);
      if (sgn(r.get_den()) == 0) throw ConfigError("zero denominator in '" + s + "'");
      r.canonicalize();
      return r;
    }
    std::string mant = s;
    long exp10 = 0;
    if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
      exp10 = std::stol(mant.substr(e + 1));
      mant = mant.substr(0, e);
    }
    if (auto dot = mant.find('.'); dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw ConfigError("bad number '" + s + "'");
    if (mant.front() == '+') mant.erase(0, 1);
    mpz_class num(mant, 10);
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ConfigError("cannot parse '" + s + "' as a rational");
  }
}

// Canonical "num/den" with den > 0.
inline std::string rational_to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace ruij
