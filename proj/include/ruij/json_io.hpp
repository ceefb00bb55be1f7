#pragma once

// JSON artifacts.  Rationals are "num/den" strings, complex numbers are
// [re, im] pairs; every top-level artifact carries "format": 1.

#include <json.hpp>
#include <string>
#include <vector>

#include "ruij/numerics.hpp"

namespace ruij {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

template <Field F>
Json scalar_to_json(const F& x) {
  if constexpr (field_traits<F>::exact) {
    return rational_to_string(x);
  } else {
    return Json::array({x.real(), x.imag()});
  }
}

template <Field F>
F scalar_from_json(const Json& j) {
  if constexpr (field_traits<F>::exact) {
    if (!j.is_string()) throw ConfigError("expected a rational string");
    return parse_rational(j.get<std::string>());
  } else {
    if (j.is_array() && j.size() == 2) return Complex(j[0].get<double>(), j[1].get<double>());
    if (j.is_number()) return Complex(j.get<double>(), 0);
    if (j.is_string()) return to_complex(parse_rational(j.get<std::string>()));
    throw ConfigError("expected a complex number [re, im]");
  }
}

inline Json exponent_to_json(const Exponent& e) { return e.to_vector(); }

inline Exponent exponent_from_json(const Json& j) {
  const auto v = j.get<std::vector<int>>();
  if (v.empty() || static_cast<int>(v.size()) > kMaxVars) throw ConfigError("bad exponent length");
  Exponent e(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) e[static_cast<int>(i)] = v[i];
  return e;
}

template <Field F>
Json to_json(const MBasisVector<F>& v) {
  Json terms = Json::array();
  for (const auto& [w, c] : v.terms()) terms.push_back({{"weight", exponent_to_json(w)}, {"coeff", scalar_to_json(c)}});
  return terms;
}

template <Field F>
MBasisVector<F> mbasis_from_json(const Json& j, int n) {
  MBasisVector<F> v(n);
  for (const auto& t : j) {
    const auto w = exponent_from_json(t.at("weight"));
    if (w.size() != n) throw DimensionMismatch("weight of wrong length");
    v.add(w, scalar_from_json<F>(t.at("coeff")));
  }
  return v;
}

template <Field F>
Json to_json(const LaurentPoly<F>& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", exponent_to_json(e)}, {"coeff", scalar_to_json(c)}});
  return {{"n", f.nvars()}, {"terms", terms}};
}

template <Field F>
LaurentPoly<F> laurent_from_json(const Json& j) {
  LaurentPoly<F> f(j.at("n").get<int>());
  for (const auto& t : j.at("terms")) f.add_term(exponent_from_json(t.at("exp")), scalar_from_json<F>(t.at("coeff")));
  return f;
}

template <Field F>
Json to_json(const ZSeries<F>& s) {
  Json terms = Json::array();
  for (const auto& [b, c] : s.terms())
    terms.push_back({{"beta", exponent_to_json(b)}, {"coeff", scalar_to_json(c)}});
  return terms;
}

template <Field F>
ZSeries<F> zseries_from_json(const Json& terms, int n, int H, int p_cutoff = -1) {
  ZSeries<F> s(n, H, p_cutoff);
  for (const auto& t : terms) {
    const auto b = exponent_from_json(t.at("beta"));
    if (b.size() != n) throw DimensionMismatch("affine coordinates of wrong length");
    s.add(b, scalar_from_json<F>(t.at("coeff")));
  }
  return s;
}

template <Field F>
Json scalars_to_json(const std::vector<F>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

template <Field F>
std::vector<F> scalars_from_json(const Json& j) {
  std::vector<F> v;
  for (const auto& x : j) v.push_back(scalar_from_json<F>(x));
  return v;
}

inline std::string field_name(bool exact) { return exact ? "rational" : "complex"; }

template <Field F>
Json to_json(const MBasisVector<F>& p, const Exponent& lambda, const F& q, const F& t) {
  return {{"format", kFormatVersion},
          {"kind", "macdonald"},
          {"field", field_name(field_traits<F>::exact)},
          {"n", lambda.size()},
          {"lambda", exponent_to_json(lambda)},
          {"q", scalar_to_json(q)},
          {"t", scalar_to_json(t)},
          {"terms", to_json(p)}};
}

template <Field F>
Json to_json(const EllipticMacdonald<F>& em) {
  Json layers = Json::array();
  for (int k = 0; k <= em.K; ++k) layers.push_back(to_json(em.layers[k]));
  Json eig = Json::object();
  for (int r = 0; r <= em.n; ++r) eig[std::to_string(r)] = scalars_to_json(em.eigenvalues[r]);
  return {{"format", kFormatVersion},
          {"kind", "elliptic_macdonald"},
          {"field", field_name(field_traits<F>::exact)},
          {"n", em.n},
          {"lambda", exponent_to_json(em.lambda)},
          {"q", scalar_to_json(em.q)},
          {"t", scalar_to_json(em.t)},
          {"p_order", em.K},
          {"c", rational_to_string(em.c)},
          {"layers", layers},
          {"eigenvalues", eig},
          {"gamma", scalars_to_json(em.gamma)},
          {"certificates", em.certificates}};
}

template <Field F>
EllipticMacdonald<F> elliptic_from_json(const Json& j) {
  if (j.at("format").get<int>() != kFormatVersion) throw ConfigError("unsupported artifact format");
  EllipticMacdonald<F> em;
  em.n = j.at("n").get<int>();
  em.lambda = exponent_from_json(j.at("lambda"));
  em.q = scalar_from_json<F>(j.at("q"));
  em.t = scalar_from_json<F>(j.at("t"));
  em.K = j.at("p_order").get<int>();
  em.c = parse_rational(j.at("c").get<std::string>());
  for (const auto& l : j.at("layers")) em.layers.push_back(mbasis_from_json<F>(l, em.n));
  const auto& eig = j.at("eigenvalues");
  for (int r = 0; r <= em.n; ++r) em.eigenvalues.push_back(scalars_from_json<F>(eig.at(std::to_string(r))));
  em.gamma = scalars_from_json<F>(j.at("gamma"));
  em.certificates = j.at("certificates").get<std::vector<std::string>>();
  if (static_cast<int>(em.layers.size()) != em.K + 1 || static_cast<int>(em.eigenvalues.size()) != em.n + 1)
    throw ConfigError("elliptic artifact has inconsistent sizes");
  return em;
}

template <Field F>
Json to_json(const RuijsenaarsFunction<F>& fr) {
  Json eig = Json::array();
  for (std::size_t l = 0; l < fr.eps.size(); ++l)
    eig.push_back({{"l", l}, {"poly_in_u", scalars_to_json(fr.poly_in_u(static_cast<int>(l)))}});
  return {{"format", kFormatVersion},
          {"kind", "asymptotic"},
          {"field", field_name(field_traits<F>::exact)},
          {"n", fr.n},
          {"q", scalar_to_json(fr.q)},
          {"t", scalar_to_json(fr.t)},
          {"s", scalars_to_json(fr.s)},
          {"H", fr.H},
          {"max_p_order", fr.max_p_order},
          {"c", rational_to_string(fr.c)},
          {"f", to_json(fr.f)},
          {"eigenvalues", eig},
          {"certificates", fr.certificates}};
}

template <Field F>
RuijsenaarsFunction<F> asymptotic_from_json(const Json& j) {
  if (j.at("format").get<int>() != kFormatVersion) throw ConfigError("unsupported artifact format");
  RuijsenaarsFunction<F> fr;
  fr.n = j.at("n").get<int>();
  fr.q = scalar_from_json<F>(j.at("q"));
  fr.t = scalar_from_json<F>(j.at("t"));
  fr.s = scalars_from_json<F>(j.at("s"));
  fr.H = j.at("H").get<int>();
  fr.max_p_order = j.value("max_p_order", -1);
  fr.c = parse_rational(j.at("c").get<std::string>());
  if (static_cast<int>(fr.s.size()) != fr.n) throw DimensionMismatch("s must have n entries");
  fr.f = zseries_from_json<F>(j.at("f"), fr.n, fr.H, fr.max_p_order);
  for (const auto& e : j.at("eigenvalues")) {
    auto v = scalars_from_json<F>(e.at("poly_in_u"));
    if (static_cast<int>(v.size()) != fr.n + 1) throw ConfigError("eigenvalue polynomial of wrong degree");
    for (int r = 1; r <= fr.n; r += 2) v[r] = F(-v[r]);
    fr.eps.push_back(std::move(v));
  }
  fr.certificates = j.at("certificates").get<std::vector<std::string>>();
  return fr;
}

template <Field F>
Json to_json(const SymbolTable<F>& tab) {
  Json entries = Json::array();
  for (Subset I = 0; I < tab.B.size(); ++I)
    for (const auto& [b, c] : tab.B[I].terms())
      entries.push_back(
          {{"I", subset_to_indices(I, tab.n)}, {"beta", exponent_to_json(b)}, {"coeff", scalar_to_json(c)}});
  return {{"format", kFormatVersion},
          {"kind", "symbols"},
          {"n", tab.n},
          {"q", scalar_to_json(tab.q)},
          {"t", scalar_to_json(tab.t)},
          {"H", tab.H},
          {"max_p_order", tab.max_p_order},
          {"entries", entries}};
}

inline Json report_json(const std::string& test, Json params, Json value, Json reference, double rel_error,
                        bool pass) {
  return {{"format", kFormatVersion}, {"test", test},           {"params", std::move(params)},
          {"value", std::move(value)}, {"reference", std::move(reference)}, {"rel_error", rel_error},
          {"pass", pass}};
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json check_report_json(const CheckReport& r) {
  return {{"name", r.name}, {"pass", r.ok}, {"checked", r.checked}, {"failures", r.failures}, {"notes", r.notes}};
}

}  // namespace ruij
