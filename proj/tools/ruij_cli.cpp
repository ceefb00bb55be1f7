// ruij: command-line front end.  Every command writes one JSON document to
// stdout (or --output) and exits 0 on success, 1 when a check fails and 2 on
// a configuration or certificate error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ruij/ruij.hpp"

using namespace ruij;

namespace {

struct Job {
  int n = 2;
  std::string field = "rational";
  std::string q = "3/10";
  std::string t = "1/2";
  std::string p = "1/20";
  std::string lambda;
  std::string mu;
  std::string s;
  int p_order = 4;
  int asym_p_order = -1;
  int height = 8;
  int grid_n = 64;
  double radius = 1.0;
  double radius2 = 1.5;
  double sigma = 0.5;
  double tol = 1e-6;
  int points = 5;
  unsigned seed = 1;
  std::string suite = "all";
  std::string input;
  std::string output;
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Exponent parse_weight(const std::string& text, int n, const char* what) {
  if (text.empty()) throw ConfigError(std::string("missing --") + what);
  std::vector<int> v;
  for (const auto& item : split(text)) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("bad entry '") + item + "' in --" + what);
    }
  }
  if (static_cast<int>(v.size()) != n)
    throw ConfigError(std::string("--") + what + " needs " + std::to_string(n) + " entries");
  return Exponent(v);
}

// Rationals as "a/b" or decimals; complex values as "re:im".
template <Field F>
F parse_scalar(const std::string& text) {
  if constexpr (field_traits<F>::exact) {
    return parse_rational(text);
  } else {
    const auto parts = split(text, ':');
    auto num = [](const std::string& v) { return rational_to_double(parse_rational(v)); };
    if (parts.size() == 1) return num(parts[0]);
    if (parts.size() == 2) return {num(parts[0]), num(parts[1])};
    throw ConfigError("bad complex literal '" + text + "'");
  }
}

template <Field F>
std::vector<F> parse_scalars(const std::string& text, int n, const char* what) {
  if (text.empty()) throw ConfigError(std::string("missing --") + what);
  std::vector<F> out;
  for (const auto& item : split(text)) out.push_back(parse_scalar<F>(item));
  if (static_cast<int>(out.size()) != n)
    throw ConfigError(std::string("--") + what + " needs " + std::to_string(n) + " entries");
  return out;
}

template <Field F>
OperatorContext<F> make_context(const Job& job) {
  return OperatorContext<F>(job.n, parse_scalar<F>(job.q), parse_scalar<F>(job.t));
}

void emit(const Job& job, const Json& j) {
  const std::string text = j.dump() + "\n";
  if (job.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(job.output, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + job.output);
  out << text;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------- compute commands

template <Field F>
int cmd_macdonald(const Job& job) {
  RuijsenaarsOperators<F> ops(make_context<F>(job));
  const auto lam = parse_weight(job.lambda, job.n, "lambda");
  const auto P = macdonald_polynomial(ops, lam);
  emit(job, to_json(P, lam, ops.context().q, ops.context().t));
  return 0;
}

template <Field F>
int cmd_elliptic(const Job& job) {
  RuijsenaarsOperators<F> ops(make_context<F>(job));
  const auto em = elliptic_macdonald(ops, parse_weight(job.lambda, job.n, "lambda"), job.p_order);
  emit(job, to_json(em));
  return 0;
}

template <Field F>
int cmd_asymptotic(const Job& job) {
  auto ctx = make_context<F>(job);
  ctx.s = parse_scalars<F>(job.s, job.n, "s");
  emit(job, to_json(stationary_ruijsenaars(ctx, job.height, job.asym_p_order)));
  return 0;
}

template <Field F>
int cmd_symbols(const Job& job) {
  const auto ctx = make_context<F>(job);
  emit(job, to_json(build_symbol_table(job.n, ctx.q, ctx.t, job.height, job.asym_p_order)));
  return 0;
}

// ---------------------------------------------------------------- numeric commands

Json params_json(const Job& job) {
  return {{"n", job.n},           {"q", job.q},         {"t", job.t},         {"p", job.p},
          {"lambda", job.lambda}, {"mu", job.mu},       {"p_order", job.p_order}, {"grid_n", job.grid_n},
          {"radius", job.radius}, {"radius2", job.radius2}, {"sigma", job.sigma}, {"tol", job.tol},
          {"seed", job.seed}};
}

int cmd_orthogonality(const Job& job) {
  RuijsenaarsOperators<Rational> ops(make_context<Rational>(job));
  const auto lam = parse_weight(job.lambda, job.n, "lambda");
  const auto mu = parse_weight(job.mu, job.n, "mu");
  const auto a = elliptic_macdonald(ops, lam, job.p_order);
  const auto b = elliptic_macdonald(ops, mu, job.p_order);
  const Complex p = to_complex(parse_rational(job.p));
  bool w1 = false, w2 = false, w3 = false;
  const Complex off = orthogonality_check(a, b, p, job.grid_n, &w1);
  const Complex da = orthogonality_check(a, a, p, job.grid_n, &w2);
  const Complex db = orthogonality_check(b, b, p, job.grid_n, &w3);
  const double ref = std::sqrt(std::abs(da) * std::abs(db));
  const double rel = std::abs(off) / ref;
  const bool pass = lam == mu || rel < job.tol;
  Json rep = report_json("orthogonality", params_json(job), complex_json(off),
                         Json::array({complex_json(da), complex_json(db)}), rel, pass);
  rep["tail_warning"] = w1 || w2 || w3;
  emit(job, rep);
  return pass ? 0 : 1;
}

int cmd_transform(const Job& job) {
  const Rational q = parse_rational(job.q), t = parse_rational(job.t);
  const auto lam = parse_weight(job.lambda, job.n, "lambda");
  RuijsenaarsOperators<Rational> ops(make_context<Rational>(job));
  const auto P = macdonald_polynomial(ops, lam);
  auto ctx = make_context<Rational>(job);
  ctx.s = dual_spectral(lam, q, t);
  const auto fr = stationary_ruijsenaars(ctx, job.height, 0);
  const double bound = std::pow(job.sigma, job.n - 1) * std::min(job.radius, job.radius2);
  const auto pts = random_points(job.n, job.points, bound, job.seed);
  const auto rep = trig_transform_check(lam, fr, P, pts, job.radius, job.radius2, job.sigma, job.grid_n);
  Json value = Json::array(), reference = Json::array(), xs = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Json x = Json::array();
    for (const auto& v : pts[i]) x.push_back(complex_json(v));
    xs.push_back(x);
    value.push_back(complex_json(rep.integral[i]));
    reference.push_back(complex_json(rep.reference[i]));
  }
  const bool pass = rep.max_rel_error < job.tol;
  Json out = report_json("transform", params_json(job), value, reference, rep.max_rel_error, pass);
  out["points"] = xs;
  out["b_lambda"] = complex_json(rep.b);
  out["r_dependence"] = rep.max_r_dependence;
  out["tail_warning"] = rep.tail_warning;
  emit(job, out);
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------- verify

Json check_json(const std::string& name, bool pass, long checked, const std::vector<std::string>& failures,
                const std::vector<std::string>& notes = {}) {
  return {{"name", name}, {"pass", pass}, {"checked", checked}, {"failures", failures}, {"notes", notes}};
}

Json verify_artifact(const Json& art) {
  const std::string kind = art.at("kind").get<std::string>();
  const bool complex = art.value("field", "rational") == "complex";
  if (complex) throw ConfigError("verify --input audits exact (rational) artifacts only");
  if (kind == "macdonald") {
    const int n = art.at("n").get<int>();
    OperatorContext<Rational> ctx(n, scalar_from_json<Rational>(art.at("q")), scalar_from_json<Rational>(art.at("t")));
    RuijsenaarsOperators<Rational> ops(ctx);
    const auto lam = exponent_from_json(art.at("lambda"));
    const auto P = mbasis_from_json<Rational>(art.at("terms"), n);
    const auto e = macdonald_eigenvalues(lam, ctx.q, ctx.t);
    std::vector<std::string> fails;
    if (P.coeff(lam) != 1) fails.push_back("not monic");
    for (int r = 1; r <= n; ++r)
      if (!(ops.macdonald_apply(r, P) == P * e[r])) fails.push_back("D^(" + std::to_string(r) + ") eigen-equation");
    return check_json("artifact:macdonald", fails.empty(), n, fails);
  }
  if (kind == "elliptic_macdonald") {
    const auto em = elliptic_from_json<Rational>(art);
    RuijsenaarsOperators<Rational> ops(OperatorContext<Rational>(em.n, em.q, em.t));
    const auto rep = check_eigen_equations(ops, em);
    return check_json("artifact:elliptic_macdonald", rep.ok, rep.checked, rep.failures);
  }
  if (kind == "asymptotic") {
    const auto fr = asymptotic_from_json<Rational>(art);
    const auto rep = check_joint_eigen(fr);
    return check_json("artifact:asymptotic", rep.ok, rep.checked, rep.failures, rep.notes);
  }
  throw ConfigError("cannot audit artifacts of kind '" + kind + "'");
}

Rational random_small(std::mt19937_64& gen, int max_den) {
  std::uniform_int_distribution<int> den(2, max_den);
  const int b = den(gen);
  std::uniform_int_distribution<int> num(1, b - 1);
  Rational r(num(gen), b);
  r.canonicalize();
  return r;
}

Json verify_suite(const Job& job) {
  const int n = job.n;
  if (n < 1 || n > 3) throw ConfigError("verify suites support n = 1..3");
  const auto& suite = job.suite;
  auto wants = [&](const char* name) { return suite == "all" || suite == name; };
  static const std::vector<std::string> known = {"all",        "symbols",  "macdonald", "elliptic",
                                                 "asymptotic", "symmetry", "numeric"};
  if (std::find(known.begin(), known.end(), suite) == known.end()) throw ConfigError("unknown suite '" + suite + "'");

  std::mt19937_64 gen(job.seed);
  Rational q, t;
  for (;;) {
    q = random_small(gen, 11);
    t = random_small(gen, 11);
    try {
      OperatorContext<Rational> c(n, q, t);
      c.certify_symmetric();
      break;
    } catch (const GenericityViolation&) {
    }
  }
  std::vector<Rational> s(n);
  for (;;) {
    for (auto& v : s) v = random_small(gen, 13);
    try {
      OperatorContext<Rational> c(n, q, t);
      c.s = s;
      c.certify_asymptotic();
      break;
    } catch (const GenericityViolation&) {
    }
  }
  const OperatorContext<Rational> base(n, q, t);
  Json checks = Json::array();

  if (wants("symbols")) {
    long checked = 0;
    std::vector<std::string> fails;
    for (Subset I = 0; I < (1u << n); ++I, ++checked)
      if (!((b_coefficient_series_via_log(n, I, t, 6) - b_coefficient_series(n, I, t, 6)).terms().empty()))
        fails.push_back("B_I product and log routes differ for I=" + std::to_string(I));
    checks.push_back(check_json("symbols", fails.empty(), checked, fails));
  }
  if (wants("macdonald")) {
    RuijsenaarsOperators<Rational> ops(base);
    long checked = 0;
    std::vector<std::string> fails;
    for (int d = 0; d <= 3; ++d) {
      Exponent top(n);
      top[0] = d;
      for (const auto& lam : dominant_below(top)) {
        if (lam[n - 1] < 0) continue;
        const auto P = macdonald_polynomial(ops, lam);
        const auto e = macdonald_eigenvalues(lam, q, t);
        for (int r = 0; r <= n; ++r, ++checked)
          if (!(ops.macdonald_apply(r, P) == P * e[r])) fails.push_back("P_" + lam.str() + " r=" + std::to_string(r));
      }
    }
    checks.push_back(check_json("macdonald", fails.empty(), checked, fails));
  }
  if (wants("elliptic")) {
    RuijsenaarsOperators<Rational> ops(base);
    Exponent lam(n);
    lam[0] = 1;
    const auto em = elliptic_macdonald(ops, lam, 2);
    auto rep = check_eigen_equations(ops, em);
    for (int k = 0; k <= 2; ++k)
      if (em.layers[k].coeff(lam + phi(n) * k) != leading_coefficient_formula(lam, k, q, t)) {
        rep.ok = false;
        rep.failures.push_back("leading coefficient at p^" + std::to_string(k));
      }
    checks.push_back(check_json("elliptic", rep.ok, rep.checked, rep.failures));
  }
  if (wants("asymptotic")) {
    auto ctx = base;
    ctx.s = s;
    const int H = n == 3 ? 6 : 8;
    const auto fr = stationary_ruijsenaars(ctx, H);
    const auto rep = check_joint_eigen(fr);
    checks.push_back(check_json("asymptotic", rep.ok, rep.checked, rep.failures));
    ctx.c_index = 3;
    const auto rc = compare_functions(fr, stationary_ruijsenaars(ctx, H), "c_invariance");
    checks.push_back(check_json(rc.name, rc.ok, rc.checked, rc.failures));

    const Exponent lam = [&] {
      Exponent l(n);
      l[0] = 1;
      return l;
    }();
    RuijsenaarsOperators<Rational> ops(base);
    const auto em = elliptic_macdonald(ops, lam, 2);
    auto cs = base;
    cs.s = t_rho_q_lambda(lam, q, t);
    try {
      const auto rep2 = specialize_to_symmetric(stationary_ruijsenaars(cs, 6), em);
      checks.push_back(check_json(rep2.name, rep2.ok, rep2.checked, rep2.failures));
    } catch (const MismatchedCoefficient& e) {
      checks.push_back(check_json("specialize_to_symmetric", false, 0, {e.what()}));
    }
  }
  if (wants("symmetry") && n >= 2) {
    auto ctx = base;
    ctx.s = s;
    const auto rot = rotation_check(ctx, 6);
    checks.push_back(check_json(rot.name, rot.ok, rot.checked, rot.failures, rot.notes));
    try {
      const auto ref = reflection_check(ctx, 6);
      std::vector<std::string> notes;
      if (ref.gamma.size() > 1) notes.push_back("gamma at order p: " + rational_to_string(ref.gamma[1]));
      checks.push_back(check_json(ref.report.name, ref.report.ok, ref.report.checked, ref.report.failures, notes));
    } catch (const NonConstantQuotient& e) {
      checks.push_back(check_json("reflection", false, 0, {e.what()}));
    }
  }
  if (wants("numeric")) {
    std::mt19937_64 g2(job.seed);
    std::uniform_real_distribution<double> rad(0.3, 2.0), ang(0, 2 * std::numbers::pi);
    const Complex p{0.15, 0.05}, qq{0.2, -0.1};
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
      const Complex z = std::polar(rad(g2), ang(g2));
      const Complex G = elliptic_gamma_numeric(z, p, qq);
      worst = std::max(worst, std::abs(G * elliptic_gamma_numeric(p * qq / z, p, qq) - 1.0));
      worst = std::max(worst, std::abs(elliptic_gamma_numeric(qq * z, p, qq) - theta_numeric(z, p) * G) / std::abs(G));
    }
    std::vector<std::string> fails;
    if (worst > 1e-10) fails.push_back("elliptic gamma identities off by " + std::to_string(worst));
    checks.push_back(check_json("gamma_identities", fails.empty(), 100, fails));
  }

  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  return {{"format", kFormatVersion},
          {"command", "verify"},
          {"suite", suite},
          {"n", n},
          {"seed", job.seed},
          {"q", rational_to_string(q)},
          {"t", rational_to_string(t)},
          {"s", scalars_to_json(s)},
          {"checks", checks},
          {"pass", pass},
          {"summary", pass ? "PASS" : "FAIL"}};
}

int cmd_verify(const Job& job) {
  Json out;
  if (!job.input.empty()) {
    const auto check = verify_artifact(read_json_file(job.input));
    const bool pass = check["pass"].get<bool>();
    out = {{"format", kFormatVersion},
           {"command", "verify"},
           {"input", job.input},
           {"checks", Json::array({check})},
           {"pass", pass},
           {"summary", pass ? "PASS" : "FAIL"}};
  } else {
    out = verify_suite(job);
  }
  emit(job, out);
  return out["pass"].get<bool>() ? 0 : 1;
}

template <class Fn>
int dispatch_field(const Job& job, Fn&& fn) {
  if (job.field == "rational") return fn(Rational{});
  if (job.field == "complex") return fn(Complex{});
  throw ConfigError("--field must be 'rational' or 'complex'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic Macdonald polynomials and asymptotically free eigenfunctions"};
  app.require_subcommand(1);
  Job job;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", job.n, "number of variables");
    sub->add_option("--q", job.q, "q (rational a/b, decimal, or re:im)");
    sub->add_option("--t", job.t, "t");
    sub->add_option("--output,-o", job.output, "write the JSON here instead of stdout");
  };
  auto* mac = app.add_subcommand("macdonald", "Macdonald polynomial P_lambda");
  common(mac);
  mac->add_option("--lambda", job.lambda, "dominant weight, comma separated")->required();
  mac->add_option("--field", job.field, "rational or complex");

  auto* ell = app.add_subcommand("elliptic", "elliptic deformation P_lambda(x;p) up to p^K");
  common(ell);
  ell->add_option("--lambda", job.lambda, "dominant weight")->required();
  ell->add_option("--p-order", job.p_order, "truncation order K");
  ell->add_option("--field", job.field, "rational or complex");

  auto* asy = app.add_subcommand("asymptotic", "asymptotically free eigenfunction f(x;s;p)");
  common(asy);
  asy->add_option("--s", job.s, "spectral vector, comma separated")->required();
  asy->add_option("--height", job.height, "height cutoff H");
  asy->add_option("--p-order", job.asym_p_order, "restrict to k_0 <= this (default: none)");
  asy->add_option("--field", job.field, "rational or complex");

  auto* sym = app.add_subcommand("symbols", "dump the symbol table b^I_beta");
  common(sym);
  sym->add_option("--height", job.height, "height cutoff H");
  sym->add_option("--p-order", job.asym_p_order, "restrict to k_0 <= this (default: none)");
  sym->add_option("--field", job.field, "rational or complex");

  auto* ver = app.add_subcommand("verify", "run a check suite, or audit an artifact with --input");
  common(ver);
  ver->add_option("--suite", job.suite, "all, symbols, macdonald, elliptic, asymptotic, symmetry, numeric");
  ver->add_option("--seed", job.seed, "seed for the random parameters");
  ver->add_option("--input", job.input, "JSON artifact to re-audit");

  auto* orth = app.add_subcommand("orthogonality", "torus pairing <P_lambda, P_mu> at nome p");
  common(orth);
  orth->add_option("--lambda", job.lambda)->required();
  orth->add_option("--mu", job.mu)->required();
  orth->add_option("--p", job.p, "elliptic nome");
  orth->add_option("--p-order", job.p_order, "truncation order K");
  orth->add_option("--grid-n", job.grid_n, "points per torus direction");
  orth->add_option("--tol", job.tol, "pass threshold on the normalized pairing (default 1e-8)");

  auto* tr = app.add_subcommand("transform", "trigonometric kernel transform of x^lambda f");
  common(tr);
  tr->add_option("--lambda", job.lambda)->required();
  tr->add_option("--height", job.height, "height cutoff of f");
  tr->add_option("--grid-n", job.grid_n, "points per contour");
  tr->add_option("--radius", job.radius, "r");
  tr->add_option("--radius2", job.radius2, "second r for the independence check");
  tr->add_option("--sigma", job.sigma, "contour spacing");
  tr->add_option("--points", job.points, "number of random x points");
  tr->add_option("--seed", job.seed, "seed for the x points");
  tr->add_option("--tol", job.tol, "pass threshold on the relative error");

  CLI11_PARSE(app, argc, argv);
  if (tr->parsed() && !tr->count("--height")) job.height = 40;
  if (orth->parsed() && !orth->count("--tol")) job.tol = 1e-8;

  try {
    if (mac->parsed()) return dispatch_field(job, [&](auto tag) { return cmd_macdonald<decltype(tag)>(job); });
    if (ell->parsed()) return dispatch_field(job, [&](auto tag) { return cmd_elliptic<decltype(tag)>(job); });
    if (asy->parsed()) return dispatch_field(job, [&](auto tag) { return cmd_asymptotic<decltype(tag)>(job); });
    if (sym->parsed()) return dispatch_field(job, [&](auto tag) { return cmd_symbols<decltype(tag)>(job); });
    if (ver->parsed()) return cmd_verify(job);
    if (orth->parsed()) return cmd_orthogonality(job);
    if (tr->parsed()) return cmd_transform(job);
  } catch (const Error& e) {
    const Json err = {{"format", kFormatVersion}, {"error", e.kind()}, {"message", e.what()}, {"pass", false}};
    std::cout << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    const Json err = {{"format", kFormatVersion}, {"error", "internal"}, {"message", e.what()}, {"pass", false}};
    std::cout << err.dump() << "\n";
    return 3;
  }
  return 0;
}
