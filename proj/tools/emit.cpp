#include "emit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dual_appell::cli {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json header(const RunConfig& cfg, const std::string& command) {
  return Json{{"schema", 1}, {"command", command}, {"config_hash", cfg.hash()}, {"scalar", cfg.scalar()}};
}

template <Scalar S>
Point<S> point_from_json(const Json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    throw ConfigError("point must be an array of " + std::to_string(d) + " scalars");
  Point<S> p;
  for (const auto& v : j) p.push_back(scalar_from_json<S>(v));
  return p;
}

template <Scalar S>
Json point_to_json(const Point<S>& p) {
  Json out = Json::array();
  for (const auto& v : p) out.push_back(scalar_to_json(v));
  return out;
}

template <Scalar S>
Artifact kernels_typed(const RunConfig& cfg) {
  const auto setup = build_setup<S>(cfg);
  std::ostringstream out;
  out << "n,alpha,z_monomial,coefficient\n";
  for (int n = 0; n <= cfg.max_block(); ++n) {
    const auto alphas = multi_indices(cfg.dim(), n * cfg.n1());
    const auto polys = p_kernel_symbolic(setup.system, n);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      // Polynomial is a map keyed in graded-lex order already.
      for (const auto& [z, c] : polys[i]) {
        if (is_zero(c)) continue;
        out << n << ',' << alphas[i].str() << ',' << z.str() << ',' << to_string(c) << '\n';
      }
    }
  }
  return {out.str(), true};
}

template <Scalar S>
Artifact dchi_typed(const RunConfig& cfg, const DchiInputs& in) {
  const auto setup = build_setup<S>(cfg);
  auto rng = make_rng(cfg.seed(), 0xDC41);
  const SymTensor<S> symbol = in.symbol ? tensor_from_json<S>(*in.symbol)
                                        : random_tensor<S>(rng, cfg.dim(), cfg.n1());
  PolyElement<S> element = [&] {
    if (in.element) return element_from_json<S>(*in.element);
    std::vector<SymTensor<S>> b;
    for (int m = 0; m <= cfg.max_block(); ++m) b.push_back(random_tensor<S>(rng, cfg.dim(), m * cfg.n1()));
    return PolyElement<S>::monomial(std::move(b), cfg.n1());
  }();
  if (element.basis() == Basis::appell && element.system() != setup.system.id())
    throw ConfigError("dchi: element is tagged with system " + element.system() + ", config builds " +
                      setup.system.id());
  const DOperator<S> op(symbol, setup.chi);
  const auto result = element.basis() == Basis::appell ? apply_appell(op, setup.system, element)
                                                        : apply_monomial(op, element);
  Json j = header(cfg, "dchi");
  j["order"] = op.order();
  j["symbol"] = to_json(symbol);
  j["input"] = to_json(element);
  j["output"] = to_json(result);
  return {dump(j), true};
}

template <Scalar S>
Artifact qsystem_typed(const RunConfig& cfg) {
  const auto setup = build_setup<S>(cfg);
  Json q = Json::array();
  for (int m = 0; m <= cfg.max_block(); ++m) {
    for (const auto& alpha : multi_indices(cfg.dim(), m * cfg.n1())) {
      SymTensor<S> phi(cfg.dim(), m * cfg.n1());
      phi.at(alpha) = from_int<S>(1);
      q.push_back(Json{{"m", m},
                       {"phi_index", multi_index_to_json(alpha)},
                       {"functional", to_json(q_functional(setup.system, m, phi, cfg.max_block()))}});
    }
  }
  Json j = header(cfg, "qsystem");
  j["system"] = setup.system.id();
  j["chi"] = to_json(setup.chi);
  j["gamma"] = to_json(setup.gamma);
  j["q"] = q;
  return {dump(j), true};
}

template <Scalar S>
Artifact stransform_typed(const RunConfig& cfg, const STransformInputs& in) {
  const auto setup = build_setup<S>(cfg);
  auto rng = make_rng(cfg.seed(), 0x57F);
  const DualFunctional<S> f = [&] {
    if (in.functional) return functional_from_json<S>(*in.functional);
    std::vector<SymTensor<S>> b;
    for (int m = 0; m <= cfg.max_block(); ++m) b.push_back(random_tensor<S>(rng, cfg.dim(), m * cfg.n1()));
    return DualFunctional<S>(cfg.dim(), cfg.n1(), std::move(b));
  }();
  const Point<S> theta = [&] {
    if (in.theta) return point_from_json<S>(*in.theta, cfg.dim());
    Point<S> p;
    for (int i = 0; i < cfg.dim(); ++i) p.push_back(random_scalar<S>(rng, 4) / from_int<S>(16));
    return p;
  }();
  const auto st = s_transform(f, setup.system, theta);
  Json kernels = Json::array();
  for (const auto& k : s_kernels(f, setup.system)) kernels.push_back(to_json(k));
  Json j = header(cfg, "stransform");
  j["system"] = setup.system.id();
  j["theta"] = point_to_json(theta);
  j["functional"] = to_json(f);
  j["path_a"] = scalar_to_json(st.path_a);
  j["path_b"] = scalar_to_json(st.path_b);
  j["kernel_series"] = scalar_to_json(st.kernel_series);
  j["kernel_cap"] = st.kernel_cap;
  j["tail_bound"] = st.tail_bound;
  j["kernels"] = kernels;
  return {dump(j), true};
}

template <Scalar S>
Artifact gram_typed(const RunConfig& cfg) {
  const auto setup = build_setup<S>(cfg);
  const GramForm<S> gf(setup.measure, cfg.n1(), cfg.max_block());
  Json labels = Json::array();
  for (const auto& a : gf.basis()) labels.push_back(multi_index_to_json(a));
  Json matrix = Json::array();
  for (const auto& row : gf.matrix()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(scalar_to_json(v));
    matrix.push_back(std::move(r));
  }
  const auto rep = nondegeneracy(gf);
  Json verdict{{"positive_definite", rep.positive_definite}, {"exact", rep.exact}, {"size", rep.size}};
  if (rep.exact) {
    if (rep.failing_minor) {
      verdict["failing_minor"] = *rep.failing_minor;
      verdict["failing_minor_value"] = rep.failing_minor_value;
    }
  } else {
    verdict["min_eigenvalue"] = rep.min_eigenvalue;
    verdict["max_eigenvalue"] = rep.max_eigenvalue;
    verdict["ill_conditioned"] = rep.ill_conditioned;
  }
  Json j = header(cfg, "gram");
  j["measure"] = to_json(setup.measure);
  j["n1"] = cfg.n1();
  j["N"] = cfg.max_block();
  j["labels"] = labels;
  j["matrix"] = matrix;
  j["verdict"] = verdict;
  return {dump(j), rep.positive_definite};
}

template <Scalar S>
Artifact kingman_typed(const KingmanOptions& opt, const S& s) {
  const LambdaFunction<S> l(s, opt.terms);
  bool ok = true;
  Json coeffs = Json::array();
  for (const auto& c : l.coeffs()) coeffs.push_back(scalar_to_json(c));

  Json closed = Json::object();
  const double sd = scalar_traits<S>::to_double(s);
  if (sd == -0.5 || sd == 0.5) {
    double max_err = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double u = -5.0 + 10.0 * i / 1000;
      const double want = sd < 0 ? std::cos(u) : (u == 0.0 ? 1.0 : std::sin(u) / u);
      max_err = std::max(max_err, std::abs(lambda_eval(l, Complex{u, 0}).value.real() - want));
    }
    const bool pass = max_err <= 1e-12;
    ok = ok && pass;
    closed = Json{{"form", sd < 0 ? "cos u" : "sin u / u"}, {"max_abs_error", max_err}, {"tolerance", 1e-12},
                  {"status", pass ? "pass" : "fail"}};
  }

  const auto bounds = bound_check(l, polar_grid(opt.radius, opt.grid, opt.grid), real_grid(opt.radius, 10 * opt.grid + 1));
  ok = ok && bounds.ok();

  const std::vector<double> norms{0.0, 0.5, 1.0, std::numbers::pi, 5.0};
  const auto cf = sphere_cf_check(opt.dim, opt.sphere_radius, norms, opt.samples, opt.seed);
  ok = ok && cf.ok();
  Json points = Json::array();
  for (const auto& p : cf.points)
    points.push_back(Json{{"theta_norm", p.theta_norm},
                          {"empirical", p.empirical},
                          {"target", p.target},
                          {"stderr", p.stderr_},
                          {"status", p.ok ? "pass" : "fail"}});

  Json j{{"schema", 1},
         {"command", "kingman"},
         {"s", scalar_to_json(s)},
         {"scalar", scalar_traits<S>::name},
         {"terms", opt.terms},
         {"coefficients", coeffs},
         {"accuracy_radius_1e-13", lambda_accuracy_radius(l, 1e-13)},
         {"closed_form", closed},
         {"bound_check",
          {{"grid_radius", opt.radius},
           {"grid", opt.grid},
           {"max_ratio", bounds.max_ratio},
           {"argmax", {bounds.argmax.real(), bounds.argmax.imag()}},
           {"max_real_abs", bounds.max_real_abs},
           {"status", bounds.ok() ? "pass" : "fail"}}},
         {"sphere_cf",
          {{"d", cf.dim},
           {"r", cf.radius},
           {"lambda_s", 0.5 * (cf.dim - 2)},
           {"samples", cf.samples},
           {"seed", cf.seed},
           {"chunks", cf.chunks},
           {"points", points},
           {"status", cf.ok() ? "pass" : "fail"}}},
         {"status", ok ? "pass" : "fail"}};
  return {dump(j), ok};
}

template <typename F>
Artifact dispatch(const RunConfig& cfg, F&& f) {
  try {
    return cfg.scalar() == "rational" ? f(Rational{}) : f(double{});
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

Artifact emit_kernels(const RunConfig& cfg) {
  return dispatch(cfg, [&](auto tag) { return kernels_typed<decltype(tag)>(cfg); });
}

Artifact emit_dchi(const RunConfig& cfg, const DchiInputs& in) {
  return dispatch(cfg, [&](auto tag) { return dchi_typed<decltype(tag)>(cfg, in); });
}

Artifact emit_qsystem(const RunConfig& cfg) {
  return dispatch(cfg, [&](auto tag) { return qsystem_typed<decltype(tag)>(cfg); });
}

Artifact emit_stransform(const RunConfig& cfg, const STransformInputs& in) {
  return dispatch(cfg, [&](auto tag) { return stransform_typed<decltype(tag)>(cfg, in); });
}

Artifact emit_gram(const RunConfig& cfg) {
  return dispatch(cfg, [&](auto tag) { return gram_typed<decltype(tag)>(cfg); });
}

Artifact emit_kingman(const KingmanOptions& opt) {
  if (opt.terms < 1 || opt.grid < 1 || !(opt.radius > 0) || opt.dim < 2 || !(opt.sphere_radius > 0))
    throw ConfigError("kingman: terms, grid, radius must be positive and d >= 2");
  if (opt.samples < 10000) throw ConfigError("kingman: --samples must be at least 10000");
  try {
    // Exact coefficients whenever s is a rational literal; decimals fall back to floats.
    std::optional<Rational> exact;
    try {
      exact = scalar_traits<Rational>::parse(opt.s);
    } catch (const std::invalid_argument&) {
    }
    if (exact) return kingman_typed<Rational>(opt, *exact);
    return kingman_typed<double>(opt, scalar_traits<double>::parse(opt.s));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kingman: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("kingman: ") + e.what());
  }
}

}  // namespace dual_appell::cli
