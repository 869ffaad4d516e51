#include "verify.hpp"

#include <chrono>
#include <functional>
#include <future>

namespace dual_appell::cli {
namespace {

template <Scalar S>
double residual(const SymTensor<S>& a, const SymTensor<S>& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) return std::numeric_limits<double>::infinity();
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, magnitude(S(a.coeffs()[i] - b.coeffs()[i])));
    scale = std::max({scale, magnitude(a.coeffs()[i]), magnitude(b.coeffs()[i])});
  }
  return diff / (1.0 + scale);
}

template <Scalar S>
double residual(const S& a, const S& b) {
  return magnitude(S(a - b)) / (1.0 + std::max(magnitude(a), magnitude(b)));
}

// Records one comparison: exact equality for rationals, relative residual
// within tolerance for floats. The first failure is kept as the witness.
template <Scalar S>
class Checker {
 public:
  Checker(SuiteResult& r, double tol) : r_(r), tol_(tol) {}

  template <typename T>
  void same(const T& a, const T& b, const Json& where) {
    ++r_.checks;
    const double res = residual(a, b);
    r_.max_residual = std::max(r_.max_residual, res);
    const bool ok = is_exact_v<S> ? a == b : res <= tol_;
    if (!ok) fail(where, res);
  }

  void same_blocks(const std::vector<SymTensor<S>>& a, const std::vector<SymTensor<S>>& b, const Json& where) {
    if (a.size() != b.size()) {
      ++r_.checks;
      fail(where, std::numeric_limits<double>::infinity());
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      Json w = where;
      w["block"] = i;
      same(a[i], b[i], w);
    }
  }

  void require(bool ok, const Json& where) {
    ++r_.checks;
    if (!ok) fail(where, std::numeric_limits<double>::infinity());
  }

 private:
  void fail(const Json& where, double res) {
    if (r_.ok) {
      r_.witnesses["first_failure"] = where;
      r_.witnesses["first_failure"]["residual"] = res;
    }
    r_.ok = false;
  }

  SuiteResult& r_;
  double tol_;
};

template <Scalar S>
struct Context {
  const RunConfig& cfg;
  const Setup<S>& setup;

  const AppellSystem<S>& sys() const { return setup.system; }
  int d() const { return cfg.dim(); }
  int n1() const { return cfg.n1(); }
  int top() const { return cfg.max_block(); }

  PolyElement<S> random_monomial(Rng& rng) const {
    std::vector<SymTensor<S>> b;
    for (int m = 0; m <= top(); ++m) b.push_back(random_tensor<S>(rng, d(), m * n1()));
    return PolyElement<S>::monomial(std::move(b), n1());
  }
  DualFunctional<S> random_functional(Rng& rng) const {
    std::vector<SymTensor<S>> b;
    for (int m = 0; m <= top(); ++m) b.push_back(random_tensor<S>(rng, d(), m * n1()));
    return DualFunctional<S>(d(), n1(), std::move(b));
  }
  // |theta| <= 1/2 for d <= 3 (rational entries have |theta_i| <= 1/4).
  Point<S> small_point(Rng& rng) const {
    Point<S> p;
    for (int i = 0; i < d(); ++i) {
      if constexpr (is_exact_v<S>) p.push_back(random_scalar<S>(rng, 4) / from_int<S>(16));
      else p.push_back(random_scalar<S>(rng) * S(0.5 / std::sqrt(static_cast<double>(d()))));
    }
    return p;
  }
};

template <Scalar S>
using SuiteFn = std::function<void(const Context<S>&, Rng&, Checker<S>&, SuiteResult&)>;

template <Scalar S>
void suite_change_of_gamma(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    const AppellSystem<S> other(c.setup.chi, random_germ<S>(rng, c.d(), c.n1(), c.top()), c.top());
    const auto z = random_point<S>(rng, c.d());
    for (int n = 0; n <= c.top(); ++n)
      chk.same(p_kernel(c.sys(), n, z), change_of_gamma_rhs(c.sys(), other, n, z), Json{{"draw", draw}, {"n", n}});
  }
}

template <Scalar S>
void suite_conversion(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    const auto e = c.random_monomial(rng);
    const auto a = monomial_to_appell(c.sys(), e);
    chk.same_blocks(appell_to_monomial(c.sys(), a).blocks(), e.blocks(), Json{{"draw", draw}});
    const auto x = random_point<S>(rng, c.d());
    chk.same(evaluate_poly(c.sys(), a, x), evaluate_poly(e, x), Json{{"draw", draw}, {"check", "evaluate"}});
  }
}

template <Scalar S>
void suite_dchi_conjugation(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    for (int n = 0; n <= c.top(); ++n) {
      const DOperator<S> op(random_tensor<S>(rng, c.d(), n * c.n1()), c.setup.chi);
      for (int m = 0; m <= c.top(); ++m) {
        const auto e = PolyElement<S>::appell_single(c.sys(), m, random_tensor<S>(rng, c.d(), m * c.n1()), c.top());
        const auto direct = apply_appell(op, c.sys(), e);
        const auto conjugated = monomial_to_appell(c.sys(), apply_monomial(op, appell_to_monomial(c.sys(), e)));
        chk.same_blocks(direct.blocks(), conjugated.blocks(), Json{{"draw", draw}, {"m", m}, {"n", n}});
      }
    }
  }
}

template <Scalar S>
void suite_dchi_composition(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    for (int a = 0; a <= c.top(); ++a) {
      for (int b = 0; a + b <= c.top(); ++b) {
        const auto phi = random_tensor<S>(rng, c.d(), a * c.n1());
        const auto psi = random_tensor<S>(rng, c.d(), b * c.n1());
        const auto e = c.random_monomial(rng);
        const DOperator<S> op_a(phi, c.setup.chi), op_b(psi, c.setup.chi), op_ab(sym_product(phi, psi), c.setup.chi);
        chk.same_blocks(apply_monomial(op_b, apply_monomial(op_a, e)).blocks(), apply_monomial(op_ab, e).blocks(),
                        Json{{"draw", draw}, {"orders", {a, b}}});
      }
    }
  }
}

template <Scalar S>
void suite_adjoint(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    for (int n = 0; n <= c.top(); ++n) {
      const DOperator<S> op(random_tensor<S>(rng, c.d(), n * c.n1()), c.setup.chi);
      const auto f = c.random_functional(rng);
      const auto e = c.random_monomial(rng);
      chk.same(pair(adjoint_apply(op, f), e), pair(f, apply_monomial(op, e)), Json{{"draw", draw}, {"n", n}});
    }
  }
}

template <Scalar S>
void suite_delta(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    const auto z = random_point<S>(rng, c.d());
    const auto e = c.random_monomial(rng);
    chk.same(pair(delta(z, c.n1(), c.top()), e), evaluate_poly(e, z), Json{{"draw", draw}});
  }
}

template <Scalar S>
void suite_q_closed_form(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    for (int m = 0; m <= c.top(); ++m) {
      const auto phi = random_tensor<S>(rng, c.d(), m * c.n1());
      chk.same_blocks(q_functional(c.sys(), m, phi, c.top()).blocks(),
                      q_functional_by_definition(c.sys(), m, phi, c.top()).blocks(), Json{{"draw", draw}, {"m", m}});
    }
  }
}

template <Scalar S>
void suite_biorthogonality(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    for (int m = 0; m <= c.top(); ++m) {
      for (int n = 0; n <= c.top(); ++n) {
        const auto r = biorthogonality_check(c.sys(), m, random_tensor<S>(rng, c.d(), m * c.n1()), n,
                                             random_tensor<S>(rng, c.d(), n * c.n1()));
        chk.same(r.lhs, r.rhs, Json{{"draw", draw}, {"m", m}, {"n", n}});
      }
    }
  }
}

template <Scalar S>
void suite_decomposition(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult&) {
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    std::vector<SymTensor<S>> kernels;
    for (int m = 0; m <= c.top(); ++m) kernels.push_back(random_tensor<S>(rng, c.d(), m * c.n1()));
    chk.same_blocks(decompose(reconstruct(kernels, c.sys(), c.top()), c.sys()), kernels,
                    Json{{"draw", draw}, {"direction", "decompose . reconstruct"}});
    const auto f = c.random_functional(rng);
    chk.same_blocks(reconstruct(decompose(f, c.sys()), c.sys(), c.top()).blocks(), f.blocks(),
                    Json{{"draw", draw}, {"direction", "reconstruct . decompose"}});
  }
}

template <Scalar S>
void suite_s_transform(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult& r) {
  double max_tail = 0.0;
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    const auto f = c.random_functional(rng);
    const auto theta = c.small_point(rng);
    const auto st = s_transform(f, c.sys(), theta);
    chk.same(st.path_a, st.path_b, Json{{"draw", draw}, {"check", "two paths"}});
    chk.same_blocks(s_kernels(f, c.sys()), decompose(f, c.sys()), Json{{"draw", draw}, {"check", "kernels"}});
    max_tail = std::max(max_tail, st.tail_bound);
  }
  r.witnesses["max_tail_bound"] = max_tail;
}

template <Scalar S>
void suite_gram(const Context<S>& c, Rng& rng, Checker<S>& chk, SuiteResult& r) {
  const GramForm<S> gf(c.setup.measure, c.n1(), c.top());
  const auto rep = nondegeneracy(gf);
  r.witnesses["measure"] = measure_name(gf.measure().kind());
  r.witnesses["size"] = rep.size;
  r.witnesses["exact"] = rep.exact;
  r.witnesses["positive_definite"] = rep.positive_definite;
  if (rep.failing_minor) {
    r.witnesses["failing_minor"] = *rep.failing_minor;
    r.witnesses["failing_minor_value"] = rep.failing_minor_value;
  }
  if (!rep.exact) r.witnesses["min_eigenvalue"] = rep.min_eigenvalue;
  chk.require(rep.positive_definite, Json{{"check", "positive definite"}});
  for (int draw = 0; draw < c.cfg.draws(); ++draw) {
    const auto f = c.random_monomial(rng);
    const auto g = c.random_monomial(rng);
    chk.same(pair(embed_regular(gf, f), g), inner(gf, f, g), Json{{"draw", draw}, {"check", "embed"}});
  }
}

template <Scalar S>
void suite_kingman(const Context<S>& c, Rng&, Checker<S>& chk, SuiteResult& r) {
  const Json& desc = c.cfg.raw.at("chi");
  const bool is_kingman = desc.is_object() && desc.value("name", "") == "kingman";
  const S s = is_kingman && desc.contains("s") ? scalar_from_json<S>(desc.at("s"))
                                               : (is_kingman ? from_int<S>(0) : from_ratio<S>(1, 2));
  const LambdaFunction<S> lambda(s, std::max(40, c.top()));
  if (is_kingman) {
    const auto chi = lambda_chi(lambda);
    for (int m = 0; m <= c.top(); ++m) chk.same(chi.coeff(m), c.setup.chi.coeff(m), Json{{"check", "lambda_chi"}, {"m", m}});
  }
  const auto rep = bound_check(lambda, polar_grid(5.0, 20, 20), real_grid(5.0, 201));
  r.witnesses["s"] = scalar_to_json(s);
  r.witnesses["max_ratio"] = rep.max_ratio;
  r.witnesses["max_real_abs"] = rep.max_real_abs;
  chk.require(rep.ratio_ok, Json{{"check", "|Lambda(z)| <= e^|z|"}});
  chk.require(rep.real_ok, Json{{"check", "|Lambda(u)| <= 1"}});
}

template <Scalar S>
Report run_typed(const RunConfig& cfg, bool with_timings) {
  const auto setup = build_setup<S>(cfg);
  const Context<S> ctx{cfg, setup};
  const std::vector<std::pair<std::string, SuiteFn<S>>> suites = {
      {"change_of_gamma", suite_change_of_gamma<S>},
      {"conversion_roundtrip", suite_conversion<S>},
      {"dchi_conjugation", suite_dchi_conjugation<S>},
      {"dchi_composition", suite_dchi_composition<S>},
      {"adjoint_duality", suite_adjoint<S>},
      {"delta_evaluation", suite_delta<S>},
      {"q_closed_form", suite_q_closed_form<S>},
      {"biorthogonality", suite_biorthogonality<S>},
      {"decomposition", suite_decomposition<S>},
      {"s_transform_paths", suite_s_transform<S>},
      {"gram_h_space", suite_gram<S>},
      {"kingman_lambda", suite_kingman<S>},
  };
  // Each suite owns an RNG stream, so results do not depend on scheduling.
  std::vector<std::future<SuiteResult>> futures;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      SuiteResult r;
      r.name = suites[i].first;
      auto rng = make_rng(cfg.seed(), i + 1);
      Checker<S> chk(r, cfg.float_tolerance());
      const auto t0 = std::chrono::steady_clock::now();
      try {
        suites[i].second(ctx, rng, chk, r);
      } catch (const std::exception& e) {
        r.ok = false;
        r.witnesses["exception"] = e.what();
      }
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }));
  }
  Report report;
  report.ok = true;
  Json arr = Json::array();
  for (auto& f : futures) {
    const auto r = f.get();
    report.ok = report.ok && r.ok;
    Json j{{"name", r.name},
           {"status", r.ok ? "pass" : "fail"},
           {"checks", r.checks},
           {"residuals", {{"max", r.max_residual}}},
           {"witnesses", r.witnesses}};
    if (with_timings) j["wall_ms"] = r.wall_ms;
    arr.push_back(std::move(j));
  }
  report.json = Json{{"schema", 1},
                     {"command", "verify"},
                     {"config_hash", cfg.hash()},
                     {"scalar", cfg.scalar()},
                     {"config", cfg.raw},
                     {"status", report.ok ? "pass" : "fail"},
                     {"suites", arr}};
  return report;
}

}  // namespace

Report run_verify(const RunConfig& cfg, bool with_timings) {
  return cfg.scalar() == "rational" ? run_typed<Rational>(cfg, with_timings) : run_typed<double>(cfg, with_timings);
}

}  // namespace dual_appell::cli
