// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// limits fixed below. Exit status 0 only if every line passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "config.hpp"
#include "emit.hpp"
#include "dual_appell/dual_appell.hpp"
#include "oracles/series_oracle.hpp"
#include "verify.hpp"

using namespace dual_appell;
using Q = Rational;

namespace {

constexpr double kFloatRel = 1e-10;
constexpr double kLambdaAbs = 1e-12;
constexpr double kMcSigmas = 4.0;
constexpr double kLockTol = 1e-14;
constexpr double kLockedCStar = 0.29341301338352183;

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.ok = false;
    o.detail += " [over time limit]";
  }
  if (!o.ok) ++failures;
  std::printf("%s %-4s %s: %s (%.2f s, limit %.0f s)\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

ChiFunction<Q> normalized(const ChiFunction<Q>& chi) {
  std::vector<Q> c = chi.coeffs();
  const Q c0 = c[0];
  for (auto& v : c) v /= c0;
  return ChiFunction<Q>(chi.n1(), c);
}

Outcome change_of_gamma() {
  auto rng = make_rng(1001);
  long checks = 0;
  for (int d = 1; d <= 3; ++d)
    for (int n1 = 1; n1 <= 3; ++n1) {
      const int cap = static_cast<int>(std::lround(8.0 / n1));
      for (int draw = 0; draw < 20; ++draw) {
        const auto chi = random_chi<Q>(rng, n1, cap);
        const AppellSystem<Q> s1(chi, random_germ<Q>(rng, d, n1, cap), cap);
        const AppellSystem<Q> s2(chi, random_germ<Q>(rng, d, n1, cap), cap);
        const auto z = random_point<Q>(rng, d);
        for (int n = 0; n <= cap; ++n, ++checks)
          if (p_kernel(s1, n, z) != change_of_gamma_rhs(s1, s2, n, z))
            return {false, "mismatch d=" + std::to_string(d) + " n1=" + std::to_string(n1) + " n=" + std::to_string(n)};
      }
    }
  return {true, std::to_string(checks) + " exact kernel equalities"};
}

Outcome conjugation() {
  auto rng = make_rng(1002);
  long checks = 0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 1 + draw % 2, n1 = 1 + (draw / 2) % 2, cap = 4;
    const AppellSystem<Q> sys(random_chi<Q>(rng, n1, 2 * cap), random_germ<Q>(rng, d, n1, cap), cap);
    for (int m = 0; m <= cap; ++m) {
      const DOperator<Q> op(random_tensor<Q>(rng, d, m * n1), sys.chi());
      for (int n = 0; n <= cap; ++n, ++checks) {
        const auto e = PolyElement<Q>::appell_single(sys, n, random_tensor<Q>(rng, d, n * n1), cap);
        if (apply_appell(op, sys, e) != monomial_to_appell(sys, apply_monomial(op, appell_to_monomial(sys, e))))
          return {false, "mismatch draw " + std::to_string(draw)};
      }
    }
  }
  return {true, std::to_string(checks) + " exact operator equalities"};
}

// Stated form needs chi_0 = 1 (chi rescaled); for arbitrary chi_0 the pairing
// carries the extra factor chi_0. Both are checked exactly.
Outcome biorthogonality() {
  auto rng = make_rng(1003);
  long checks = 0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 1 + draw % 2, n1 = 1 + (draw / 2) % 2, cap = 4;
    const auto raw = random_chi<Q>(rng, n1, cap);
    const auto gamma = random_germ<Q>(rng, d, n1, cap);
    if (gamma.is_unit()) return {false, "drew unit gamma"};
    for (const auto& chi : {normalized(raw), raw}) {
      const AppellSystem<Q> sys(chi, gamma, cap);
      for (int m = 0; m <= cap; ++m)
        for (int n = 0; n <= cap; ++n, ++checks) {
          const auto big = random_tensor<Q>(rng, d, m * n1), phi = random_tensor<Q>(rng, d, n * n1);
          const auto r = biorthogonality_check(sys, m, big, n, phi);
          const Q stated = m == n ? factorial<Q>(n * n1) * pairing(big, phi) : Q(0);
          if (r.lhs != chi.coeff(0) * stated)
            return {false, "draw " + std::to_string(draw) + " m=" + std::to_string(m) + " n=" + std::to_string(n)};
        }
    }
  }
  return {true, std::to_string(checks) + " exact pairings (chi_0 = 1 stated form, and chi_0-scaled form)"};
}

Outcome decomposition() {
  auto rng = make_rng(1004);
  long checks = 0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 1 + draw % 3, n1 = 1 + draw % 2, cap = 4;
    const AppellSystem<Q> sys(random_chi<Q>(rng, n1, cap), random_germ<Q>(rng, d, n1, cap), cap);
    std::vector<SymTensor<Q>> kernels, blocks;
    for (int m = 0; m <= cap; ++m) {
      kernels.push_back(random_tensor<Q>(rng, d, m * n1));
      blocks.push_back(random_tensor<Q>(rng, d, m * n1));
    }
    const DualFunctional<Q> f(d, n1, blocks);
    if (decompose(reconstruct(kernels, sys, cap), sys) != kernels) return {false, "decompose . reconstruct"};
    if (reconstruct(decompose(f, sys), sys, cap) != f) return {false, "reconstruct . decompose"};
    checks += 2;
  }
  return {true, std::to_string(checks) + " exact round trips at M = 4"};
}

Outcome s_transform_paths() {
  auto rng = make_rng(1005);
  double worst = 0.0, worst_tail = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 1 + draw % 3, n1 = 1 + draw % 2, cap = 4;
    const AppellSystem<Q> sys(random_chi<Q>(rng, n1, cap), random_germ<Q>(rng, d, n1, cap), cap);
    std::vector<SymTensor<Q>> blocks;
    for (int m = 0; m <= cap; ++m) blocks.push_back(random_tensor<Q>(rng, d, m * n1));
    const DualFunctional<Q> f(d, n1, blocks);
    if (s_kernels(f, sys) != decompose(f, sys)) return {false, "s_kernels != decompose"};
    auto theta = random_point<double>(rng, d);
    double norm = 0;
    for (double t : theta) norm += t * t;
    norm = std::sqrt(norm);
    const double target = 0.5 * (1 + draw % 4) / 4.0;
    for (double& t : theta) t *= norm > 0 ? target / norm : 0.0;
    const auto st = s_transform(functional_cast<double>(f), system_cast<double>(sys), theta);
    const double scale = std::max(std::abs(st.path_a), std::abs(st.path_b));
    const double rel = scale > 0 ? std::abs(st.path_a - st.path_b) / scale : 0.0;
    if (!std::isfinite(st.tail_bound)) return {false, "tail bound not finite"};
    worst = std::max(worst, rel);
    worst_tail = std::max(worst_tail, st.tail_bound);
  }
  return {worst <= kFloatRel, "max rel err " + fmt(worst) + " (tol " + fmt(kFloatRel) + "), max tail bound " + fmt(worst_tail) +
                                  ", s_kernels = decompose exact"};
}

Outcome hermite() {
  std::vector<SymTensor<Q>> k;
  for (int n = 0; n <= 6; ++n) {
    SymTensor<Q> t(1, n);
    if (n % 2 == 0) {
      Q v(1);
      for (int i = 1; i < n; i += 2) v *= i;
      t.coeffs()[0] = (n / 2) % 2 ? -v : v;
    }
    k.push_back(t);
  }
  const AppellSystem<Q> sys(chi_exp<Q>(6), Germ<Q>(1, 1, k), 6);
  for (int x = -3; x <= 3; ++x) {
    const Q z(x);
    const std::vector<Q> pt{z};
    if (p_kernel(sys, 3, pt).coeffs()[0] != z * z * z - 3 * z) return {false, "P3 at " + std::to_string(x)};
    const Q p4 = z * z * z * z - 6 * z * z + 3;
    if (oracle::p_kernel(sys.chi().coeffs(), k, 1, pt, 4).coeffs()[0] != p4) return {false, "oracle P4 at " + std::to_string(x)};
    if (p_kernel(sys, 4, pt).coeffs()[0] != p4) return {false, "P4 at " + std::to_string(x)};
  }
  return {true, "P3 = z^3 - 3z, P4 = z^4 - 6z^2 + 3 exact at 7 points (degree <= 4)"};
}

Outcome lambda_family() {
  const LambdaFunction<Q> cosine(Q(-1) / 2, 40), sinc(Q(1) / 2, 40);
  double err = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double u = -5.0 + 10.0 * i / 400;
    err = std::max(err, std::abs(lambda_eval(cosine, Complex{u, 0}).value.real() - std::cos(u)));
    err = std::max(err, std::abs(lambda_eval(sinc, Complex{u, 0}).value.real() - (u == 0 ? 1.0 : std::sin(u) / u)));
  }
  double ratio = 0.0, real_abs = 0.0;
  bool bounds = true;
  for (const double s : {-0.5, 0.0, 0.5, 1.0, 5.0}) {
    const auto rep = bound_check(LambdaFunction<double>(s, 40), polar_grid(5, 20, 20), real_grid(5, 201));
    bounds = bounds && rep.ok();
    ratio = std::max(ratio, rep.max_ratio);
    real_abs = std::max(real_abs, rep.max_real_abs);
  }
  return {err <= kLambdaAbs && bounds,
          "closed-form err " + fmt(err) + " (tol " + fmt(kLambdaAbs) + "), max |L|/e^|z| " + fmt(ratio) + ", max real |L| " + fmt(real_abs)};
}

Outcome kingman_mc() {
  const auto rep = sphere_cf_check(3, 1.0, {0.5, 1.0, M_PI, 5.0}, 100000, 20261018);
  double worst = 0.0;
  bool ok = true;
  for (const auto& p : rep.points) {
    const double z = p.stderr_ > 0 ? std::abs(p.empirical - p.target) / p.stderr_ : 0.0;
    worst = std::max(worst, z);
    ok = ok && z <= kMcSigmas;
  }
  return {ok, "max deviation " + fmt(worst) + " se (limit " + fmt(kMcSigmas) + ")"};
}

Outcome gaussian_pd() {
  for (int d = 1; d <= 3; ++d) {
    const auto rep = nondegeneracy(GramForm<Q>(MomentFunctional<Q>::gaussian(d, 8), 2, 2));
    if (!rep.positive_definite) return {false, "gaussian d=" + std::to_string(d) + " minor " + std::to_string(*rep.failing_minor)};
  }
  return {true, "all leading minors > 0, d = 1, 2, 3"};
}

Outcome sphere_pd() {
  const GramForm<Q> gf(MomentFunctional<Q>::sphere(3, Q(1), 8), 2, 2);
  const auto rep = nondegeneracy(gf);
  if (rep.positive_definite) return {true, "all leading minors > 0"};
  // |x|^2 - 1 lies in the kernel of the Gram matrix
  const auto g = gf.matrix();
  const auto b = gf.basis();
  std::vector<Q> v(b.size(), Q(0));
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == MultiIndex({0, 0, 0})) v[i] = -1;
    if (b[i] == MultiIndex({2, 0, 0}) || b[i] == MultiIndex({0, 2, 0}) || b[i] == MultiIndex({0, 0, 2})) v[i] = 1;
  }
  bool null = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Q row(0);
    for (std::size_t j = 0; j < g.size(); ++j) row += g[i][j] * v[j];
    null = null && row == 0;
  }
  return {false, "not positive definite: leading minor " + std::to_string(*rep.failing_minor) + " = " + rep.failing_minor_value +
                     (null ? "; G v = 0 for v = |x|^2 - 1, which vanishes on the sphere" : "")};
}

Outcome embed_consistency() {
  auto rng = make_rng(1009);
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 1 + draw % 3, n1 = 1 + draw % 2, cap = 2;
    const auto m = draw % 2 ? MomentFunctional<Q>::gaussian(d, 2 * cap * n1) : MomentFunctional<Q>::sphere(d, Q(1), 2 * cap * n1);
    const GramForm<Q> gf(m, n1, cap);
    std::vector<SymTensor<Q>> fb, gb;
    for (int k = 0; k <= cap; ++k) {
      fb.push_back(random_tensor<Q>(rng, d, k * n1));
      gb.push_back(random_tensor<Q>(rng, d, k * n1));
    }
    const auto f = PolyElement<Q>::monomial(fb, n1), g = PolyElement<Q>::monomial(gb, n1);
    if (pair(embed_regular(gf, f), g) != inner(gf, f, g)) return {false, "draw " + std::to_string(draw)};
  }
  return {true, "<<embed(f), g>> = (f, g)_H exact, 20 pairs"};
}

Outcome mean_zero_violation() {
  const AppellSystem<Q> sys(chi_cos<Q>(2), Germ<Q>::unit(3, 2, 2), 2);
  const GramForm<Q> gf(MomentFunctional<Q>::sphere(3, Q(1), 8), 2, 2);
  const auto one = PolyElement<Q>::monomial({SymTensor<Q>::scalar(3, Q(1)), SymTensor<Q>(3, 2), SymTensor<Q>(3, 4)}, 2);
  SymTensor<Q> phi(3, 2);
  phi.at(MultiIndex({2, 0, 0})) = Q(1);
  const auto p2 = appell_to_monomial(sys, PolyElement<Q>::appell_single(sys, 1, phi, 2));
  const Q mean = inner(gf, p2, one);
  return {mean != 0, "E[<P_2(x), e1 e1>] = " + to_string(mean) + " under the unit sphere in R^3 (chi = cos, n1 = 2)"};
}

Outcome growth_bound() {
  const int cap = 6;
  const AppellSystem<Q> sys(chi_kingman<Q>(Q(1) / 2, cap), Germ<Q>::unit(3, 2, cap), cap);
  const GramForm<Q> gf(MomentFunctional<Q>::sphere(3, Q(1), 4 * cap), 2, cap);
  const auto gb = growth_bound_fit(sys, gf, 1, ScaleVector::standard(3), cap);
  for (double c : gb.c)
    if (!std::isfinite(c)) return {false, "non-finite c_n"};
  const double dev = std::abs(gb.c_star - kLockedCStar);
  char buf[160];
  std::snprintf(buf, sizeof buf, "C* = %.17g, K = %g, locked %.17g (|diff| %.2g, tol %.0e)", gb.c_star, gb.k_const,
                kLockedCStar, dev, kLockTol);
  return {dev <= kLockTol, buf};
}

Outcome dense_oracle() {
  auto rng = make_rng(1011);
  long checks = 0;
  for (int draw = 0; draw < 50; ++draw) {
    const int d = 1 + draw % 3;
    const int m = draw % 5, n = (draw / 5) % 5;
    const auto a = random_tensor<Q>(rng, d, m), b = random_tensor<Q>(rng, d, n), a2 = random_tensor<Q>(rng, d, m);
    const auto da = oracle::from_sym(a), db = oracle::from_sym(b);
    if (sym_product(a, b) != oracle::to_sym(oracle::sym_product(da, db))) return {false, "product, draw " + std::to_string(draw)};
    if (pairing(a, a2) != oracle::full_contract(da, oracle::from_sym(a2))) return {false, "pairing, draw " + std::to_string(draw)};
    checks += 2;
    if (n <= m) {
      if (contract(a, b) != oracle::to_sym(oracle::partial_contract(da, db))) return {false, "contract, draw " + std::to_string(draw)};
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " exact agreements, d <= 3, ranks <= 4"};
}

Outcome determinism() {
  const auto cfg = cli::make_config(Json::object());
  const auto a = cli::dump(cli::run_verify(cfg).json), b = cli::dump(cli::run_verify(cfg).json);
  const auto fcfg = cli::make_config(Json{{"scalar", "float"}});
  const auto c = cli::dump(cli::run_verify(fcfg).json), e = cli::dump(cli::run_verify(fcfg).json);
  return {a == b && c == e, "rational and float reports byte-identical across runs (" + std::to_string(a.size()) + ", " +
                                std::to_string(c.size()) + " bytes)"};
}

}  // namespace

int main() {
  criterion("1", "change of gamma, exact", 10, change_of_gamma);
  criterion("2", "D_chi conjugation by conversion, exact", 10, conjugation);
  criterion("3", "biorthogonality, exact", 10, biorthogonality);
  criterion("4", "decomposition round trips, exact", 10, decomposition);
  criterion("5", "S-transform two paths, float", 10, s_transform_paths);
  criterion("6", "Hermite cross-check", 1, hermite);
  criterion("7", "Lambda family closed forms and bounds", 5, lambda_family);
  criterion("8", "sphere characteristic function, Monte Carlo", 5, kingman_mc);
  criterion("9a", "Gram positive definite, gaussian d <= 3", 20, gaussian_pd);
  criterion("9b", "Gram positive definite, sphere d = 3", 20, sphere_pd);
  criterion("9c", "embed_regular consistency", 20, embed_consistency);
  criterion("9d", "mean-zero violation witness", 20, mean_zero_violation);
  criterion("10", "growth bound regression lock", 20, growth_bound);
  criterion("11", "dense tensor oracle equivalence", 10, dense_oracle);
  criterion("12", "determinism", 60, determinism);
  std::printf("%d failing line(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
