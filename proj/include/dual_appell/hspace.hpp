#pragma once

// Inner-product backends H for P_{n1}: moment functionals, the Gram form on
// the span of n1-divisible monomial blocks, its nondegeneracy, embedding of
// regular elements as functionals, and the growth bound on the unit-gamma
// P-kernels.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dualsys.hpp"
#include "random.hpp"

namespace dual_appell {

enum class MeasureKind { gaussian, sphere, table };

inline const char* measure_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::gaussian: return "gaussian";
    case MeasureKind::sphere: return "sphere";
    case MeasureKind::table: return "table";
  }
  return "?";
}

template <Scalar S>
class MomentFunctional {
 public:
  // Standard Gaussian on R^d: E[x^alpha] = prod (alpha_i - 1)!! for all alpha_i even.
  static MomentFunctional gaussian(int dim, int max_degree) {
    return MomentFunctional(MeasureKind::gaussian, dim, max_degree, from_int<S>(0), {});
  }
  // Uniform on the radius-r sphere in R^d:
  //   E[x^alpha] = r^{|alpha|} prod (alpha_i - 1)!! / prod_{j < |alpha|/2} (d + 2j).
  static MomentFunctional sphere(int dim, const S& radius, int max_degree) {
    if (!(radius > from_int<S>(0))) throw std::invalid_argument("sphere measure needs a positive radius");
    return MomentFunctional(MeasureKind::sphere, dim, max_degree, radius, {});
  }
  // Explicit moments; absent entries are zero.
  static MomentFunctional table(int dim, int max_degree, std::map<MultiIndex, S> moments) {
    for (const auto& [alpha, v] : moments)
      if (alpha.dim() != dim) throw std::invalid_argument("moment table: multi-index of wrong dimension");
    return MomentFunctional(MeasureKind::table, dim, max_degree, from_int<S>(0), std::move(moments));
  }

  MeasureKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const S& radius() const { return radius_; }
  const std::map<MultiIndex, S>& table_entries() const { return table_; }

  S moment(const MultiIndex& alpha) const {
    if (alpha.dim() != dim_) throw std::invalid_argument("moment: multi-index of wrong dimension");
    if (alpha.degree() > max_degree_)
      throw std::out_of_range("moment: degree " + std::to_string(alpha.degree()) + " exceeds stored maximum " +
                              std::to_string(max_degree_));
    if (kind_ == MeasureKind::table) {
      const auto it = table_.find(alpha);
      return it == table_.end() ? from_int<S>(0) : it->second;
    }
    for (int i = 0; i < dim_; ++i)
      if (alpha[i] % 2) return from_int<S>(0);
    S m = from_int<S>(1);
    for (int i = 0; i < dim_; ++i)
      for (int k = alpha[i] - 1; k > 1; k -= 2) m *= from_int<S>(k);
    if (kind_ == MeasureKind::sphere) {
      const int half = alpha.degree() / 2;
      for (int j = 0; j < half; ++j) m /= from_int<S>(dim_ + 2 * j);
      m *= power<S>(radius_, alpha.degree());
    }
    return m;
  }

 private:
  MomentFunctional(MeasureKind kind, int dim, int max_degree, S radius, std::map<MultiIndex, S> table)
      : kind_(kind), dim_(dim), max_degree_(max_degree), radius_(std::move(radius)), table_(std::move(table)) {
    if (dim_ < 1) throw std::invalid_argument("moment functional: dimension must be positive");
    if (max_degree_ < 0) throw std::invalid_argument("moment functional: negative degree cap");
  }

  MeasureKind kind_;
  int dim_;
  int max_degree_;
  S radius_;
  std::map<MultiIndex, S> table_;
};

// Bilinear form (f, g)_H = E[f g] on P_{n1} truncated at block max_block.
// Only n1-divisible blocks enter: H is the closure of P_{n1} itself.
template <Scalar S>
class GramForm {
 public:
  GramForm(MomentFunctional<S> measure, int n1, int max_block)
      : measure_(std::move(measure)), n1_(n1), max_block_(max_block) {
    if (n1_ < 1 || max_block_ < 0) throw std::invalid_argument("gram form: bad (n1, max_block)");
    if (measure_.max_degree() < 2 * max_block_ * n1_)
      throw std::out_of_range("gram form: moments needed to degree " + std::to_string(2 * max_block_ * n1_));
  }

  const MomentFunctional<S>& measure() const { return measure_; }
  int dim() const { return measure_.dim(); }
  int n1() const { return n1_; }
  int max_block() const { return max_block_; }

  // (block, multi-index) labels of the basis, block-major, graded-lex inside.
  std::vector<MultiIndex> basis() const {
    std::vector<MultiIndex> out;
    for (int m = 0; m <= max_block_; ++m)
      for (auto& a : multi_indices(dim(), m * n1_)) out.push_back(std::move(a));
    return out;
  }

  std::vector<std::vector<S>> matrix() const {
    const auto b = basis();
    std::vector<std::vector<S>> g(b.size(), std::vector<S>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i; j < b.size(); ++j) g[i][j] = g[j][i] = measure_.moment(b[i] + b[j]);
    return g;
  }

 private:
  MomentFunctional<S> measure_;
  int n1_;
  int max_block_;
};

namespace detail {
template <Scalar S>
void check_in_form(const GramForm<S>& gf, const PolyElement<S>& e) {
  if (e.basis() != Basis::monomial) throw std::invalid_argument("gram form: convert to monomial coordinates first");
  if (e.dim() != gf.dim() || e.n1() != gf.n1()) throw std::invalid_argument("gram form: (d, n1) mismatch");
  for (int m = gf.max_block() + 1; m <= e.max_block(); ++m)
    if (!e.block(m).is_zero()) throw std::out_of_range("gram form: element degree exceeds the form's truncation");
}
}  // namespace detail

// E[e1 e2] = sum f_alpha g_beta E[x^{alpha+beta}].
template <Scalar S>
S inner(const GramForm<S>& gf, const PolyElement<S>& e1, const PolyElement<S>& e2) {
  detail::check_in_form(gf, e1);
  detail::check_in_form(gf, e2);
  const int top1 = std::min(e1.max_block(), gf.max_block());
  const int top2 = std::min(e2.max_block(), gf.max_block());
  S sum = from_int<S>(0);
  for (int m = 0; m <= top1; ++m) {
    const auto ia = e1.block(m).indices();
    for (int k = 0; k <= top2; ++k) {
      const auto ib = e2.block(k).indices();
      for (std::size_t i = 0; i < ia.size(); ++i) {
        const S& fa = e1.block(m).coeffs()[i];
        if (is_zero(fa)) continue;
        for (std::size_t j = 0; j < ib.size(); ++j) {
          const S& gb = e2.block(k).coeffs()[j];
          if (is_zero(gb)) continue;
          sum += fa * gb * gf.measure().moment(ia[i] + ib[j]);
        }
      }
    }
  }
  return sum;
}

struct NondegeneracyReport {
  bool positive_definite = false;
  bool exact = false;
  int size = 0;
  // Exact path: 1-based index of the first leading principal minor <= 0.
  std::optional<int> failing_minor;
  std::string failing_minor_value;
  // Float path: extreme eigenvalues and condition estimate.
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool ill_conditioned = false;
};

// Exact scalars: sign of every leading principal minor, via symmetric
// elimination (minor_k = product of the first k pivots). Floats: extreme
// eigenvalues of the Gram matrix.
template <Scalar S>
NondegeneracyReport nondegeneracy(const GramForm<S>& gf) {
  auto g = gf.matrix();
  const int size = static_cast<int>(g.size());
  NondegeneracyReport rep;
  rep.size = size;
  if constexpr (is_exact_v<S>) {
    rep.exact = true;
    S minor = from_int<S>(1);
    for (int k = 0; k < size; ++k) {
      const S pivot = g[k][k];
      minor *= pivot;
      if (!(pivot > from_int<S>(0))) {
        rep.failing_minor = k + 1;
        rep.failing_minor_value = to_string(minor);
        return rep;
      }
      for (int i = k + 1; i < size; ++i) {
        if (is_zero(g[i][k])) continue;
        const S f = g[i][k] / pivot;
        for (int j = k + 1; j < size; ++j) g[i][j] -= f * g[k][j];
      }
    }
    rep.positive_definite = true;
    return rep;
  } else {
    Eigen::MatrixXd m(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) m(i, j) = scalar_traits<S>::to_double(g[i][j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = solver.eigenvalues().minCoeff();
    rep.max_eigenvalue = solver.eigenvalues().maxCoeff();
    const double floor = 1e-12 * std::max(1.0, rep.max_eigenvalue);
    rep.positive_definite = rep.min_eigenvalue > floor;
    rep.ill_conditioned = rep.min_eigenvalue > 0 && rep.max_eigenvalue / rep.min_eigenvalue > 1e12;
    return rep;
  }
}

// The functional <<F, g>> = (f, g)_H, blocks
//   u_beta = (k~!/beta!) sum_alpha f_alpha E[x^{alpha+beta}],  |beta| = k~.
template <Scalar S>
DualFunctional<S> embed_regular(const GramForm<S>& gf, const PolyElement<S>& f) {
  detail::check_in_form(gf, f);
  auto out = DualFunctional<S>::zero(gf.dim(), gf.n1(), gf.max_block());
  const int top = std::min(f.max_block(), gf.max_block());
  for (int k = 0; k <= gf.max_block(); ++k) {
    auto& u = out.block(k);
    const auto ib = u.indices();
    for (std::size_t j = 0; j < ib.size(); ++j) {
      S acc = from_int<S>(0);
      for (int m = 0; m <= top; ++m) {
        const auto ia = f.block(m).indices();
        for (std::size_t i = 0; i < ia.size(); ++i) {
          const S& fa = f.block(m).coeffs()[i];
          if (!is_zero(fa)) acc += fa * gf.measure().moment(ia[i] + ib[j]);
        }
      }
      u.coeffs()[j] = acc * ib[j].template multinomial<S>();
    }
  }
  return out;
}

template <Scalar S>
struct GrowthBound {
  std::vector<S> norm_squared;  // || |P_{n~}(.)|_{-p} ||_H^2, exact in rational mode
  std::vector<double> norm;     // its square root
  std::vector<double> c;        // (norm / n~!)^{1/n~}, n >= 1; c[0] unused (0)
  double c_star = 0.0;
  double k_const = 1.0;
};

// Growth of the unit-gamma P-kernels in H:
//   || |P_{n~}(.)|_{-p} ||_H^2 = sum_alpha (alpha!/n~!) a^{-2p alpha} E[(P_{n~}(x)_alpha)^2],
// with P_{n~}(x)_alpha a polynomial in x. Reports c_n, C* = max c_n and
// K = max(1, ||P_0||_H).
template <Scalar S>
GrowthBound<S> growth_bound_fit(const AppellSystem<S>& sys, const GramForm<S>& gf, int p, const ScaleVector& a,
                                int max_block) {
  if (!sys.gamma().is_unit()) throw std::invalid_argument("growth_bound_fit: requires gamma = 1");
  if (sys.dim() != gf.dim()) throw std::invalid_argument("growth_bound_fit: dimension mismatch");
  if (max_block > sys.max_block()) throw std::out_of_range("growth_bound_fit: block cap beyond the system's");
  if (gf.measure().max_degree() < 2 * max_block * sys.n1())
    throw std::out_of_range("growth_bound_fit: moments needed to degree " + std::to_string(2 * max_block * sys.n1()));
  a.validate(sys.dim());
  const int d = sys.dim();
  std::vector<S> weight;  // a_i^{-2p}
  for (double ai : a.a) weight.push_back(power<S>(S(ai), -2 * p));

  GrowthBound<S> out;
  for (int n = 0; n <= max_block; ++n) {
    const int deg = n * sys.n1();
    const auto alphas = multi_indices(d, deg);
    const auto polys = p_kernel_symbolic(sys, n);
    S total = from_int<S>(0);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (polys[i].empty()) continue;
      S second_moment = from_int<S>(0);
      for (const auto& [e1, c1] : polys[i])
        for (const auto& [e2, c2] : polys[i]) second_moment += c1 * c2 * gf.measure().moment(e1 + e2);
      S w = from_int<S>(1) / alphas[i].template multinomial<S>();
      for (int j = 0; j < d; ++j) w *= power<S>(weight[j], alphas[i][j]);
      total += w * second_moment;
    }
    out.norm_squared.push_back(total);
    const double norm = std::sqrt(std::max(0.0, scalar_traits<S>::to_double(total)));
    out.norm.push_back(norm);
    if (n == 0) {
      out.c.push_back(0.0);
      out.k_const = std::max(1.0, norm);
    } else {
      const double cn = std::pow(norm / factorial<double>(deg), 1.0 / deg);
      out.c.push_back(cn);
      out.c_star = std::max(out.c_star, cn);
    }
  }
  return out;
}

struct EmbeddingFit {
  double max_ratio = 0.0;       // max ||phi||_H / ||phi||_{p,q} over the samples
  double constant_ratio = 0.0;  // the same ratio for phi = 1
  int samples = 0;
};

// Empirical constant c with ||phi||_H <= c ||phi||_{p,q,chi,gamma} over random
// truncated elements (zero element excluded).
template <Scalar S>
EmbeddingFit embedding_constant_fit(const GramForm<S>& gf, const AppellSystem<S>& sys, int p, int q,
                                    const ScaleVector& a, int samples, std::uint64_t seed) {
  const int top = std::min(gf.max_block(), sys.max_block());
  auto h_norm = [&](const PolyElement<S>& e) {
    const auto f = appell_to_monomial(sys, e);
    return std::sqrt(std::max(0.0, scalar_traits<S>::to_double(inner(gf, f, f))));
  };
  EmbeddingFit fit;
  auto one = PolyElement<S>::zero(sys.dim(), sys.n1(), top, Basis::appell, sys.id());
  one.block(0).coeffs()[0] = from_int<S>(1);
  fit.constant_ratio = h_norm(one) / pq_norm(one, p, q, a);
  auto rng = make_rng(seed, 0xE3B);
  for (int s = 0; s < samples; ++s) {
    std::vector<SymTensor<S>> blocks;
    for (int m = 0; m <= top; ++m) blocks.push_back(random_tensor<S>(rng, sys.dim(), m * sys.n1()));
    const auto e = PolyElement<S>::appell(sys, std::move(blocks));
    if (e.is_zero()) continue;
    fit.max_ratio = std::max(fit.max_ratio, h_norm(e) / pq_norm(e, p, q, a));
    ++fit.samples;
  }
  return fit;
}

}  // namespace dual_appell
