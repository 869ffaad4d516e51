#pragma once

// Generalized functions on truncated P_{n1}, represented by their action on
// monomials: F acts as <<F, f>> = sum_m <U^{(m~)}, f^{(m~)}>. On top of that:
// delta_z, adjoints of D_chi operators, the Q-system dual to P^{chi,gamma},
// the kernel decomposition F = sum_m Q_{m~}(Phi^{(m~)}) and the S-transform.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dchi.hpp"

namespace dual_appell {

template <Scalar S>
class DualFunctional {
 public:
  DualFunctional(int dim, int n1, std::vector<SymTensor<S>> blocks)
      : dim_(dim), n1_(n1), blocks_(std::move(blocks)) {
    if (dim_ < 1 || n1_ < 1) throw std::invalid_argument("functional: dim and n1 must be positive");
    if (blocks_.empty()) throw std::invalid_argument("functional: at least one block required");
    for (std::size_t m = 0; m < blocks_.size(); ++m)
      if (blocks_[m].dim() != dim_ || blocks_[m].rank() != static_cast<int>(m) * n1_)
        throw std::invalid_argument("functional: block " + std::to_string(m) + " has wrong shape");
  }

  static DualFunctional zero(int dim, int n1, int max_block) {
    std::vector<SymTensor<S>> b;
    for (int m = 0; m <= max_block; ++m) b.emplace_back(dim, m * n1);
    return DualFunctional(dim, n1, std::move(b));
  }

  int dim() const { return dim_; }
  int n1() const { return n1_; }
  int max_block() const { return static_cast<int>(blocks_.size()) - 1; }
  const std::vector<SymTensor<S>>& blocks() const { return blocks_; }
  const SymTensor<S>& block(int m) const { return blocks_.at(m); }
  SymTensor<S>& block(int m) {
    if (m < 0 || m > max_block()) throw std::out_of_range("functional: block " + std::to_string(m) + " not stored");
    return blocks_[m];
  }

  bool is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& b) { return b.is_zero(); });
  }

  DualFunctional& operator+=(const DualFunctional& o) {
    if (o.dim_ != dim_ || o.n1_ != n1_ || o.blocks_.size() != blocks_.size())
      throw std::invalid_argument("functional: shape mismatch");
    for (std::size_t m = 0; m < blocks_.size(); ++m) blocks_[m] += o.blocks_[m];
    return *this;
  }
  DualFunctional& operator*=(const S& c) {
    for (auto& b : blocks_) b *= c;
    return *this;
  }
  friend DualFunctional operator+(DualFunctional a, const DualFunctional& b) { return a += b; }
  friend DualFunctional operator*(const S& c, DualFunctional a) { return a *= c; }

  friend bool operator==(const DualFunctional&, const DualFunctional&) = default;

 private:
  int dim_;
  int n1_;
  std::vector<SymTensor<S>> blocks_;
};

// delta_z: U^{(m~)} = z^{(x) m~}, so <<delta_z, f>> = f(z).
template <Scalar S>
DualFunctional<S> delta(const Point<S>& z, int n1, int max_block) {
  if (z.empty()) throw std::invalid_argument("delta: empty point");
  std::vector<SymTensor<S>> b;
  for (int m = 0; m <= max_block; ++m) b.push_back(pure_power(z, m * n1));
  return DualFunctional<S>(static_cast<int>(z.size()), n1, std::move(b));
}

// <<F, e>> for a monomial-coordinate element. Blocks of e beyond the
// functional's cap must vanish: F says nothing about them.
template <Scalar S>
S pair(const DualFunctional<S>& f, const PolyElement<S>& e) {
  if (e.basis() != Basis::monomial) throw std::invalid_argument("pair: Appell element needs its system");
  if (e.dim() != f.dim() || e.n1() != f.n1()) throw std::invalid_argument("pair: (d, n1) mismatch");
  S sum = from_int<S>(0);
  for (int m = 0; m <= e.max_block(); ++m) {
    if (m > f.max_block()) {
      if (!e.block(m).is_zero()) throw std::out_of_range("pair: element degree exceeds the functional's truncation");
      continue;
    }
    sum += pairing(f.block(m), e.block(m));
  }
  return sum;
}

template <Scalar S>
S pair(const DualFunctional<S>& f, const AppellSystem<S>& sys, const PolyElement<S>& e) {
  return e.basis() == Basis::monomial ? pair(f, e) : pair(f, appell_to_monomial(sys, e));
}

// Dual of <Phi, D_chi^{n~}>: block j of the result is
//   1{j>=n} (j~! chi_{(j-n)~}) / ((j-n)~! chi_{j~}) U^{((j-n)~)} (x) Phi.
template <Scalar S>
DualFunctional<S> adjoint_apply(const DOperator<S>& op, const DualFunctional<S>& f) {
  detail::check_operator(op, f.dim(), f.n1(), f.max_block());
  auto out = DualFunctional<S>::zero(f.dim(), f.n1(), f.max_block());
  for (int j = op.order(); j <= f.max_block(); ++j) {
    const auto& u = f.block(j - op.order());
    if (u.is_zero()) continue;
    out.block(j) = op.monomial_factor(j) * sym_product(u, op.symbol());
  }
  return out;
}

// Q_{m~}(Phi) truncated at block max_block, closed form:
//   U^{(j~)} = 1{j>=m} (j~! chi_0) / ((j-m)~! chi_{j~}) Phi (x) gtilde_{(j-m)~},
// gtilde the kernels of 1/gamma.
template <Scalar S>
DualFunctional<S> q_functional(const AppellSystem<S>& sys, int m, const SymTensor<S>& phi, int max_block) {
  const int n1 = sys.n1();
  if (m < 0 || m > max_block) throw std::out_of_range("q_functional: m must lie in [0, max_block]");
  if (phi.dim() != sys.dim() || phi.rank() != m * n1) throw std::invalid_argument("q_functional: kernel has wrong shape");
  if (sys.gamma().max_block() < max_block - m)
    throw std::out_of_range("q_functional: 1/gamma needed to degree " + std::to_string((max_block - m) * n1));
  if (sys.chi().max_block() < max_block) throw std::out_of_range("q_functional: chi truncated below max_block");
  const auto gtilde = germ_reciprocal(sys.gamma());
  auto out = DualFunctional<S>::zero(sys.dim(), n1, max_block);
  for (int j = m; j <= max_block; ++j) {
    const auto& g = gtilde.kernel(j - m);
    if (g.is_zero()) continue;
    const S factor = factorial<S>(j * n1) * sys.chi().coeff(0) /
                     (factorial<S>((j - m) * n1) * sys.chi().coeff(j));
    out.block(j) = factor * sym_product(phi, g);
  }
  return out;
}

// Q_{m~}(Phi) by its defining sum, sum_k (1/k~!) <Phi (x) gtilde_k~, D^{(m+k)~}>^* delta_0.
template <Scalar S>
DualFunctional<S> q_functional_by_definition(const AppellSystem<S>& sys, int m, const SymTensor<S>& phi, int max_block) {
  const int n1 = sys.n1();
  const auto gtilde = germ_reciprocal(sys.gamma());
  const auto delta0 = delta(Point<S>(sys.dim(), from_int<S>(0)), n1, max_block);
  auto out = DualFunctional<S>::zero(sys.dim(), n1, max_block);
  for (int k = 0; m + k <= max_block; ++k) {
    const DOperator<S> op(sym_product(phi, gtilde.kernel(k)), sys.chi());
    auto term = adjoint_apply(op, delta0);
    out += (from_int<S>(1) / factorial<S>(k * n1)) * term;
  }
  return out;
}

// Lhs and rhs of <<Q_{m~}(Phi), <P_{n~}, phi>>> = chi_0 delta_{mn} n~! <Phi, phi>.
// The chi_0 factor is 1 for every named chi.
template <Scalar S>
struct Biorthogonality {
  S lhs;
  S rhs;
};

template <Scalar S>
Biorthogonality<S> biorthogonality_check(const AppellSystem<S>& sys, int m, const SymTensor<S>& big_phi, int n,
                                         const SymTensor<S>& phi) {
  const int cap = std::max(m, n);
  const auto q = q_functional(sys, m, big_phi, cap);
  const auto e = PolyElement<S>::appell_single(sys, n, phi, cap);
  S rhs = from_int<S>(0);
  if (m == n) rhs = sys.chi().coeff(0) * factorial<S>(n * sys.n1()) * pairing(big_phi, phi);
  return {pair(q, sys, e), rhs};
}

namespace detail {
// (1/n~!) <<F, <P_{n~}, .>>>, blockwise: chi_0 times the decomposition kernels.
template <Scalar S>
std::vector<SymTensor<S>> pairing_kernels(const DualFunctional<S>& f, const ChiFunction<S>& chi,
                                            const Germ<S>& gamma, int max_block) {
  const int n1 = chi.n1();
  std::vector<SymTensor<S>> kernels;
  for (int n = 0; n <= max_block; ++n) {
    SymTensor<S> acc(f.dim(), n * n1);
    for (int m = 0; m <= std::min(n, f.max_block()); ++m) {
      if (f.block(m).is_zero()) continue;
      const auto& g = gamma.kernel(n - m);
      if (g.is_zero()) continue;
      acc += (binomial<S>(n * n1, m * n1) * chi.coeff(m)) * sym_product(f.block(m), g);
    }
    kernels.push_back(acc * (from_int<S>(1) / factorial<S>(n * n1)));
  }
  return kernels;
}
}  // namespace detail

// Kernels Phi^{(n~)}, n = 0..max_block (default: the functional's cap), with
//   Phi^{(n~)} = (1/(chi_0 n~!)) sum_{m<=n} C(n~, m~) chi_{m~} U^{(m~)} (x) gamma_{(n-m)~},
// which is <Phi^{(n~)}, phi> = <<F, <P_{n~}, phi>>> / (chi_0 n~!) read off blockwise.
// Blocks of F beyond its cap are taken as zero.
template <Scalar S>
std::vector<SymTensor<S>> decompose(const DualFunctional<S>& f, const AppellSystem<S>& sys, int max_block = -1) {
  if (max_block < 0) max_block = f.max_block();
  if (f.dim() != sys.dim() || f.n1() != sys.n1()) throw std::invalid_argument("decompose: (d, n1) mismatch");
  if (sys.gamma().max_block() < max_block)
    throw std::out_of_range("decompose: gamma needed to degree " + std::to_string(max_block * sys.n1()));
  if (sys.chi().max_block() < std::min(max_block, f.max_block()))
    throw std::out_of_range("decompose: chi truncated below the functional's degree");
  auto kernels = detail::pairing_kernels(f, sys.chi(), sys.gamma(), max_block);
  const S inv_chi0 = from_int<S>(1) / sys.chi().coeff(0);
  for (auto& k : kernels) k *= inv_chi0;
  return kernels;
}

// F = sum_m Q_{m~}(Phi^{(m~)}), truncated at max_block.
template <Scalar S>
DualFunctional<S> reconstruct(const std::vector<SymTensor<S>>& kernels, const AppellSystem<S>& sys, int max_block) {
  if (static_cast<int>(kernels.size()) < max_block + 1)
    throw std::invalid_argument("reconstruct: kernels required for m = 0.." + std::to_string(max_block));
  auto out = DualFunctional<S>::zero(sys.dim(), sys.n1(), max_block);
  for (int m = 0; m <= max_block; ++m) {
    if (kernels[m].is_zero()) continue;
    out += q_functional(sys, m, kernels[m], max_block);
  }
  return out;
}

// The generating function chi^gamma(theta; x) = gamma(theta) chi(<x, theta>) as
// a monomial-coordinate element of x, truncated at max_block:
//   f^{(m~)} = gamma(theta) chi_{m~} / m~! theta^{(x) m~}.
template <Scalar S>
PolyElement<S> generating_element(const AppellSystem<S>& sys, const Point<S>& theta, int max_block) {
  const int n1 = sys.n1();
  const S g = germ_evaluate(sys.gamma(), theta);
  std::vector<SymTensor<S>> blocks;
  for (int m = 0; m <= max_block; ++m)
    blocks.push_back((g * sys.chi().coeff(m) / factorial<S>(m * n1)) * pure_power(theta, m * n1));
  return PolyElement<S>::monomial(std::move(blocks), n1);
}

template <Scalar S>
struct STransform {
  S path_a;             // <<F, chi^gamma(theta; .)>>
  S path_b;             // chi_0 sum_{n <= kernel_cap} <Phi^{(n~)}, theta^{n~}>
  S kernel_series;      // same sum restricted to n <= F's cap
  double tail_bound;    // sum_{cap < n <= kernel_cap} |chi_0 <Phi^{(n~)}, theta^{n~}>|
  int kernel_cap;
};

// Two routes to (S F)(theta). F vanishes above its cap, so its kernel series
// terminates at cap + (stored gamma cap); path_b sums all of it and agrees
// with path_a up to round-off. kernel_series keeps only the kernels that
// decompose(F) reports, and tail_bound bounds what it leaves out.
template <Scalar S>
STransform<S> s_transform(const DualFunctional<S>& f, const AppellSystem<S>& sys, const Point<S>& theta) {
  const int cap = f.max_block();
  const int kernel_cap = cap + sys.gamma().max_block();
  const S a = pair(f, generating_element(sys, theta, cap));
  // gamma is taken as exactly its stored polynomial on both paths.
  auto padded = sys.gamma().kernels();
  for (int n = sys.gamma().max_block() + 1; n <= kernel_cap; ++n) padded.emplace_back(sys.dim(), n * sys.n1());
  const Germ<S> gamma(sys.dim(), sys.n1(), std::move(padded));
  if (f.dim() != sys.dim() || f.n1() != sys.n1()) throw std::invalid_argument("s_transform: (d, n1) mismatch");
  const auto kernels = detail::pairing_kernels(f, sys.chi(), gamma, kernel_cap);
  S series = from_int<S>(0), full = from_int<S>(0);
  double tail = 0.0;
  for (int n = 0; n <= kernel_cap; ++n) {
    const S term = evaluate(kernels[n], theta);
    full += term;
    if (n <= cap) series += term;
    else tail += magnitude(term);
  }
  return {a, full, series, tail, kernel_cap};
}

// Kernel sequence of S F / chi_0: exactly the decomposition kernels.
template <Scalar S>
std::vector<SymTensor<S>> s_kernels(const DualFunctional<S>& f, const AppellSystem<S>& sys) {
  return decompose(f, sys);
}

template <Scalar To, Scalar From>
DualFunctional<To> functional_cast(const DualFunctional<From>& f) {
  std::vector<SymTensor<To>> b;
  for (const auto& t : f.blocks()) b.push_back(tensor_cast<To>(t));
  return DualFunctional<To>(f.dim(), f.n1(), std::move(b));
}

}  // namespace dual_appell
