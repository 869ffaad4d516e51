#pragma once

// The n1-Appell-like system P^{chi,gamma}: kernels of the generating function
//
//   gamma(theta) chi(<z, theta>) = sum_n <P_{n~}(z), theta^{n~}> / n~!,
//
// and the polynomial space P_{n1} carried either in monomial coordinates
// f^{(m~)} (phi(x) = sum <x^{m~}, f^{(m~)}>) or in Appell coordinates
// phi^{(n~)} (phi(x) = sum <P_{n~}(x), phi^{(n~)}>).

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "series.hpp"

namespace dual_appell {

enum class Basis { monomial, appell };

inline const char* basis_name(Basis b) { return b == Basis::monomial ? "monomial" : "appell"; }

template <Scalar S>
class AppellSystem {
 public:
  AppellSystem(ChiFunction<S> chi, Germ<S> gamma, int max_block)
      : chi_(std::move(chi)), gamma_(std::move(gamma)), max_block_(max_block) {
    if (max_block_ < 0) throw std::invalid_argument("appell system: degree cap must be non-negative");
    if (chi_.n1() != gamma_.n1()) throw std::invalid_argument("appell system: chi and gamma disagree on n1");
    if (chi_.max_block() < max_block_)
      throw std::out_of_range("appell system: chi stored only to degree " + std::to_string(chi_.max_block() * n1()));
    if (gamma_.max_block() < max_block_)
      throw std::out_of_range("appell system: gamma stored only to degree " +
                              std::to_string(gamma_.max_block() * n1()));
    id_ = fingerprint();
  }

  const ChiFunction<S>& chi() const { return chi_; }
  const Germ<S>& gamma() const { return gamma_; }
  int dim() const { return gamma_.dim(); }
  int n1() const { return chi_.n1(); }
  int max_block() const { return max_block_; }
  // Content fingerprint; Appell-tagged elements carry it.
  const std::string& id() const { return id_; }

 private:
  std::string fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
      for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
      h = (h ^ 0xff) * 1099511628211ull;
    };
    mix(std::to_string(n1()) + ":" + std::to_string(dim()) + ":" + std::to_string(max_block_));
    for (int n = 0; n <= max_block_; ++n) mix(to_string(chi_.coeff(n)));
    for (int n = 0; n <= max_block_; ++n)
      for (const auto& c : gamma_.kernel(n).coeffs()) mix(to_string(c));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  ChiFunction<S> chi_;
  Germ<S> gamma_;
  int max_block_;
  std::string id_;
};

template <Scalar S>
class PolyElement {
 public:
  PolyElement(int dim, int n1, Basis basis, std::vector<SymTensor<S>> blocks, std::string system = {})
      : dim_(dim), n1_(n1), basis_(basis), system_(std::move(system)), blocks_(std::move(blocks)) {
    if (dim_ < 1 || n1_ < 1) throw std::invalid_argument("poly element: dim and n1 must be positive");
    if (blocks_.empty()) throw std::invalid_argument("poly element: at least one block required");
    for (std::size_t m = 0; m < blocks_.size(); ++m)
      if (blocks_[m].dim() != dim_ || blocks_[m].rank() != static_cast<int>(m) * n1_)
        throw std::invalid_argument("poly element: block " + std::to_string(m) + " must have rank " +
                                    std::to_string(m * n1_));
    if (basis_ == Basis::monomial) system_.clear();
  }

  static PolyElement zero(int dim, int n1, int max_block, Basis basis, std::string system = {}) {
    std::vector<SymTensor<S>> b;
    for (int m = 0; m <= max_block; ++m) b.emplace_back(dim, m * n1);
    return PolyElement(dim, n1, basis, std::move(b), std::move(system));
  }
  static PolyElement monomial(std::vector<SymTensor<S>> blocks, int n1) {
    const int d = blocks.at(0).dim();
    return PolyElement(d, n1, Basis::monomial, std::move(blocks));
  }
  static PolyElement appell(const AppellSystem<S>& sys, std::vector<SymTensor<S>> blocks) {
    return PolyElement(sys.dim(), sys.n1(), Basis::appell, std::move(blocks), sys.id());
  }
  // Appell element with the single block phi at position n.
  static PolyElement appell_single(const AppellSystem<S>& sys, int n, const SymTensor<S>& phi, int max_block) {
    auto e = zero(sys.dim(), sys.n1(), max_block, Basis::appell, sys.id());
    e.block(n) = phi;
    return e;
  }

  int dim() const { return dim_; }
  int n1() const { return n1_; }
  Basis basis() const { return basis_; }
  const std::string& system() const { return system_; }
  int max_block() const { return static_cast<int>(blocks_.size()) - 1; }
  const std::vector<SymTensor<S>>& blocks() const { return blocks_; }
  const SymTensor<S>& block(int m) const { return blocks_.at(m); }
  SymTensor<S>& block(int m) {
    if (m < 0 || m > max_block()) throw std::out_of_range("poly element: block " + std::to_string(m) + " not stored");
    return blocks_[m];
  }

  bool is_zero() const {
    for (const auto& b : blocks_)
      if (!b.is_zero()) return false;
    return true;
  }

  PolyElement& operator+=(const PolyElement& o) {
    check_same_space(o);
    for (std::size_t m = 0; m < blocks_.size(); ++m) blocks_[m] += o.blocks_[m];
    return *this;
  }
  PolyElement& operator*=(const S& c) {
    for (auto& b : blocks_) b *= c;
    return *this;
  }
  friend PolyElement operator+(PolyElement a, const PolyElement& b) { return a += b; }
  friend PolyElement operator*(const S& c, PolyElement a) { return a *= c; }

  friend bool operator==(const PolyElement&, const PolyElement&) = default;

 private:
  void check_same_space(const PolyElement& o) const {
    if (o.dim_ != dim_ || o.n1_ != n1_ || o.basis_ != basis_ || o.system_ != system_ ||
        o.blocks_.size() != blocks_.size())
      throw std::invalid_argument("poly element: operands live in different coordinate spaces");
  }

  int dim_;
  int n1_;
  Basis basis_;
  std::string system_;
  std::vector<SymTensor<S>> blocks_;
};

namespace detail {
template <Scalar S>
void check_tag(const AppellSystem<S>& sys, const PolyElement<S>& e, Basis expected) {
  if (e.basis() != expected)
    throw std::invalid_argument(std::string("expected a ") + basis_name(expected) + " element, got " +
                                basis_name(e.basis()));
  if (e.dim() != sys.dim() || e.n1() != sys.n1()) throw std::invalid_argument("element does not match system (d, n1)");
  if (expected == Basis::appell && e.system() != sys.id())
    throw std::invalid_argument("element is tagged with a different Appell system");
  if (e.max_block() > sys.max_block()) throw std::out_of_range("element exceeds the system's degree cap");
}
}  // namespace detail

// P_{n~}(z) = sum_{m=0}^{n} C(n~, m~) chi_{m~} z^{(x) m~} (x) gamma_{(n-m)~}.
template <Scalar S>
SymTensor<S> p_kernel(const AppellSystem<S>& sys, int n, const Point<S>& z) {
  if (n < 0 || n > sys.max_block()) throw std::out_of_range("p_kernel: block " + std::to_string(n) + " beyond cap");
  if (static_cast<int>(z.size()) != sys.dim()) throw std::invalid_argument("p_kernel: point has wrong dimension");
  const int n1 = sys.n1();
  SymTensor<S> out(sys.dim(), n * n1);
  for (int m = 0; m <= n; ++m) {
    const auto& g = sys.gamma().kernel(n - m);
    if (g.is_zero()) continue;
    out += (binomial<S>(n * n1, m * n1) * sys.chi().coeff(m)) * sym_product(pure_power(z, m * n1), g);
  }
  return out;
}

// Polynomial in x, keyed by exponent, graded-lex ordered.
template <Scalar S>
using Polynomial = std::map<MultiIndex, S>;

// P_{n~}(x) with each tensor coefficient written as a polynomial in x:
// result[i] is the coefficient at the i-th multi-index of rank n~.
template <Scalar S>
std::vector<Polynomial<S>> p_kernel_symbolic(const AppellSystem<S>& sys, int n) {
  if (n < 0 || n > sys.max_block()) throw std::out_of_range("p_kernel: block " + std::to_string(n) + " beyond cap");
  const int n1 = sys.n1(), d = sys.dim();
  const auto alphas = multi_indices(d, n * n1);
  std::vector<Polynomial<S>> out(alphas.size());
  for (int m = 0; m <= n; ++m) {
    const auto& g = sys.gamma().kernel(n - m);
    const S outer = binomial<S>(n * n1, m * n1) * sys.chi().coeff(m);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      for (const auto& delta : multi_indices(d, m * n1)) {
        if (!alphas[i].dominates(delta)) continue;
        const S& ge = g.at(alphas[i] - delta);
        if (is_zero(ge)) continue;
        auto [it, fresh] = out[i].try_emplace(delta, from_int<S>(0));
        it->second += outer * delta.template multinomial<S>() * ge;
      }
    }
  }
  for (auto& poly : out) std::erase_if(poly, [](const auto& kv) { return is_zero(kv.second); });
  return out;
}

// f^{(m~)} = sum_{n>=m} C(n~, m~) chi_{m~} contract(phi^{(n~)}, gamma_{(n-m)~}).
template <Scalar S>
PolyElement<S> appell_to_monomial(const AppellSystem<S>& sys, const PolyElement<S>& e) {
  detail::check_tag(sys, e, Basis::appell);
  const int n1 = sys.n1(), top = e.max_block();
  std::vector<SymTensor<S>> f;
  for (int m = 0; m <= top; ++m) {
    SymTensor<S> acc(sys.dim(), m * n1);
    for (int n = m; n <= top; ++n) {
      if (e.block(n).is_zero()) continue;
      const auto& g = sys.gamma().kernel(n - m);
      if (g.is_zero()) continue;
      acc += binomial<S>(n * n1, m * n1) * contract(e.block(n), g);
    }
    f.push_back(acc * sys.chi().coeff(m));
  }
  return PolyElement<S>::monomial(std::move(f), n1);
}

// Inverse of appell_to_monomial: block-triangular solve from the top block
// down; the diagonal factor chi_{m~} gamma_0 is nonzero by construction.
template <Scalar S>
PolyElement<S> monomial_to_appell(const AppellSystem<S>& sys, const PolyElement<S>& e) {
  detail::check_tag(sys, e, Basis::monomial);
  const int n1 = sys.n1(), top = e.max_block();
  std::vector<SymTensor<S>> phi(top + 1);
  for (int m = top; m >= 0; --m) {
    SymTensor<S> rest = e.block(m);
    for (int n = m + 1; n <= top; ++n) {
      if (phi[n].is_zero()) continue;
      const auto& g = sys.gamma().kernel(n - m);
      if (g.is_zero()) continue;
      rest -= (binomial<S>(n * n1, m * n1) * sys.chi().coeff(m)) * contract(phi[n], g);
    }
    phi[m] = rest * (from_int<S>(1) / (sys.chi().coeff(m) * sys.gamma().constant()));
  }
  return PolyElement<S>::appell(sys, std::move(phi));
}

// Right-hand side of the change-of-gamma identity
//   P^{chi,g1}_{n~}(z) = sum_m C(n~, m~) P^{chi,g2}_{m~}(z) (x) ghat_{(n-m)~},
// ghat the kernels of g1/g2.
template <Scalar S>
SymTensor<S> change_of_gamma_rhs(const AppellSystem<S>& sys1, const AppellSystem<S>& sys2, int n, const Point<S>& z) {
  if (!(sys1.chi() == sys2.chi())) throw std::invalid_argument("change_of_gamma_rhs: systems must share chi");
  if (sys1.dim() != sys2.dim()) throw std::invalid_argument("change_of_gamma_rhs: dimension mismatch");
  if (n > sys1.max_block() || n > sys2.max_block()) throw std::out_of_range("change_of_gamma_rhs: block beyond cap");
  const auto ghat = germ_quotient(sys1.gamma(), sys2.gamma());
  const int n1 = sys1.n1();
  SymTensor<S> out(sys1.dim(), n * n1);
  for (int m = 0; m <= n; ++m)
    out += binomial<S>(n * n1, m * n1) * sym_product(p_kernel(sys2, m, z), ghat.kernel(n - m));
  return out;
}

// ||phi||^2_{p,q} = sum_n (n~!)^2 2^{q n~} |phi^{(n~)}|_p^2, phi in Appell coordinates.
template <Scalar S>
double pq_norm(const PolyElement<S>& e, int p, int q, const ScaleVector& a) {
  if (e.basis() != Basis::appell) throw std::invalid_argument("pq_norm: expects Appell coordinates");
  double sum = 0.0;
  for (int n = 0; n <= e.max_block(); ++n) {
    const int deg = n * e.n1();
    const double f = factorial<double>(deg);
    const double bn = scaled_norm(e.block(n), a, p);
    sum += f * f * std::pow(2.0, q * deg) * bn * bn;
  }
  return std::sqrt(sum);
}

// Value at x of a monomial-coordinate element.
template <Scalar S>
S evaluate_poly(const PolyElement<S>& e, const Point<S>& x) {
  if (e.basis() != Basis::monomial) throw std::invalid_argument("evaluate_poly: Appell element needs its system");
  S sum = from_int<S>(0);
  for (const auto& b : e.blocks()) sum += evaluate(b, x);
  return sum;
}

// Value at x in either coordinate system.
template <Scalar S>
S evaluate_poly(const AppellSystem<S>& sys, const PolyElement<S>& e, const Point<S>& x) {
  if (e.basis() == Basis::monomial) {
    detail::check_tag(sys, e, Basis::monomial);
    return evaluate_poly(e, x);
  }
  detail::check_tag(sys, e, Basis::appell);
  S sum = from_int<S>(0);
  for (int n = 0; n <= e.max_block(); ++n) {
    if (e.block(n).is_zero()) continue;
    sum += pairing(p_kernel(sys, n, x), e.block(n));
  }
  return sum;
}

template <Scalar To, Scalar From>
AppellSystem<To> system_cast(const AppellSystem<From>& sys) {
  return AppellSystem<To>(chi_cast<To>(sys.chi()), germ_cast<To>(sys.gamma()), sys.max_block());
}

}  // namespace dual_appell
