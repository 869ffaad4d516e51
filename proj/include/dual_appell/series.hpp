#pragma once

// Lacunary entire functions chi(s) = sum_n chi_{n n1} s^{n n1} / (n n1)! and
// truncated germs gamma(theta) = sum_n <gamma_{n n1}, theta^{n n1}> / (n n1)!.
//
// Truncation caps are part of every value. Operations that need a kernel
// beyond the stored cap throw std::out_of_range instead of padding with 0.

#include <stdexcept>
#include <string>
#include <vector>

#include "sym_tensor.hpp"

namespace dual_appell {

template <Scalar S>
class ChiFunction {
 public:
  ChiFunction(int n1, std::vector<S> coeffs) : n1_(n1), coeffs_(std::move(coeffs)) {
    if (n1_ < 1) throw std::invalid_argument("chi: n1 must be positive");
    if (coeffs_.empty()) throw std::invalid_argument("chi: at least the constant coefficient is required");
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      if (is_zero(coeffs_[n]))
        throw std::invalid_argument("chi: coefficient of degree " + std::to_string(n * n1_) + " is zero");
  }

  int n1() const { return n1_; }
  // Highest stored block n (degree n * n1).
  int max_block() const { return static_cast<int>(coeffs_.size()) - 1; }

  // chi_{n n1}
  const S& coeff(int n) const {
    if (n < 0 || n > max_block())
      throw std::out_of_range("chi: coefficient of degree " + std::to_string(n * n1_) + " not stored (cap " +
                              std::to_string(max_block() * n1_) + ")");
    return coeffs_[n];
  }
  const std::vector<S>& coeffs() const { return coeffs_; }

  // Truncated value sum_n chi_{n~} s^{n~} / n~!.
  S operator()(const S& s) const {
    S sum = from_int<S>(0);
    for (int n = 0; n <= max_block(); ++n) sum += coeffs_[n] * power<S>(s, n * n1_) / factorial<S>(n * n1_);
    return sum;
  }

  friend bool operator==(const ChiFunction&, const ChiFunction&) = default;

 private:
  int n1_;
  std::vector<S> coeffs_;
};

// exp: n1 = 1, chi_n = 1.
template <Scalar S>
ChiFunction<S> chi_exp(int max_block) {
  if (max_block < 1) throw std::invalid_argument("chi: truncation cap must be positive");
  return ChiFunction<S>(1, std::vector<S>(max_block + 1, from_int<S>(1)));
}

// cos: n1 = 2, chi_{2m} = (-1)^m.
template <Scalar S>
ChiFunction<S> chi_cos(int max_block) {
  if (max_block < 1) throw std::invalid_argument("chi: truncation cap must be positive");
  std::vector<S> c;
  for (int m = 0; m <= max_block; ++m) c.push_back(from_int<S>(m % 2 ? -1 : 1));
  return ChiFunction<S>(2, std::move(c));
}

// Kingman's Lambda_s as a chi: n1 = 2,
//   chi_{2m} = (2m)! (-1/4)^m Gamma(s+1) / (m! Gamma(s+m+1)).
// The Gamma ratio is 1 / prod_{j=1..m} (s+j), so the coefficients are exact
// whenever s is.
template <Scalar S>
ChiFunction<S> chi_kingman(const S& s, int max_block) {
  if (max_block < 1) throw std::invalid_argument("chi: truncation cap must be positive");
  if (s < from_ratio<S>(-1, 2)) throw std::invalid_argument("kingman chi requires s >= -1/2");
  std::vector<S> c;
  S gamma_ratio = from_int<S>(1);
  for (int m = 0; m <= max_block; ++m) {
    if (m > 0) gamma_ratio /= (s + from_int<S>(m));
    c.push_back(factorial<S>(2 * m) * power<S>(from_ratio<S>(-1, 4), m) * gamma_ratio / factorial<S>(m));
  }
  return ChiFunction<S>(2, std::move(c));
}

// Named constructor used by configs and the CLI: "exp", "cos", "kingman".
template <Scalar S>
ChiFunction<S> chi_named(const std::string& name, int n1, int max_block, const S& s = from_int<S>(0)) {
  if (max_block < 1) throw std::invalid_argument("chi: truncation cap must be positive");
  if (name == "exp") {
    if (n1 != 1) throw std::invalid_argument("chi 'exp' requires n1 = 1");
    return chi_exp<S>(max_block);
  }
  if (name == "cos") {
    if (n1 != 2) throw std::invalid_argument("chi 'cos' requires n1 = 2");
    return chi_cos<S>(max_block);
  }
  if (name == "kingman") {
    if (n1 != 2) throw std::invalid_argument("chi 'kingman' requires n1 = 2");
    return chi_kingman<S>(s, max_block);
  }
  throw std::invalid_argument("unknown chi '" + name + "'");
}

template <Scalar S>
class Germ {
 public:
  // kernels[n] has rank n * n1; kernels[0] must be a nonzero scalar.
  Germ(int dim, int n1, std::vector<SymTensor<S>> kernels) : dim_(dim), n1_(n1), kernels_(std::move(kernels)) {
    if (dim_ < 1) throw std::invalid_argument("germ: dimension must be positive");
    if (n1_ < 1) throw std::invalid_argument("germ: n1 must be positive");
    if (kernels_.empty()) throw std::invalid_argument("germ: constant kernel required");
    for (std::size_t n = 0; n < kernels_.size(); ++n) {
      if (kernels_[n].dim() != dim_ || kernels_[n].rank() != static_cast<int>(n) * n1_)
        throw std::invalid_argument("germ: kernel " + std::to_string(n) + " has wrong shape");
    }
    if (is_zero(constant())) throw std::invalid_argument("germ: constant term gamma(0) must be nonzero");
  }

  // gamma = 1, stored with zero kernels up to max_block.
  static Germ unit(int dim, int n1, int max_block) {
    std::vector<SymTensor<S>> k;
    for (int n = 0; n <= max_block; ++n) k.emplace_back(dim, n * n1);
    k[0].coeffs()[0] = from_int<S>(1);
    return Germ(dim, n1, std::move(k));
  }

  int dim() const { return dim_; }
  int n1() const { return n1_; }
  int max_block() const { return static_cast<int>(kernels_.size()) - 1; }
  const S& constant() const { return kernels_[0].coeffs()[0]; }

  const SymTensor<S>& kernel(int n) const {
    if (n < 0 || n > max_block())
      throw std::out_of_range("germ: kernel of degree " + std::to_string(n * n1_) + " not stored (cap " +
                              std::to_string(max_block() * n1_) + ")");
    return kernels_[n];
  }
  const std::vector<SymTensor<S>>& kernels() const { return kernels_; }

  bool is_unit() const {
    if (constant() != from_int<S>(1)) return false;
    for (int n = 1; n <= max_block(); ++n)
      if (!kernels_[n].is_zero()) return false;
    return true;
  }

  Germ truncated(int max_block) const {
    if (max_block < 0 || max_block > this->max_block())
      throw std::out_of_range("germ: cannot truncate to block " + std::to_string(max_block));
    return Germ(dim_, n1_, {kernels_.begin(), kernels_.begin() + max_block + 1});
  }

  friend bool operator==(const Germ&, const Germ&) = default;

 private:
  int dim_;
  int n1_;
  std::vector<SymTensor<S>> kernels_;
};

namespace detail {
template <Scalar S>
void check_compatible(const Germ<S>& a, const Germ<S>& b) {
  if (a.dim() != b.dim() || a.n1() != b.n1()) throw std::invalid_argument("germ: incompatible (dim, n1)");
}
}  // namespace detail

// (g1 g2)_{n~} = sum_{j+k=n} C(n~, j~) g1_{j~} (x) g2_{k~}; truncated at the
// smaller of the two caps.
template <Scalar S>
Germ<S> germ_product(const Germ<S>& g1, const Germ<S>& g2) {
  detail::check_compatible(g1, g2);
  const int n1 = g1.n1();
  const int cap = std::min(g1.max_block(), g2.max_block());
  std::vector<SymTensor<S>> out;
  for (int n = 0; n <= cap; ++n) {
    SymTensor<S> acc(g1.dim(), n * n1);
    for (int j = 0; j <= n; ++j)
      acc += binomial<S>(n * n1, j * n1) * sym_product(g1.kernel(j), g2.kernel(n - j));
    out.push_back(std::move(acc));
  }
  return Germ<S>(g1.dim(), n1, std::move(out));
}

// Kernels of g1 / g2, solved degree by degree from (g1/g2) * g2 = g1.
template <Scalar S>
Germ<S> germ_quotient(const Germ<S>& g1, const Germ<S>& g2) {
  detail::check_compatible(g1, g2);
  if (is_zero(g2.constant())) throw std::domain_error("germ_quotient: divisor has zero constant term");
  const int n1 = g1.n1();
  const int cap = std::min(g1.max_block(), g2.max_block());
  const S inv0 = from_int<S>(1) / g2.constant();
  std::vector<SymTensor<S>> q;
  for (int n = 0; n <= cap; ++n) {
    SymTensor<S> acc = g1.kernel(n);
    for (int j = 1; j <= n; ++j) acc -= binomial<S>(n * n1, j * n1) * sym_product(g2.kernel(j), q[n - j]);
    q.push_back(acc * inv0);
  }
  return Germ<S>(g1.dim(), n1, std::move(q));
}

template <Scalar S>
Germ<S> germ_reciprocal(const Germ<S>& g) {
  return germ_quotient(Germ<S>::unit(g.dim(), g.n1(), g.max_block()), g);
}

// Truncated sum_n evaluate(gamma_{n~}, theta) / n~!.
template <Scalar S>
S germ_evaluate(const Germ<S>& g, const Point<S>& theta) {
  S sum = from_int<S>(0);
  for (int n = 0; n <= g.max_block(); ++n) sum += evaluate(g.kernel(n), theta) / factorial<S>(n * g.n1());
  return sum;
}

template <Scalar To, Scalar From>
ChiFunction<To> chi_cast(const ChiFunction<From>& chi) {
  std::vector<To> c;
  for (const auto& x : chi.coeffs()) c.push_back(scalar_cast<To>(x));
  return ChiFunction<To>(chi.n1(), std::move(c));
}

template <Scalar To, Scalar From>
Germ<To> germ_cast(const Germ<From>& g) {
  std::vector<SymTensor<To>> k;
  for (const auto& t : g.kernels()) k.push_back(tensor_cast<To>(t));
  return Germ<To>(g.dim(), g.n1(), std::move(k));
}

}  // namespace dual_appell
