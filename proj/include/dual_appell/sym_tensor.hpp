#pragma once

// Symmetric tensors over a d-dimensional coordinate space, stored as the
// coefficients of the homogeneous polynomial they represent:
//
//   p_T(theta) = <T, theta^{(x) n}> = sum_{|alpha| = n} t_alpha theta^alpha.
//
// All combinatorial weights (alpha!/n!, n!/alpha!) live in pure_power,
// pairing, contract and scaled_norm. Nothing else touches them.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "multi_index.hpp"
#include "scalar.hpp"

namespace dual_appell {

template <Scalar S>
using Point = std::vector<S>;

// Diagonal weights a_i >= 1 defining |x|_p := |diag(a^p) x|.
struct ScaleVector {
  std::vector<double> a;

  static ScaleVector standard(int dim) {
    ScaleVector s;
    for (int i = 0; i < dim; ++i) s.a.push_back(i + 1.0);
    return s;
  }

  void validate(int dim) const {
    if (static_cast<int>(a.size()) != dim) throw std::invalid_argument("scale vector has wrong dimension");
    for (double v : a)
      if (!(v >= 1.0) || !std::isfinite(v)) throw std::invalid_argument("scale vector entries must be >= 1");
  }
};

template <Scalar S>
class SymTensor {
 public:
  SymTensor() = default;

  // Zero tensor of the given dimension and rank.
  SymTensor(int dim, int rank) : dim_(dim), rank_(rank) {
    if (dim < 1 || rank < 0) throw std::invalid_argument("SymTensor needs dim >= 1, rank >= 0");
    coeffs_.assign(count_multi_indices(dim, rank), from_int<S>(0));
  }

  static SymTensor scalar(int dim, const S& value) {
    SymTensor t(dim, 0);
    t.coeffs_[0] = value;
    return t;
  }

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return coeffs_.size(); }

  std::vector<MultiIndex> indices() const { return multi_indices(dim_, rank_); }

  const S& at(const MultiIndex& alpha) const { return coeffs_[checked_rank(alpha)]; }
  S& at(const MultiIndex& alpha) { return coeffs_[checked_rank(alpha)]; }

  // Coefficients in graded-lex order of indices().
  const std::vector<S>& coeffs() const { return coeffs_; }
  std::vector<S>& coeffs() { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!dual_appell::is_zero(c)) return false;
    return true;
  }

  SymTensor& operator+=(const SymTensor& other) {
    check_shape(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  SymTensor& operator-=(const SymTensor& other) {
    check_shape(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }
  SymTensor& operator*=(const S& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(SymTensor a, const S& c) { return a *= c; }
  friend SymTensor operator*(const S& c, SymTensor a) { return a *= c; }
  SymTensor operator-() const { return *this * from_int<S>(-1); }

  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.dim_ == b.dim_ && a.rank_ == b.rank_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::size_t checked_rank(const MultiIndex& alpha) const {
    if (alpha.dim() != dim_ || alpha.degree() != rank_)
      throw std::invalid_argument("multi-index " + alpha.str() + " does not fit tensor of rank " +
                                  std::to_string(rank_));
    return multi_index_rank(alpha);
  }
  void check_shape(const SymTensor& other) const {
    if (other.dim_ != dim_ || other.rank_ != rank_) throw std::invalid_argument("tensor shape mismatch");
  }

  int dim_ = 1;
  int rank_ = 0;
  std::vector<S> coeffs_{from_int<S>(0)};
};

// z^{(x) n}: coefficients (n!/alpha!) z^alpha, so that p(theta) = <z, theta>^n.
template <Scalar S>
SymTensor<S> pure_power(const Point<S>& z, int n) {
  if (z.empty()) throw std::invalid_argument("pure_power needs a point of dimension >= 1");
  const int d = static_cast<int>(z.size());
  SymTensor<S> t(d, n);
  const auto idx = t.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) t.coeffs()[i] = idx[i].template multinomial<S>() * idx[i].template monomial<S>(z);
  return t;
}

// Symmetric tensor product: p_{A (x) B} = p_A * p_B.
template <Scalar S>
SymTensor<S> sym_product(const SymTensor<S>& a, const SymTensor<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sym_product: dimension mismatch");
  SymTensor<S> out(a.dim(), a.rank() + b.rank());
  const auto ia = a.indices();
  const auto ib = b.indices();
  for (std::size_t i = 0; i < ia.size(); ++i) {
    if (is_zero(a.coeffs()[i])) continue;
    for (std::size_t j = 0; j < ib.size(); ++j) {
      if (is_zero(b.coeffs()[j])) continue;
      out.coeffs()[multi_index_rank(ia[i] + ib[j])] += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  return out;
}

// Full pairing sum_alpha (alpha!/n!) a_alpha b_alpha; <z^n, w^n> = <z, w>^n.
template <Scalar S>
S pairing(const SymTensor<S>& a, const SymTensor<S>& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) throw std::invalid_argument("pairing: rank or dimension mismatch");
  const auto idx = a.indices();
  S sum = from_int<S>(0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (is_zero(a.coeffs()[i]) || is_zero(b.coeffs()[i])) continue;
    sum += a.coeffs()[i] * b.coeffs()[i] / idx[i].template multinomial<S>();
  }
  return sum;
}

// Partial contraction of phi (rank M) against g (rank k <= M): the rank M-k
// tensor C with <x^{M-k}, C> = <x^{M-k} (x) g, phi> for every x.
//   c_delta = ((M-k)!/delta!) sum_{|eps|=k} ((delta+eps)!/M!) g_eps phi_{delta+eps}
template <Scalar S>
SymTensor<S> contract(const SymTensor<S>& phi, const SymTensor<S>& g) {
  if (phi.dim() != g.dim()) throw std::invalid_argument("contract: dimension mismatch");
  const int big = phi.rank(), k = g.rank();
  if (k > big) throw std::invalid_argument("contract: contracting rank exceeds tensor rank");
  SymTensor<S> out(phi.dim(), big - k);
  const auto idelta = out.indices();
  const auto ieps = g.indices();
  const S big_fact = factorial<S>(big);
  const S small_fact = factorial<S>(big - k);
  for (std::size_t i = 0; i < idelta.size(); ++i) {
    S acc = from_int<S>(0);
    for (std::size_t j = 0; j < ieps.size(); ++j) {
      if (is_zero(g.coeffs()[j])) continue;
      const MultiIndex sum = idelta[i] + ieps[j];
      const S& ph = phi.coeffs()[multi_index_rank(sum)];
      if (is_zero(ph)) continue;
      acc += sum.template factorial<S>() * g.coeffs()[j] * ph;
    }
    if (!is_zero(acc)) out.coeffs()[i] = acc * small_fact / (big_fact * idelta[i].template factorial<S>());
  }
  return out;
}

// p_T(theta) = sum t_alpha theta^alpha.
template <Scalar S>
S evaluate(const SymTensor<S>& t, const Point<S>& theta) {
  if (static_cast<int>(theta.size()) != t.dim()) throw std::invalid_argument("evaluate: point has wrong dimension");
  const auto idx = t.indices();
  S sum = from_int<S>(0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (is_zero(t.coeffs()[i])) continue;
    sum += t.coeffs()[i] * idx[i].template monomial<S>(theta);
  }
  return sum;
}

// |T|_p = sqrt( sum (alpha!/n!) (a^{p alpha} t_alpha)^2 ); negative p for
// distribution-side tensors.
template <Scalar S>
double scaled_norm(const SymTensor<S>& t, const ScaleVector& a, int p) {
  a.validate(t.dim());
  const auto idx = t.indices();
  double sum = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    double w = 1.0;
    for (int j = 0; j < t.dim(); ++j) w *= std::pow(a.a[j], p * idx[i][j]);
    sum += abs2(t.coeffs()[i]) * w * w / idx[i].template multinomial<double>();
  }
  return std::sqrt(sum);
}

// Convert scalar kind, coefficientwise.
template <Scalar To, Scalar From>
SymTensor<To> tensor_cast(const SymTensor<From>& t) {
  SymTensor<To> out(t.dim(), t.rank());
  for (std::size_t i = 0; i < t.size(); ++i) out.coeffs()[i] = scalar_cast<To>(t.coeffs()[i]);
  return out;
}

}  // namespace dual_appell
