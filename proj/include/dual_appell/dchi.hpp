#pragma once

// The pseudodifferential operator <Phi^{(n~)}, D_chi^{n~}> on P_{n1}. On
// monomials it lowers degree m~ to (m-n)~:
//
//   <x^{m~}, f> |-> 1{m>=n} (m~! chi_{(m-n)~}) / ((m-n)~! chi_{m~}) <x^{(m-n)~} (x) Phi, f>.
//
// Operators act blockwise through contract(); they are never assembled as
// matrices.

#include <stdexcept>
#include <string>

#include "appell.hpp"

namespace dual_appell {

template <Scalar S>
class DOperator {
 public:
  DOperator(SymTensor<S> symbol, ChiFunction<S> chi) : symbol_(std::move(symbol)), chi_(std::move(chi)) {
    if (symbol_.rank() % chi_.n1() != 0)
      throw std::invalid_argument("D_chi symbol rank " + std::to_string(symbol_.rank()) +
                                  " is not divisible by n1 = " + std::to_string(chi_.n1()));
    order_ = symbol_.rank() / chi_.n1();
    chi_.coeff(order_);  // every block it can act on needs chi up to its own order
  }

  int order() const { return order_; }
  const SymTensor<S>& symbol() const { return symbol_; }
  const ChiFunction<S>& chi() const { return chi_; }

  // Coefficient ratio m~! chi_{(m-n)~} / ((m-n)~! chi_{m~}) applied to block m.
  S monomial_factor(int m) const {
    const int n1 = chi_.n1();
    return factorial<S>(m * n1) * chi_.coeff(m - order_) / (factorial<S>((m - order_) * n1) * chi_.coeff(m));
  }

 private:
  SymTensor<S> symbol_;
  ChiFunction<S> chi_;
  int order_ = 0;
};

namespace detail {
template <Scalar S>
void check_operator(const DOperator<S>& op, int dim, int n1, int top_block) {
  if (op.symbol().dim() != dim) throw std::invalid_argument("D_chi: symbol dimension mismatch");
  if (op.chi().n1() != n1) throw std::invalid_argument("D_chi: n1 mismatch");
  if (op.chi().max_block() < top_block)
    throw std::out_of_range("D_chi: chi coefficients needed up to degree " + std::to_string(top_block * n1));
}
}  // namespace detail

template <Scalar S>
PolyElement<S> apply_monomial(const DOperator<S>& op, const PolyElement<S>& e) {
  if (e.basis() != Basis::monomial) throw std::invalid_argument("apply_monomial: expects monomial coordinates");
  detail::check_operator(op, e.dim(), e.n1(), e.max_block());
  auto out = PolyElement<S>::zero(e.dim(), e.n1(), e.max_block(), Basis::monomial);
  for (int m = op.order(); m <= e.max_block(); ++m) {
    if (e.block(m).is_zero()) continue;
    out.block(m - op.order()) = op.monomial_factor(m) * contract(e.block(m), op.symbol());
  }
  return out;
}

// Generalized-power action on Appell coordinates:
//   <P_{m~}, phi> |-> 1{m>=n} m~!/(m-n)~! <P_{(m-n)~} (x) Phi, phi>.
template <Scalar S>
PolyElement<S> apply_appell(const DOperator<S>& op, const AppellSystem<S>& sys, const PolyElement<S>& e) {
  detail::check_tag(sys, e, Basis::appell);
  if (!(op.chi() == sys.chi())) {
    // Operators built with a longer chi are fine as long as the shared range agrees.
    for (int m = 0; m <= std::min(op.chi().max_block(), sys.chi().max_block()); ++m)
      if (op.chi().coeff(m) != sys.chi().coeff(m)) throw std::invalid_argument("apply_appell: operator chi differs from system chi");
  }
  detail::check_operator(op, e.dim(), e.n1(), e.max_block());
  const int n1 = sys.n1();
  auto out = PolyElement<S>::zero(e.dim(), n1, e.max_block(), Basis::appell, sys.id());
  for (int m = op.order(); m <= e.max_block(); ++m) {
    if (e.block(m).is_zero()) continue;
    const S factor = factorial<S>(m * n1) / factorial<S>((m - op.order()) * n1);
    out.block(m - op.order()) = factor * contract(e.block(m), op.symbol());
  }
  return out;
}

}  // namespace dual_appell
