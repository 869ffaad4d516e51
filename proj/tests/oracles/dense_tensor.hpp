#pragma once

// Brute-force dense tensors: all d^n entries stored, no symmetry assumed.
// A symmetric tensor with polynomial coefficients t_alpha has dense entries
// T[i_1..i_n] = t_alpha * alpha! / n!, alpha the occupation counts of i.

#include <stdexcept>
#include <vector>

#include "dual_appell/sym_tensor.hpp"

namespace oracle {

using dual_appell::MultiIndex;
using dual_appell::Rational;
using dual_appell::SymTensor;

struct Dense {
  int d = 1;
  int n = 0;
  std::vector<Rational> data;

  Dense(int d_, int n_) : d(d_), n(n_), data(ipow(d_, n_), Rational(0)) {}

  static std::size_t ipow(int b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
    return r;
  }

  std::vector<int> digits(std::size_t flat) const {
    std::vector<int> idx(n);
    for (int k = 0; k < n; ++k) {
      idx[k] = static_cast<int>(flat % d);
      flat /= d;
    }
    return idx;
  }

  std::size_t flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int k = n - 1; k >= 0; --k) f = f * d + idx[k];
    return f;
  }

  MultiIndex counts(std::size_t f) const {
    std::vector<int> c(d, 0);
    for (int i : digits(f)) ++c[i];
    return MultiIndex(c);
  }
};

inline Rational fact(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

inline Rational multi_fact(const MultiIndex& a) {
  Rational r(1);
  for (int v : a.entries()) r *= fact(v);
  return r;
}

inline Dense from_sym(const SymTensor<Rational>& t) {
  Dense out(t.dim(), t.rank());
  for (std::size_t f = 0; f < out.data.size(); ++f) {
    const auto a = out.counts(f);
    out.data[f] = t.at(a) * multi_fact(a) / fact(t.rank());
  }
  return out;
}

// Throws if the dense tensor is not symmetric.
inline SymTensor<Rational> to_sym(const Dense& x) {
  SymTensor<Rational> t(x.d, x.n);
  std::vector<bool> seen(t.size(), false);
  for (std::size_t f = 0; f < x.data.size(); ++f) {
    const auto a = x.counts(f);
    const Rational v = x.data[f] * fact(x.n) / multi_fact(a);
    const auto r = dual_appell::multi_index_rank(a);
    if (seen[r] && t.coeffs()[r] != v) throw std::logic_error("dense tensor is not symmetric");
    t.coeffs()[r] = v;
    seen[r] = true;
  }
  return t;
}

// Sym(A (x) B): average of A[i_S] B[i_rest] over all n-subsets S of the
// n+m slots. For symmetric A, B this equals the full permutation average.
inline Dense sym_product(const Dense& a, const Dense& b) {
  const int total = a.n + b.n;
  Dense out(a.d, total);
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 0; mask < (1u << total); ++mask)
    if (__builtin_popcount(mask) == a.n) {
      std::vector<int> s;
      for (int k = 0; k < total; ++k)
        if (mask & (1u << k)) s.push_back(k);
      subsets.push_back(s);
    }
  const Rational weight = Rational(1) / Rational(static_cast<long>(subsets.size()));
  for (std::size_t f = 0; f < out.data.size(); ++f) {
    const auto idx = out.digits(f);
    Rational acc(0);
    for (const auto& s : subsets) {
      std::vector<int> ia, ib;
      std::size_t p = 0;
      for (int k = 0; k < total; ++k) {
        if (p < s.size() && s[p] == k) {
          ia.push_back(idx[k]);
          ++p;
        } else {
          ib.push_back(idx[k]);
        }
      }
      acc += a.data[a.flat(ia)] * b.data[b.flat(ib)];
    }
    out.data[f] = acc * weight;
  }
  return out;
}

inline Rational full_contract(const Dense& a, const Dense& b) {
  if (a.d != b.d || a.n != b.n) throw std::invalid_argument("shape mismatch");
  Rational s(0);
  for (std::size_t f = 0; f < a.data.size(); ++f) s += a.data[f] * b.data[f];
  return s;
}

// C[j] = sum_i G[i] Phi[i, j]: contract the first rank(G) slots of Phi.
inline Dense partial_contract(const Dense& phi, const Dense& g) {
  if (g.n > phi.n) throw std::invalid_argument("rank mismatch");
  Dense out(phi.d, phi.n - g.n);
  for (std::size_t fj = 0; fj < out.data.size(); ++fj) {
    const auto j = out.digits(fj);
    Rational acc(0);
    for (std::size_t fi = 0; fi < g.data.size(); ++fi) {
      auto full = g.digits(fi);
      full.insert(full.end(), j.begin(), j.end());
      acc += g.data[fi] * phi.data[phi.flat(full)];
    }
    out.data[fj] = acc;
  }
  return out;
}

inline Dense outer_power(const std::vector<Rational>& z, int n) {
  Dense out(static_cast<int>(z.size()), n);
  for (std::size_t f = 0; f < out.data.size(); ++f) {
    Rational v(1);
    for (int i : out.digits(f)) v *= z[i];
    out.data[f] = v;
  }
  return out;
}

inline Rational evaluate(const Dense& t, const std::vector<Rational>& z) { return full_contract(t, outer_power(z, t.n)); }

}  // namespace oracle
