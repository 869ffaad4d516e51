#pragma once

// Generating-function oracle. Everything is expanded as explicit
// multivariate polynomials (exponent vector -> coefficient) and truncated by
// degree; no tensor formulas from the library are used.
//
// Variables: theta_1..theta_d, optionally followed by x_1..x_d. Truncation
// always counts the theta degree only.

#include <map>
#include <vector>

#include "dense_tensor.hpp"

namespace oracle {

using Exps = std::vector<int>;
using Poly = std::map<Exps, Rational>;

struct Ring {
  int d;          // theta variables
  int nvars;      // d or 2d
  int max_theta;  // drop terms of theta degree above this

  int theta_degree(const Exps& e) const {
    int s = 0;
    for (int i = 0; i < d; ++i) s += e[i];
    return s;
  }

  Poly constant(const Rational& c) const { return Poly{{Exps(nvars, 0), c}}; }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly out;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        Exps e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = ea[i] + eb[i];
        if (theta_degree(e) > max_theta) continue;
        out[e] += ca * cb;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  Poly add(Poly a, const Poly& b) const {
    for (const auto& [e, c] : b) a[e] += c;
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    return a;
  }

  Poly scale(Poly a, const Rational& c) const {
    for (auto& kv : a) kv.second *= c;
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    return a;
  }

  Poly power(const Poly& a, int k) const {
    Poly r = constant(1);
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  // 1/a = (1/a0) sum_j (1 - a/a0)^j, exact up to the truncation degree.
  Poly inverse(const Poly& a) const {
    const Rational a0 = a.at(Exps(nvars, 0));
    const Poly u = add(constant(1), scale(a, Rational(-1) / a0));
    Poly acc = constant(0), term = constant(1);
    for (int j = 0; j <= max_theta; ++j) {
      acc = add(acc, term);
      term = mul(term, u);
    }
    return scale(acc, Rational(1) / a0);
  }

  // Homogeneous theta-part of degree k, as a polynomial in the remaining variables.
  Poly theta_part(const Poly& a, const Exps& theta_exps) const {
    Poly out;
    for (const auto& [e, c] : a) {
      bool match = true;
      for (int i = 0; i < d; ++i) match = match && e[i] == theta_exps[i];
      if (match) {
        Exps rest(nvars, 0);
        for (int i = d; i < nvars; ++i) rest[i] = e[i];
        out[rest] += c;
      }
    }
    return out;
  }
};

// gamma(theta) = sum_n p_{gamma_n}(theta) / (n n1)!.
inline Poly germ_poly(const Ring& r, const std::vector<SymTensor<Rational>>& kernels) {
  Poly g;
  for (const auto& k : kernels) {
    const auto idx = k.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (k.coeffs()[i] == 0 || k.rank() > r.max_theta) continue;
      Exps e(r.nvars, 0);
      for (int j = 0; j < r.d; ++j) e[j] = idx[i][j];
      g[e] += k.coeffs()[i] / fact(k.rank());
    }
  }
  return g;
}

// chi(<z, theta>) = sum_m chi_m <z, theta>^{m n1} / (m n1)!, with z numeric
// (ring without x variables) or z = x symbolic (ring with x variables).
inline Poly chi_poly(const Ring& r, const std::vector<Rational>& chi, int n1, const std::vector<Rational>* z) {
  Poly lin;
  for (int i = 0; i < r.d; ++i) {
    Exps e(r.nvars, 0);
    e[i] = 1;
    if (z) {
      lin[e] += (*z)[i];
    } else {
      e[r.d + i] = 1;
      lin[e] += 1;
    }
  }
  std::erase_if(lin, [](const auto& kv) { return kv.second == 0; });
  Poly out;
  for (std::size_t m = 0; m < chi.size() && static_cast<int>(m) * n1 <= r.max_theta; ++m)
    out = r.add(out, r.scale(r.power(lin, static_cast<int>(m) * n1), chi[m] / fact(static_cast<int>(m) * n1)));
  return out;
}

// Storage coefficients of P_{n~}(z): t_alpha = n~! [theta^alpha] gamma(theta) chi(<z, theta>).
inline SymTensor<Rational> p_kernel(const std::vector<Rational>& chi, const std::vector<SymTensor<Rational>>& gamma,
                                    int n1, const std::vector<Rational>& z, int n) {
  const int d = static_cast<int>(z.size());
  const Ring r{d, d, n * n1};
  const Poly gen = r.mul(germ_poly(r, gamma), chi_poly(r, chi, n1, &z));
  SymTensor<Rational> t(d, n * n1);
  const auto idx = t.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto it = gen.find(idx[i].entries());
    if (it != gen.end()) t.coeffs()[i] = it->second * fact(n * n1);
  }
  return t;
}

// Same, with z = x symbolic: entry alpha is a polynomial in x (exponents
// stored in the last d slots).
inline std::vector<Poly> p_kernel_symbolic(const std::vector<Rational>& chi, const std::vector<SymTensor<Rational>>& gamma,
                                           int n1, int d, int n) {
  const Ring r{d, 2 * d, n * n1};
  const Poly gen = r.mul(germ_poly(r, gamma), chi_poly(r, chi, n1, nullptr));
  std::vector<Poly> out;
  for (const auto& a : dual_appell::multi_indices(d, n * n1)) {
    Exps te(2 * d, 0);
    for (int i = 0; i < d; ++i) te[i] = a[i];
    out.push_back(r.scale(r.theta_part(gen, te), fact(n * n1)));
  }
  return out;
}

// Kernels of 1/gamma: gt_k storage = (k n1)! [theta^beta] (1/gamma).
inline std::vector<SymTensor<Rational>> reciprocal_kernels(const std::vector<SymTensor<Rational>>& gamma, int n1, int d,
                                                           int max_block) {
  const Ring r{d, d, max_block * n1};
  const Poly inv = r.inverse(germ_poly(r, gamma));
  std::vector<SymTensor<Rational>> out;
  for (int k = 0; k <= max_block; ++k) {
    SymTensor<Rational> t(d, k * n1);
    const auto idx = t.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto it = inv.find(idx[i].entries());
      if (it != inv.end()) t.coeffs()[i] = it->second * fact(k * n1);
    }
    out.push_back(t);
  }
  return out;
}

// Monomial kernels of the polynomial f(x) = <P_{n~}(x), phi> from the symbolic
// P-kernel: block j holds the coefficients of x^beta, |beta| = j n1.
inline std::vector<SymTensor<Rational>> p_element_monomials(const std::vector<Poly>& p_sym, const SymTensor<Rational>& phi,
                                                            int n1, int d, int max_block) {
  std::vector<SymTensor<Rational>> blocks;
  for (int j = 0; j <= max_block; ++j) blocks.emplace_back(d, j * n1);
  const auto alphas = phi.indices();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const Rational w = multi_fact(alphas[i]) / fact(phi.rank()) * phi.coeffs()[i];
    if (w == 0) continue;
    for (const auto& [e, c] : p_sym[i]) {
      std::vector<int> beta(e.begin() + d, e.end());
      int deg = 0;
      for (int v : beta) deg += v;
      if (deg % n1 != 0 || deg / n1 > max_block) throw std::logic_error("degree outside P_{n1} truncation");
      blocks[deg / n1].at(MultiIndex(beta)) += w * c;
    }
  }
  return blocks;
}

// Action of Q_m(Phi) = sum_k (1/k~!) (D_{Phi (x) gt_k})^* delta_0 on a polynomial
// with monomial kernels f: delta_0(D_Psi f) = (j~! chi_0 / chi_{j~}) <Psi, f_j>,
// Psi of order j.
inline Rational q_action(const std::vector<Rational>& chi, const std::vector<SymTensor<Rational>>& gamma_tilde,
                         int m, const SymTensor<Rational>& phi, const std::vector<SymTensor<Rational>>& f, int n1) {
  Rational total(0);
  for (int k = 0; m + k < static_cast<int>(f.size()); ++k) {
    const int j = m + k;
    const Dense psi = sym_product(from_sym(phi), from_sym(gamma_tilde[k]));
    const Rational factor = fact(j * n1) * chi[0] / chi[j] / fact(k * n1);
    total += factor * full_contract(psi, from_sym(f[j]));
  }
  return total;
}

}  // namespace oracle
