#pragma once

#include <gtest/gtest.h>

#include "dual_appell/dual_appell.hpp"

namespace test_util {

using namespace dual_appell;
using Q = Rational;

inline Q q(long n, long d = 1) { return Q(n) / Q(d); }

inline std::vector<Q> qs(std::initializer_list<long> v) {
  std::vector<Q> out;
  for (long x : v) out.push_back(Q(x));
  return out;
}

// Hermite setup: d = 1, n1 = 1, chi = exp, gamma = exp(-theta^2 / 2).
inline AppellSystem<Q> hermite(int max_block = 6) {
  std::vector<SymTensor<Q>> k;
  for (int n = 0; n <= max_block; ++n) {
    SymTensor<Q> t(1, n);
    if (n % 2 == 0) {
      // (2j)! (-1/2)^j / j! = (-1)^j (2j-1)!!
      Q v(1);
      for (int i = 1; i < n; i += 2) v *= i;
      t.coeffs()[0] = (n / 2) % 2 ? -v : v;
    }
    k.push_back(t);
  }
  return AppellSystem<Q>(chi_exp<Q>(max_block), Germ<Q>(1, 1, k), max_block);
}

inline SymTensor<Q> tensor(int d, int rank, std::initializer_list<std::pair<MultiIndex, Q>> entries) {
  SymTensor<Q> t(d, rank);
  for (const auto& [a, v] : entries) t.at(a) = v;
  return t;
}

}  // namespace test_util
