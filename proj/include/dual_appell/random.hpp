#pragma once

// Seeded generators: uniform points on spheres, and random rational/float
// algebraic data (tensors, germs, chi sequences) for property checks.

#include <cmath>
#include <random>
#include <vector>

#include "series.hpp"

namespace dual_appell {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream): deterministic, insensitive to how
// many draws other streams make.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

// Uniform point on the radius-r sphere in R^d: normalized standard normals.
inline std::vector<double> sample_sphere(Rng& rng, int d, double r) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : x) {
      v = normal(rng);
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double scale = r / std::sqrt(norm2);
  for (auto& v : x) v *= scale;
  return x;
}

// Small rationals p/q with |p| <= range, 1 <= q <= range; floats uniform in
// [-1, 1].
template <Scalar S>
S random_scalar(Rng& rng, int range = 4) {
  if constexpr (is_exact_v<S>) {
    std::uniform_int_distribution<int> num(-range, range), den(1, range);
    const int p = num(rng);
    return from_ratio<S>(p, den(rng));
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return S(u(rng));
  }
}

// Floats are kept in 1/2 <= |v| <= 1 so that divisions stay well conditioned.
template <Scalar S>
S random_nonzero_scalar(Rng& rng, int range = 4) {
  if constexpr (!is_exact_v<S>) {
    const S v = random_scalar<S>(rng, range);
    return std::real(v) < 0 ? S(-0.5) + S(0.5) * v : S(0.5) + S(0.5) * v;
  }
  for (;;) {
    S v = random_scalar<S>(rng, range);
    if (!is_zero(v)) return v;
  }
}

template <Scalar S>
Point<S> random_point(Rng& rng, int d, int range = 3) {
  Point<S> z;
  for (int i = 0; i < d; ++i) z.push_back(random_scalar<S>(rng, range));
  return z;
}

template <Scalar S>
SymTensor<S> random_tensor(Rng& rng, int d, int rank, int range = 4) {
  SymTensor<S> t(d, rank);
  for (auto& c : t.coeffs()) c = random_scalar<S>(rng, range);
  return t;
}

template <Scalar S>
Germ<S> random_germ(Rng& rng, int d, int n1, int max_block, int range = 3) {
  std::vector<SymTensor<S>> k;
  k.push_back(SymTensor<S>::scalar(d, random_nonzero_scalar<S>(rng, range)));
  for (int n = 1; n <= max_block; ++n) k.push_back(random_tensor<S>(rng, d, n * n1, range));
  return Germ<S>(d, n1, std::move(k));
}

template <Scalar S>
ChiFunction<S> random_chi(Rng& rng, int n1, int max_block, int range = 4) {
  std::vector<S> c;
  for (int n = 0; n <= max_block; ++n) c.push_back(random_nonzero_scalar<S>(rng, range));
  return ChiFunction<S>(n1, std::move(c));
}

}  // namespace dual_appell
