#pragma once

// Kingman's Lambda_s(u) = sum_m (-1/4)^m Gamma(s+1) / (m! Gamma(s+m+1)) u^{2m},
// the characteristic function of a uniform step on the unit sphere in
// dimension d = 2s + 2 (evaluated at |theta|), and the chi with n1 = 2 it
// induces.

#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <vector>

#include "random.hpp"
#include "series.hpp"

namespace dual_appell {

template <Scalar S>
class LambdaFunction {
 public:
  // Coefficients lambda_{2m} for m = 0..max_term.
  LambdaFunction(const S& s, int max_term) : s_(s) {
    if (s < from_ratio<S>(-1, 2)) throw std::invalid_argument("Lambda_s requires s >= -1/2");
    if (max_term < 1) throw std::invalid_argument("Lambda_s needs at least two terms");
    S c = from_int<S>(1);
    coeffs_.push_back(c);
    for (int m = 1; m <= max_term; ++m) {
      c *= from_ratio<S>(-1, 4) / (from_int<S>(m) * (s + from_int<S>(m)));
      coeffs_.push_back(c);
    }
  }

  const S& s() const { return s_; }
  int max_term() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<S>& coeffs() const { return coeffs_; }

 private:
  S s_;
  std::vector<S> coeffs_;
};

struct LambdaValue {
  Complex value;
  double tail_bound;  // bound on |sum_{m > max_term} lambda_{2m} u^{2m}|
};

// Alternating-tail bound for the terms beyond max_term. The term ratio
// |u|^2 / (4 (m+1)(s+m+1)) decreases in m, so once it drops below 1 the
// tail is dominated by a geometric series. Infinite if it has not.
template <Scalar S>
double lambda_tail_bound(const LambdaFunction<S>& l, double abs_u) {
  const double s = scalar_traits<S>::to_double(l.s());
  const int big_m = l.max_term();
  const double u2 = abs_u * abs_u;
  const double ratio = u2 / (4.0 * (big_m + 1) * (s + big_m + 1));
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  // |lambda_{2(M+1)}| |u|^{2(M+1)} computed in logs to stay finite.
  const double last = std::abs(scalar_traits<S>::to_double(l.coeffs().back()));
  if (last == 0.0 || abs_u == 0.0) return 0.0;
  const double log_next = std::log(last) + (big_m + 1) * std::log(u2) - std::log(4.0 * (big_m + 1) * (s + big_m + 1));
  return std::exp(log_next) / (1.0 - ratio);
}

// Largest |u| whose tail bound stays <= tol.
template <Scalar S>
double lambda_accuracy_radius(const LambdaFunction<S>& l, double tol) {
  double lo = 0.0, hi = 1.0;
  while (lambda_tail_bound(l, hi) <= tol && hi < 1e6) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lambda_tail_bound(l, mid) <= tol ? lo : hi) = mid;
  }
  return lo;
}

// Horner in u^2. Throws std::domain_error outside the accuracy envelope.
template <Scalar S>
LambdaValue lambda_eval(const LambdaFunction<S>& l, Complex u, double tol = 1e-13) {
  const double tail = lambda_tail_bound(l, std::abs(u));
  if (!(tail <= tol))
    throw std::domain_error("Lambda_s: |u| = " + std::to_string(std::abs(u)) + " outside the accuracy envelope (radius " +
                            std::to_string(lambda_accuracy_radius(l, tol)) + ")");
  const Complex u2 = u * u;
  Complex acc{0.0, 0.0};
  for (int m = l.max_term(); m >= 0; --m) acc = acc * u2 + scalar_traits<S>::to_double(l.coeffs()[m]);
  return {acc, tail};
}

// chi_{2m} = (2m)! lambda_{2m}, n1 = 2.
template <Scalar S>
ChiFunction<S> lambda_chi(const LambdaFunction<S>& l) {
  std::vector<S> c;
  for (int m = 0; m <= l.max_term(); ++m) c.push_back(factorial<S>(2 * m) * l.coeffs()[m]);
  return ChiFunction<S>(2, std::move(c));
}

struct BoundReport {
  double max_ratio = 0.0;  // max |Lambda_s(z)| / e^{|z|} over the complex grid
  Complex argmax{};
  double max_real_abs = 0.0;  // max |Lambda_s(u)| over the real grid
  bool ratio_ok = false;
  bool real_ok = false;
  bool ok() const { return ratio_ok && real_ok; }
};

template <Scalar S>
BoundReport bound_check(const LambdaFunction<S>& l, const std::vector<Complex>& grid, const std::vector<double>& real_grid,
                        double slack = 1e-12) {
  BoundReport rep;
  for (const auto& z : grid) {
    const double ratio = std::abs(lambda_eval(l, z).value) / std::exp(std::abs(z));
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax = z;
    }
  }
  for (double u : real_grid) rep.max_real_abs = std::max(rep.max_real_abs, std::abs(lambda_eval(l, Complex{u, 0}).value));
  rep.ratio_ok = rep.max_ratio <= 1.0 + slack;
  rep.real_ok = rep.max_real_abs <= 1.0 + slack;
  return rep;
}

// Polar grid: radii k * radius / (nr - 1), angles 2 pi j / na.
inline std::vector<Complex> polar_grid(double radius, int nr, int na) {
  std::vector<Complex> g;
  for (int k = 0; k < nr; ++k)
    for (int j = 0; j < na; ++j) g.push_back(std::polar(radius * k / (nr - 1), 2.0 * M_PI * j / na));
  return g;
}

inline std::vector<double> real_grid(double radius, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(-radius + 2.0 * radius * k / (n - 1));
  return g;
}

struct CfPoint {
  double theta_norm;
  double empirical;
  double target;
  double stderr_;
  bool ok;
};

struct CfReport {
  int dim;
  double radius;
  long samples;
  std::uint64_t seed;
  int chunks;
  std::vector<CfPoint> points;
  bool ok() const {
    for (const auto& p : points)
      if (!p.ok) return false;
    return true;
  }
};

// Empirical E[cos <theta, X>] for X uniform on the radius-r sphere in R^d
// against Lambda_{(d-2)/2}(r |theta|); agreement within 4 standard errors.
// theta points along (1, ..., 1). Chunk c draws from make_rng(seed, c), so the
// result is a function of (seed, samples, chunks) only.
inline CfReport sphere_cf_check(int d, double r, const std::vector<double>& theta_norms, long samples,
                                std::uint64_t seed, int chunks = 8) {
  if (d < 2) throw std::invalid_argument("sphere_cf_check: d must be >= 2");
  if (samples < 10000) throw std::invalid_argument("sphere_cf_check: need at least 1e4 samples");
  if (chunks < 1 || chunks > samples) throw std::invalid_argument("sphere_cf_check: bad chunk count");
  const std::size_t k = theta_norms.size();
  struct Partial {
    std::vector<double> sum, sum2;
  };
  auto run_chunk = [&](int c) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(c));
    const long begin = samples * c / chunks, end = samples * (c + 1) / chunks;
    Partial p{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
    const double unit = 1.0 / std::sqrt(static_cast<double>(d));
    for (long i = begin; i < end; ++i) {
      const auto x = sample_sphere(rng, d, r);
      double proj = 0.0;
      for (double v : x) proj += v * unit;
      for (std::size_t t = 0; t < k; ++t) {
        const double cv = std::cos(theta_norms[t] * proj);
        p.sum[t] += cv;
        p.sum2[t] += cv * cv;
      }
    }
    return p;
  };
  std::vector<std::future<Partial>> futures;
  for (int c = 0; c < chunks; ++c) futures.push_back(std::async(std::launch::async, run_chunk, c));
  std::vector<double> sum(k, 0.0), sum2(k, 0.0);
  for (auto& f : futures) {
    const auto p = f.get();
    for (std::size_t t = 0; t < k; ++t) {
      sum[t] += p.sum[t];
      sum2[t] += p.sum2[t];
    }
  }
  const LambdaFunction<double> lambda(0.5 * (d - 2), 60);
  CfReport rep{d, r, samples, seed, chunks, {}};
  const double n = static_cast<double>(samples);
  for (std::size_t t = 0; t < k; ++t) {
    const double mean = sum[t] / n;
    const double var = std::max(0.0, sum2[t] / n - mean * mean) * n / (n - 1);
    const double se = std::sqrt(var / n);
    const double target = lambda_eval(lambda, Complex{r * theta_norms[t], 0.0}).value.real();
    rep.points.push_back({theta_norms[t], mean, target, se, std::abs(mean - target) <= 4.0 * se});
  }
  return rep;
}

}  // namespace dual_appell
