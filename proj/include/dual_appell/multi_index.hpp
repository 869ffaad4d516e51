#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace dual_appell {

// Exponent vector alpha = (alpha_1, ..., alpha_d) of the monomial theta^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
      if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  }
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(dim, 0)); }

  int dim() const { return static_cast<int>(entries_.size()); }
  int degree() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
  int operator[](int i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  // alpha! = prod alpha_i!
  template <Scalar S>
  S factorial() const {
    S r = from_int<S>(1);
    for (int e : entries_) r *= dual_appell::factorial<S>(e);
    return r;
  }

  // n! / alpha! with n = |alpha|
  template <Scalar S>
  S multinomial() const {
    return dual_appell::factorial<S>(degree()) / factorial<S>();
  }

  // theta^alpha
  template <Scalar S, typename Point>
  S monomial(const Point& theta) const {
    S r = from_int<S>(1);
    for (int i = 0; i < dim(); ++i) r *= power<S>(S(theta[i]), entries_[i]);
    return r;
  }

  MultiIndex operator+(const MultiIndex& other) const {
    check_dim(other);
    std::vector<int> out(entries_);
    for (int i = 0; i < dim(); ++i) out[i] += other.entries_[i];
    return MultiIndex(std::move(out));
  }

  // Componentwise difference; throws if some entry would go negative.
  MultiIndex operator-(const MultiIndex& other) const {
    check_dim(other);
    std::vector<int> out(entries_);
    for (int i = 0; i < dim(); ++i) out[i] -= other.entries_[i];
    return MultiIndex(std::move(out));
  }

  bool dominates(const MultiIndex& other) const {
    check_dim(other);
    for (int i = 0; i < dim(); ++i)
      if (entries_[i] < other.entries_[i]) return false;
    return true;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  // Graded-lexicographic: lower degree first, then lexicographically larger
  // entries first, so that (2,0) < (1,1) < (0,2).
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.entries_ > b.entries_;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
      if (i) s += ' ';
      s += std::to_string(entries_[i]);
    }
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const MultiIndex& a) { return os << a.str(); }

 private:
  void check_dim(const MultiIndex& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("multi-index dimension mismatch");
  }

  std::vector<int> entries_;
};

// Number of multi-indices of degree n in d variables: C(d+n-1, n).
inline std::size_t count_multi_indices(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("count_multi_indices needs d >= 1, n >= 0");
  std::uint64_t r = 1;
  for (int j = 1; j <= n; ++j) r = r * static_cast<std::uint64_t>(d - 1 + j) / j;
  return static_cast<std::size_t>(r);
}

// All multi-indices of degree n in d variables, graded-lex order.
inline std::vector<MultiIndex> multi_indices(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("multi_indices needs d >= 1, n >= 0");
  std::vector<MultiIndex> out;
  out.reserve(count_multi_indices(d, n));
  std::vector<int> cur(d, 0);
  // Recursive fill, largest leading entry first.
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d - 1) {
      cur[pos] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  fill(fill, 0, n);
  return out;
}

// Position of alpha inside multi_indices(alpha.dim(), alpha.degree()).
inline std::size_t multi_index_rank(const MultiIndex& alpha) {
  const int d = alpha.dim();
  int remaining = alpha.degree();
  std::size_t pos = 0;
  for (int i = 0; i < d - 1; ++i) {
    for (int v = remaining; v > alpha[i]; --v) pos += count_multi_indices(d - i - 1, remaining - v);
    remaining -= alpha[i];
  }
  return pos;
}

}  // namespace dual_appell
