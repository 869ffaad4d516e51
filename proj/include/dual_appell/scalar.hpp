#pragma once

// Scalar kinds used throughout the library: exact GMP rationals for the
// algebraic identities, binary floats (real or complex) for analytic and
// Monte-Carlo work.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace dual_appell {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Complex = std::complex<double>;

enum class ScalarKind { rational, binary_float, complex_float };

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarKind kind = ScalarKind::rational;
  static constexpr const char* name = "rational";

  static Rational from_ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(Integer(num), Integer(den));
  }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static double magnitude(const Rational& x) { return std::abs(to_double(x)); }
  static bool is_zero(const Rational& x) { return x == 0; }

  // "num/den", or "num" when the denominator is 1.
  static std::string to_string(const Rational& x) {
    const auto num = boost::multiprecision::numerator(x);
    const auto den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(text));
      Integer num(text.substr(0, slash));
      Integer den(text.substr(slash + 1));
      if (den == 0) throw std::domain_error("rational with zero denominator");
      return Rational(num, den);
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarKind kind = ScalarKind::binary_float;
  static constexpr const char* name = "float";

  static double from_ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("ratio with zero denominator");
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
  static bool is_zero(double x) { return x == 0.0; }

  // Shortest round-tripping decimal literal.
  static std::string to_string(double x) {
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
      std::snprintf(buf, sizeof buf, "%.*g", precision, x);
      if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
  }
  static double parse(const std::string& text) {
    const auto slash = text.find('/');
    std::size_t used = 0;
    try {
      if (slash == std::string::npos) {
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
      }
      return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed float literal '" + text + "'");
    }
  }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static constexpr ScalarKind kind = ScalarKind::complex_float;
  static constexpr const char* name = "complex";

  static Complex from_ratio(std::int64_t num, std::int64_t den) {
    return {scalar_traits<double>::from_ratio(num, den), 0.0};
  }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  static std::string to_string(const Complex& x) {
    return scalar_traits<double>::to_string(x.real()) + (x.imag() < 0 ? "" : "+") +
           scalar_traits<double>::to_string(x.imag()) + "i";
  }
};

template <typename S>
concept Scalar = requires { scalar_traits<S>::exact; };

template <typename S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <Scalar S>
S from_int(std::int64_t v) {
  return scalar_traits<S>::from_ratio(v, 1);
}

template <Scalar S>
S from_ratio(std::int64_t num, std::int64_t den) {
  return scalar_traits<S>::from_ratio(num, den);
}

template <Scalar S>
bool is_zero(const S& x) {
  return scalar_traits<S>::is_zero(x);
}

template <Scalar S>
double magnitude(const S& x) {
  return scalar_traits<S>::magnitude(x);
}

template <Scalar S>
std::string to_string(const S& x) {
  return scalar_traits<S>::to_string(x);
}

// Squared modulus as a double; norms are always reported as binary floats.
template <Scalar S>
double abs2(const S& x) {
  const double m = magnitude(x);
  return m * m;
}

template <Scalar S>
S factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative integer");
  S r = from_int<S>(1);
  for (int k = 2; k <= n; ++k) r *= from_int<S>(k);
  return r;
}

template <Scalar S>
S binomial(int n, int k) {
  if (k < 0 || k > n) return from_int<S>(0);
  S r = from_int<S>(1);
  for (int j = 1; j <= k; ++j) {
    r *= from_int<S>(n - k + j);
    r /= from_int<S>(j);
  }
  return r;
}

template <Scalar S>
S power(S base, int exponent) {
  if (exponent < 0) {
    base = from_int<S>(1) / base;
    exponent = -exponent;
  }
  S r = from_int<S>(1);
  while (exponent > 0) {
    if (exponent & 1) r *= base;
    base *= base;
    exponent >>= 1;
  }
  return r;
}

// Scalar conversion used when an exact computation is replayed in floats.
template <Scalar To, Scalar From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<From, Rational>) {
    if constexpr (std::is_same_v<To, Complex>) return Complex{x.template convert_to<double>(), 0.0};
    else return x.template convert_to<double>();
  } else if constexpr (std::is_same_v<From, double> && std::is_same_v<To, Complex>) {
    return Complex{x, 0.0};
  } else if constexpr (std::is_same_v<From, double> && std::is_same_v<To, Rational>) {
    return Rational(x);
  } else {
    static_assert(!std::is_same_v<To, To>, "unsupported scalar conversion");
  }
}

}  // namespace dual_appell
