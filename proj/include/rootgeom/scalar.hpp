#pragma once

// Scalar policy shared by every module. A root system is instantiated either
// over exact rationals or over binary64; comparisons go through
// scalar_traits so that the same algorithm text works in both modes.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include "rootgeom/errors.hpp"

namespace rootgeom {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Value tolerance for float comparisons.
inline constexpr double kTauEq = 1e-9;
/// Eigenvalues at or below this magnitude count as zero.
inline constexpr double kTauSig = 1e-7;
/// Tolerance for convex-hull membership tests.
inline constexpr double kTauHull = 1e-7;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static bool is_zero(double x) { return std::abs(x) <= kTauEq; }
  static bool less(double a, double b) { return a < b - kTauEq; }
  static bool less_eq(double a, double b) { return a <= b + kTauEq; }
  static bool equal(double a, double b) { return std::abs(a - b) <= kTauEq; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_int(long long v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool less_eq(const Rational& a, const Rational& b) { return a <= b; }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
};

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; };

template <Scalar T>
double to_double(const T& x) {
  return scalar_traits<T>::to_double(x);
}

template <Scalar T>
bool is_zero(const T& x) {
  return scalar_traits<T>::is_zero(x);
}
template <Scalar T>
bool lt(const T& a, const T& b) {
  return scalar_traits<T>::less(a, b);
}
template <Scalar T>
bool le(const T& a, const T& b) {
  return scalar_traits<T>::less_eq(a, b);
}
template <Scalar T>
bool eq(const T& a, const T& b) {
  return scalar_traits<T>::equal(a, b);
}
template <Scalar T>
bool gt(const T& a, const T& b) {
  return lt(b, a);
}
template <Scalar T>
bool ge(const T& a, const T& b) {
  return le(b, a);
}

template <Scalar T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

/// Parses "p/q", an integer, or a plain decimal ("1.25", "-0.5") into an
/// exact rational. Returns nullopt on anything else.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return std::nullopt;

  auto parse_int = [](std::string_view s) -> std::optional<BigInt> {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    BigInt v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(trim(text.substr(0, slash)));
    auto den = parse_int(trim(text.substr(slash + 1)));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (frac.empty() && whole.empty()) return std::nullopt;
    BigInt w = 0;
    if (!whole.empty()) {
      auto pw = parse_int(whole);
      if (!pw || *pw < 0) return std::nullopt;
      w = *pw;
    }
    BigInt f = 0, scale = 1;
    for (char c : frac) {
      if (c < '0' || c > '9') return std::nullopt;
      f = f * 10 + (c - '0');
      scale *= 10;
    }
    Rational r = Rational(w) + Rational(f, scale);
    return neg ? Rational(-r) : r;
  }
  if (auto v = parse_int(text)) return Rational(*v);
  return std::nullopt;
}

inline std::string format_rational(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Exact square root of a nonnegative rational when both numerator and
/// denominator are perfect squares.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (r < 0) return std::nullopt;
  BigInt n = numerator(r), d = denominator(r);
  BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace rootgeom
