#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace qma {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& x);

// Accepts "p", "p/q", with optional sign. Throws ParseError.
Rational parse_rational(std::string_view text);

// x^e for any integer e; x must be nonzero when e < 0.
template <class F>
F ipow(const F& x, long e) {
  F base = x;
  if (e < 0) {
    base = F(1) / x;
    e = -e;
  }
  F out(1);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static Rational from_rational(const Rational& x) { return x; }
  static std::string format(const Rational& x) { return to_string(x); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  // Storage pruning only; verdicts use the caller's tolerance.
  static constexpr double kPrune = 1e-15;
  static bool is_zero(double x) { return std::fabs(x) <= kPrune; }
  static double magnitude(double x) { return std::fabs(x); }
  static double from_rational(const Rational& x) { return x.get_d(); }
  static std::string format(double x);
};

}  // namespace qma
