#pragma once

// Exact integer and rational arithmetic shared by the combinatorial modules.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "algperm/errors.hpp"

namespace algperm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// Moment values a_d, a_d^(2), ã_d^(2); always held in lowest terms.
using ExactRatio = Rational;

inline BigInt factorial(int n) {
  detail::require(n >= 0, "factorial of negative number");
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

/// C(n, k); zero whenever k < 0 or k > n (including n < 0).
inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (long long i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline BigInt ipow(long long base, unsigned exponent) {
  return ipow(BigInt(base), exponent);
}

inline Rational make_ratio(const BigInt& num, const BigInt& den) {
  detail::require(den != 0, "zero denominator");
  return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

/// "p/q", or just "p" when the denominator is one.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace algperm
