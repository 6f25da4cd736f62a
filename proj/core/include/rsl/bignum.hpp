#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace rsl {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// v = mantissa * 2^exponent, mantissa in [0.5, 1). Requires v > 0.
struct BigFrexp {
  double mantissa;
  std::int64_t exponent;
};

BigFrexp frexp_big(const BigInt& v);

// Natural log of a positive big integer / rational, accurate to a few ulp
// even when the value is far outside double range.
double log_big(const BigInt& v);
double log_big(const BigRat& v);  // -infinity for zero

// Nearest-double conversion that saturates to +-infinity / 0 instead of
// failing when the value leaves double range.
double to_double_clamped(const BigRat& v);

}  // namespace rsl
