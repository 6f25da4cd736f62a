#include "rsl/bignum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsl {

namespace {

// ln(2) split so that exponent * kLn2Hi is exact for |exponent| < 2^20.
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

}  // namespace

BigFrexp frexp_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("frexp_big: value must be positive");
  const auto bits = static_cast<std::int64_t>(msb(v)) + 1;
  double m;
  std::int64_t shift = 0;
  if (bits <= 53) {
    m = v.convert_to<double>();
  } else {
    shift = bits - 53;
    m = BigInt(v >> shift).convert_to<double>();
  }
  int e = 0;
  m = std::frexp(m, &e);
  return {m, e + shift};
}

double log_big(const BigInt& v) {
  const BigFrexp f = frexp_big(v);
  const double e = static_cast<double>(f.exponent);
  return (std::log(f.mantissa) + e * kLn2Lo) + e * kLn2Hi;
}

double log_big(const BigRat& v) {
  if (v < 0) throw std::domain_error("log_big: value must be nonnegative");
  if (v == 0) return -std::numeric_limits<double>::infinity();
  return log_big(numerator(v)) - log_big(denominator(v));
}

double to_double_clamped(const BigRat& v) {
  if (v == 0) return 0.0;
  if (v < 0) return -to_double_clamped(BigRat(-v));
  const BigFrexp n = frexp_big(numerator(v));
  const BigFrexp d = frexp_big(denominator(v));
  const std::int64_t e = n.exponent - d.exponent;
  if (e > 1100) return std::numeric_limits<double>::infinity();
  if (e < -1100) return 0.0;
  return std::ldexp(n.mantissa / d.mantissa, static_cast<int>(e));
}

}  // namespace rsl
