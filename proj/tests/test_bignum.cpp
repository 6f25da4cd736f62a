#include <doctest.h>

#include <cmath>
#include <limits>

#include "rsl/bignum.hpp"

using rsl::BigInt;
using rsl::BigRat;

TEST_CASE("frexp_big matches frexp on small values") {
  const auto f = rsl::frexp_big(BigInt(1));
  CHECK(f.mantissa == 0.5);
  CHECK(f.exponent == 1);
  const auto g = rsl::frexp_big(BigInt(12345));
  CHECK(std::ldexp(g.mantissa, static_cast<int>(g.exponent)) == 12345.0);
}

TEST_CASE("log_big on wide integers") {
  CHECK(rsl::log_big(BigInt(1)) == 0.0);
  const BigInt big = BigInt(1) << 64;
  CHECK(rsl::log_big(big) == doctest::Approx(64.0 * std::log(2.0)).epsilon(1e-15));

  BigInt fact(1);
  for (int i = 2; i <= 170; ++i) fact *= i;
  CHECK(rsl::log_big(fact) == doctest::Approx(std::lgamma(171.0)).epsilon(1e-13));
}

TEST_CASE("log_big of rationals") {
  CHECK(rsl::log_big(BigRat(3, 4)) == doctest::Approx(std::log(0.75)).epsilon(1e-15));
  CHECK(rsl::log_big(BigRat(0)) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS((void)rsl::log_big(BigRat(-1)), std::domain_error);
  CHECK_THROWS_AS((void)rsl::frexp_big(BigInt(0)), std::domain_error);
}

TEST_CASE("to_double_clamped is accurate and saturates") {
  CHECK(rsl::to_double_clamped(BigRat(3, 4)) == 0.75);
  CHECK(rsl::to_double_clamped(BigRat(-3, 2)) == -1.5);

  const BigInt huge = pow(BigInt(10), 400);
  CHECK(rsl::to_double_clamped(BigRat(huge * 3, huge * 2)) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(rsl::to_double_clamped(BigRat(huge, 1)) == std::numeric_limits<double>::infinity());
  CHECK(rsl::to_double_clamped(BigRat(1, huge)) == 0.0);
}
