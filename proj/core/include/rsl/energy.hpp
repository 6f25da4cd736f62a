#pragma once

#include <optional>
#include <vector>

#include "rsl/bignum.hpp"
#include "rsl/curve.hpp"

namespace rsl {

enum class EvalMode { kRational, kLogFloat };

// Width / recurrent-step pair. depth is the RNN power k or the LRU step t.
struct EnergyQuery {
  long n = 1;
  long depth = 0;
  void validate() const;
};

// Per-step input strength: entry s holds tr(Sigma^(s))/n for steps 0..t.
struct CovarianceSpec {
  std::vector<double> normalized_traces;
  void validate() const;
};

// A strictly positive energy, carried in log space so it survives the
// exponential growth regimes, with an optional exact rational witness.
// log_value is never NaN; it is -infinity only for the exact zero produced
// by an all-zero covariance.
struct EnergyValue {
  double log_value = 0.0;
  double value = 1.0;  // saturates to +infinity outside double range
  std::optional<BigRat> rational;
  EvalMode mode = EvalMode::kLogFloat;

  static EnergyValue from_rational(BigRat r);
  static EnergyValue from_log(double log_value);
  static EnergyValue zero(EvalMode mode);
};

// x(x+1)...(x+p-1) and x(x-1)...(x-p+1); p = 0 gives the empty product 1.
BigInt rising_factorial(const BigInt& x, long p);
BigInt falling_factorial(const BigInt& x, long p);

// Expected per-step signal energy of h = W^k x under complex Gaussian
// weights with variance 1/n and whitened input. Rational mode evaluates
// the factorial ratio exactly (subject to the depth budget); LogFloat
// mode evaluates the equivalent product form in log space.
EnergyValue rnn_energy(const EnergyQuery& q, EvalMode mode);

// Cumulative energy of the input-driven recurrence: sum of rnn_energy
// over steps 0..depth.
EnergyValue lru_energy(const EnergyQuery& q, EvalMode mode);

// Cumulative energy with per-step input strengths: sum over k of
// normalized_traces[t-k] * rnn_energy(n, k). Reduces to lru_energy when
// every trace is 1; all-zero traces give the exact-zero sentinel.
EnergyValue lru_energy_with_covariance(long n, const CovarianceSpec& cov, EvalMode mode);

struct DepthRange {
  long first = 0;
  long last = 0;
  void validate() const;  // nonempty: 0 <= first <= last
};

// One exact-source row per depth in [first, last].
EnergyCurve exact_energy_curve(long n, DepthRange depths, ModelKind model, EvalMode mode);

}  // namespace rsl
