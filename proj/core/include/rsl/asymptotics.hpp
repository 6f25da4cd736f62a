#pragma once

namespace rsl {

// Large-depth laws for the signal energies under joint depth-width
// scaling, and the regime classifier used by the figure pipeline.

// (1+x)*log1p(x) - x for x >= 0. Nonnegative, increasing, convex;
// behaves like x^2/2 near zero. Governs the supercritical growth rate.
double rate_function(double x);

// Limit profile of the per-step energy when depth ~ c*sqrt(width):
// (2/c^2)*sinh(c^2/2), continuously extended to 1 at c = 0. Evaluated by
// series for c^2 < 1 to avoid the 0/0 cancellation.
double critical_profile(double c);

// Integral of critical_profile over [0, c]; the cumulative energy scales
// like sqrt(width) times this. Term-by-term integrated series up to c = 3,
// adaptive quadrature of the profile beyond.
double critical_profile_integral(double c);

// log of n/((k+1)(k+2)) * exp(n * rate_function(k/n)); the supercritical
// approximation of the per-step energy. No regime check is applied.
double supercritical_log_rnn(long n, long k);

// log of the supercritical cumulative-energy approximation:
// supercritical_log_rnn(n, t) - log(log1p(t/n)).
double supercritical_log_lru(long n, long t);

// The algebraically simplified variant 2*log n - 3*log t + n*rate(t/n);
// differs from supercritical_log_lru by o(1) inside the regime.
double supercritical_log_lru_simplified(long n, long t);

enum class Regime { kSubcritical, kCritical, kSupercriticalSublinear };

struct RegimeProfile {
  Regime regime;
  // depth/sqrt(n) for sub/critical, depth/n for supercritical.
  double scaling_parameter;
  // depth <= n^(2/3) (closed boundary); only set in the supercritical regime.
  bool mesoscopic_window;
  double c_low;   // thresholds echoed so consumers can re-classify
  double c_high;
};

// Classifies by c = depth/sqrt(n): subcritical below c_low, critical in
// [c_low, c_high), supercritical from c_high on. Depths >= n are outside
// the analyzed sublinear range and raise std::domain_error.
RegimeProfile classify_regime(long n, long depth, double c_low = 0.1, double c_high = 10.0);

const char* to_string(Regime regime);

}  // namespace rsl
