#include "rsl/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace rsl {

namespace {

// Crossovers per the numerical scheme: series while it converges in a
// handful of terms, closed form / quadrature beyond. Both sides agree to
// ~1e-10 at the seams (covered by tests).
constexpr double kProfileSeriesMaxCsq = 1.0;
constexpr double kIntegralSeriesMaxC = 3.0;

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double m, double b, double fa, double fm,
                            double fb, double whole, double rel_tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * rel_tol * std::abs(left + right))
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, rel_tol, depth - 1) +
         adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, rel_tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, rel_tol, 48);
}

}  // namespace

double rate_function(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("rate_function: x must be >= 0");
  return (1.0 + x) * std::log1p(x) - x;
}

double critical_profile(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("critical_profile: c must be >= 0");
  const double u = 0.5 * c * c;  // profile = sinh(u)/u
  if (c * c < kProfileSeriesMaxCsq) {
    // sinh(u)/u = sum_m u^(2m) / (2m+1)!
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 40; ++m) {
      term *= u * u / static_cast<double>(2 * m * (2 * m + 1));
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum;
  }
  return std::sinh(u) / u;
}

double critical_profile_integral(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("critical_profile_integral: c must be >= 0");
  const double head = std::min(c, kIntegralSeriesMaxC);
  // Integrated series: sum_m head^(4m+1) / ((4m+1) * 4^m * (2m+1)!)
  double sum = head;
  double pow_term = head;  // head^(4m+1) / (4^m * (2m+1)!)
  const double h4 = head * head * head * head;
  for (int m = 1; m < 80; ++m) {
    pow_term *= h4 / (4.0 * static_cast<double>(2 * m) * static_cast<double>(2 * m + 1));
    const double term = pow_term / static_cast<double>(4 * m + 1);
    sum += term;
    if (term < 1e-15 * sum) break;
  }
  if (c <= kIntegralSeriesMaxC) return sum;
  return sum + adaptive_simpson([](double x) { return critical_profile(x); },
                                kIntegralSeriesMaxC, c, 1e-12);
}

double supercritical_log_rnn(long n, long k) {
  if (n < 1 || k < 1) throw std::invalid_argument("supercritical_log_rnn: need n, k >= 1");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::log(nd) - std::log(kd + 1.0) - std::log(kd + 2.0) + nd * rate_function(kd / nd);
}

double supercritical_log_lru(long n, long t) {
  if (n < 1 || t < 1) throw std::invalid_argument("supercritical_log_lru: need n, t >= 1");
  const double x = static_cast<double>(t) / static_cast<double>(n);
  return supercritical_log_rnn(n, t) - std::log(std::log1p(x));
}

double supercritical_log_lru_simplified(long n, long t) {
  if (n < 1 || t < 1)
    throw std::invalid_argument("supercritical_log_lru_simplified: need n, t >= 1");
  const double nd = static_cast<double>(n);
  const double td = static_cast<double>(t);
  return 2.0 * std::log(nd) - 3.0 * std::log(td) + nd * rate_function(td / nd);
}

RegimeProfile classify_regime(long n, long depth, double c_low, double c_high) {
  if (n < 1 || depth < 0) throw std::invalid_argument("classify_regime: need n >= 1, depth >= 0");
  if (!(c_low > 0.0) || !(c_high > c_low))
    throw std::invalid_argument("classify_regime: need 0 < c_low < c_high");
  if (depth >= n)
    throw std::domain_error("classify_regime: depth >= n is beyond the sublinear range");
  // Half-open critical band [c_low, c_high): a point sitting exactly on the
  // upper threshold is already treated by the supercritical law.
  const double c = static_cast<double>(depth) / std::sqrt(static_cast<double>(n));
  RegimeProfile p{Regime::kSubcritical, c, false, c_low, c_high};
  if (c < c_low) {
    p.regime = Regime::kSubcritical;
  } else if (c < c_high) {
    p.regime = Regime::kCritical;
  } else {
    p.regime = Regime::kSupercriticalSublinear;
    p.scaling_parameter = static_cast<double>(depth) / static_cast<double>(n);
    // depth^3 <= n^2 in exact integer arithmetic (closed boundary)
    const auto d = static_cast<__int128>(depth);
    const auto w = static_cast<__int128>(n);
    p.mesoscopic_window = d * d * d <= w * w;
  }
  return p;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kSubcritical: return "subcritical";
    case Regime::kCritical: return "critical";
    case Regime::kSupercriticalSublinear: return "supercritical";
  }
  return "unknown";
}

}  // namespace rsl
