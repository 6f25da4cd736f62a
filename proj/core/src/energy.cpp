#include "rsl/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rsl/budgets.hpp"
#include "rsl/errors.hpp"

namespace rsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulator; plain summation of a few hundred
// log1p terms already costs ~1e-11 relative, too much for the 1e-12
// agreement contract.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double get() const { return sum + comp; }
};

// log(e^d - 1) for d > 0 without overflow or cancellation.
double log_expm1(double d) {
  if (d > 0.693) return d + std::log1p(-std::exp(-d));
  return std::log(std::expm1(d));
}

// Incremental log-space state for the product form
//   energy(n,k) = n/((k+1)(k+2)) * (prod_{j<=k+1}(1+j/n) - prod_{j<=k+1}(1-j/n)).
// Advancing from depth k-1 to k appends the j = k+1 factor to both
// products. Once the decreasing product picks up its zero factor
// (k+1 >= n) it stays zero and only the increasing product matters.
class LogEnergyState {
 public:
  explicit LogEnergyState(long n) : n_(n), inv_n_(1.0 / static_cast<double>(n)) {}

  // Advance to depth k (must be called with k = 0, 1, 2, ... in order).
  void advance(long k) {
    const long j = k + 1;
    log_incr_.add(std::log1p(static_cast<double>(j) * inv_n_));
    if (!decr_dead_) {
      if (j >= n_) {
        decr_dead_ = true;
      } else {
        log_decr_.add(std::log1p(-static_cast<double>(j) * inv_n_));
      }
    }
    depth_ = k;
  }

  double log_energy() const {
    const double scale = std::log(static_cast<double>(n_)) -
                         std::log(static_cast<double>(depth_ + 1)) -
                         std::log(static_cast<double>(depth_ + 2));
    const double a = log_incr_.get();
    if (decr_dead_) return scale + a;
    const double b = log_decr_.get();
    return scale + b + log_expm1(a - b);
  }

 private:
  long n_;
  double inv_n_;
  long depth_ = -1;
  bool decr_dead_ = false;
  CompensatedSum log_incr_;  // sum of log1p(j/n), j = 1..depth+1
  CompensatedSum log_decr_;  // sum of log1p(-j/n), dead once a factor hits zero
};

// Streaming max-shifted log-sum-exp.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == -kInf) return;
    if (log_term <= max_) {
      scaled_.add(std::exp(log_term - max_));
    } else {
      const double old = scaled_.get();
      scaled_ = CompensatedSum{};
      scaled_.add(old * std::exp(max_ - log_term));
      scaled_.add(1.0);
      max_ = log_term;
    }
  }
  double get() const {
    if (max_ == -kInf) return -kInf;
    return max_ + std::log(scaled_.get());
  }

 private:
  double max_ = -kInf;
  CompensatedSum scaled_;
};

void check_rational_budget(long depth) {
  const long cap = budgets::rational_depth_max();
  if (depth > cap) {
    throw BudgetError("exact rational mode capped at depth " + std::to_string(cap) +
                      " (got " + std::to_string(depth) +
                      "); use LogFloat mode or raise RSL_MAX_BIGNUM_K");
  }
}

BigRat energy_rational(long n, long k) {
  const BigInt width(n);
  const BigInt num = rising_factorial(width, k + 2) - falling_factorial(width, k + 2);
  BigInt den = pow(width, static_cast<unsigned>(k + 1));
  den *= (k + 1);
  den *= (k + 2);
  return BigRat(num, den);
}

// Incremental rational evaluation along increasing depth; one bignum
// multiply per factor instead of rebuilding the factorial products at
// every step.
class RationalEnergyState {
 public:
  explicit RationalEnergyState(long n) : n_(n), rise_(n), fall_(n), n_pow_(1) {}

  void advance(long k) {
    const long j = k + 1;
    rise_ *= (n_ + j);
    fall_ *= (n_ - j);  // reaches an exact zero once j == n_ and stays there
    n_pow_ *= n_;
    depth_ = k;
  }

  BigRat energy() const {
    BigInt den = n_pow_ * (depth_ + 1);
    den *= (depth_ + 2);
    return BigRat(rise_ - fall_, den);
  }

 private:
  long n_;
  long depth_ = -1;
  BigInt rise_;   // rising product of depth_+2 factors starting at n
  BigInt fall_;   // falling counterpart
  BigInt n_pow_;  // n^(depth_+1)
};

double log_energy(long n, long k) {
  LogEnergyState state(n);
  for (long i = 0; i <= k; ++i) state.advance(i);
  return state.log_energy();
}

// Doubles are exact binary rationals; used to carry covariance weights
// into rational mode without rounding.
BigRat rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("covariance trace must be finite");
  if (x == 0.0) return BigRat(0);
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));  // exact
  BigRat r(mant);
  const int shift = e - 53;
  if (shift >= 0) {
    r *= BigRat(BigInt(1) << shift);
  } else {
    r /= BigRat(BigInt(1) << -shift);
  }
  return r;
}

}  // namespace

void EnergyQuery::validate() const {
  if (n < 1) throw std::invalid_argument("EnergyQuery: width n must be >= 1");
  if (depth < 0) throw std::invalid_argument("EnergyQuery: depth must be >= 0");
}

void CovarianceSpec::validate() const {
  if (normalized_traces.empty())
    throw std::invalid_argument("CovarianceSpec: trace sequence must be nonempty");
  for (double t : normalized_traces) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("CovarianceSpec: traces must be finite and >= 0");
  }
}

void DepthRange::validate() const {
  if (first < 0 || last < first)
    throw std::invalid_argument("DepthRange: need 0 <= first <= last (nonempty range)");
}

EnergyValue EnergyValue::from_rational(BigRat r) {
  if (r < 0) throw std::invalid_argument("EnergyValue: energies are nonnegative");
  EnergyValue v;
  v.mode = EvalMode::kRational;
  v.log_value = log_big(r);
  v.value = to_double_clamped(r);
  v.rational = std::move(r);
  return v;
}

EnergyValue EnergyValue::from_log(double log_value) {
  if (std::isnan(log_value)) throw std::invalid_argument("EnergyValue: log_value is NaN");
  EnergyValue v;
  v.mode = EvalMode::kLogFloat;
  v.log_value = log_value;
  v.value = std::exp(log_value);
  return v;
}

EnergyValue EnergyValue::zero(EvalMode mode) {
  EnergyValue v;
  v.mode = mode;
  v.log_value = -kInf;
  v.value = 0.0;
  if (mode == EvalMode::kRational) v.rational = BigRat(0);
  return v;
}

BigInt rising_factorial(const BigInt& x, long p) {
  if (x < 0 || p < 0) throw std::invalid_argument("rising_factorial: x, p must be >= 0");
  BigInt r(1);
  for (long j = 0; j < p; ++j) r *= (x + j);
  return r;
}

BigInt falling_factorial(const BigInt& x, long p) {
  if (x < 0 || p < 0) throw std::invalid_argument("falling_factorial: x, p must be >= 0");
  if (p > x) return BigInt(0);  // a zero factor occurs
  BigInt r(1);
  for (long j = 0; j < p; ++j) r *= (x - j);
  return r;
}

EnergyValue rnn_energy(const EnergyQuery& q, EvalMode mode) {
  q.validate();
  if (mode == EvalMode::kRational) {
    check_rational_budget(q.depth);
    return EnergyValue::from_rational(energy_rational(q.n, q.depth));
  }
  return EnergyValue::from_log(log_energy(q.n, q.depth));
}

EnergyValue lru_energy(const EnergyQuery& q, EvalMode mode) {
  q.validate();
  if (mode == EvalMode::kRational) {
    check_rational_budget(q.depth);
    RationalEnergyState state(q.n);
    BigRat total(0);
    for (long k = 0; k <= q.depth; ++k) {
      state.advance(k);
      total += state.energy();
    }
    return EnergyValue::from_rational(std::move(total));
  }
  LogEnergyState state(q.n);
  LogSumExp acc;
  for (long k = 0; k <= q.depth; ++k) {
    state.advance(k);
    acc.add(state.log_energy());
  }
  return EnergyValue::from_log(acc.get());
}

EnergyValue lru_energy_with_covariance(long n, const CovarianceSpec& cov, EvalMode mode) {
  cov.validate();
  if (n < 1) throw std::invalid_argument("width n must be >= 1");
  const long t = static_cast<long>(cov.normalized_traces.size()) - 1;
  bool all_zero = true;
  for (double w : cov.normalized_traces) all_zero = all_zero && w == 0.0;
  if (all_zero) return EnergyValue::zero(mode);

  if (mode == EvalMode::kRational) {
    check_rational_budget(t);
    RationalEnergyState state(n);
    BigRat total(0);
    for (long k = 0; k <= t; ++k) {
      state.advance(k);
      const double w = cov.normalized_traces[t - k];
      if (w == 0.0) continue;
      total += rational_from_double(w) * state.energy();
    }
    return EnergyValue::from_rational(std::move(total));
  }
  LogEnergyState state(n);
  LogSumExp acc;
  for (long k = 0; k <= t; ++k) {
    state.advance(k);
    const double w = cov.normalized_traces[t - k];
    if (w == 0.0) continue;
    acc.add(state.log_energy() + std::log(w));
  }
  return EnergyValue::from_log(acc.get());
}

EnergyCurve exact_energy_curve(long n, DepthRange depths, ModelKind model, EvalMode mode) {
  depths.validate();
  if (n < 1) throw std::invalid_argument("width n must be >= 1");
  EnergyCurve curve;
  curve.n = n;
  curve.model = model;
  curve.source = CurveSource::kExact;
  curve.metadata["mode"] = mode == EvalMode::kRational ? "rational" : "logfloat";
  curve.rows.reserve(static_cast<std::size_t>(depths.last - depths.first + 1));

  if (mode == EvalMode::kRational) {
    check_rational_budget(depths.last);
    RationalEnergyState state(n);
    BigRat running(0);
    for (long d = 0; d <= depths.last; ++d) {
      state.advance(d);
      if (model == ModelKind::kLru) running += state.energy();
      if (d < depths.first) continue;
      const EnergyValue v =
          EnergyValue::from_rational(model == ModelKind::kRnn ? state.energy() : running);
      curve.rows.push_back({d, v.value, v.log_value, std::nullopt, {}});
    }
  } else {
    LogEnergyState state(n);
    LogSumExp running;
    for (long d = 0; d <= depths.last; ++d) {
      state.advance(d);
      if (model == ModelKind::kLru) running.add(state.log_energy());
      if (d < depths.first) continue;
      const double lv = model == ModelKind::kRnn ? state.log_energy() : running.get();
      const EnergyValue v = EnergyValue::from_log(lv);
      curve.rows.push_back({d, v.value, v.log_value, std::nullopt, {}});
    }
  }
  curve.validate();
  return curve;
}

}  // namespace rsl
