#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rsl/energy.hpp"
#include "rsl/errors.hpp"
#include "rsl/monte_carlo.hpp"

using rsl::EvalMode;
using rsl::GaussianStream;
using rsl::InputModel;
using rsl::McConfig;
using rsl::McEstimate;
using rsl::ModelKind;
using rsl::WeightField;

namespace {

double exact_value(long n, long depth, ModelKind model) {
  const auto v = model == ModelKind::kRnn ? rsl::rnn_energy({n, depth}, EvalMode::kLogFloat)
                                          : rsl::lru_energy({n, depth}, EvalMode::kLogFloat);
  return v.value;
}

void check_rows_against_exact(const McConfig& cfg, const std::vector<McEstimate>& rows,
                              double stderr_multiple) {
  for (const auto& row : rows) {
    const double exact = exact_value(cfg.n, row.depth, cfg.model);
    CAPTURE(row.depth);
    CHECK(std::abs(row.mean - exact) <= stderr_multiple * row.stderr_value);
  }
}

}  // namespace

TEST_CASE("weight matrix moments") {
  const long n = 100;
  GaussianStream gauss(12345);

  SUBCASE("complex: unit second absolute moment, zero pseudo-moment") {
    double sum_abs2 = 0.0;
    std::complex<double> sum_sq{0.0, 0.0};
    long count = 0;
    for (int rep = 0; rep < 10; ++rep) {
      const auto w = rsl::sample_weight_matrix(n, WeightField::kComplex, gauss);
      for (const auto& entry : w) {
        sum_abs2 += std::norm(entry);
        sum_sq += entry * entry;
        ++count;
      }
    }
    const double mean_abs2 = sum_abs2 / static_cast<double>(count);
    // Var(|W|^2) = 1/n^2, so stderr of the mean is 1/(n sqrt(count))
    const double se_abs2 = 1.0 / (static_cast<double>(n) * std::sqrt(static_cast<double>(count)));
    CHECK(std::abs(mean_abs2 - 1.0 / static_cast<double>(n)) <= 3.0 * se_abs2);
    const double se_sq = se_abs2;  // same scale
    CHECK(std::abs(sum_sq.real() / static_cast<double>(count)) <= 3.0 * se_sq);
    CHECK(std::abs(sum_sq.imag() / static_cast<double>(count)) <= 3.0 * se_sq);
  }

  SUBCASE("real: variance 1/n, imaginary part zero") {
    double sum_sq = 0.0;
    long count = 0;
    for (int rep = 0; rep < 10; ++rep) {
      const auto w = rsl::sample_weight_matrix(n, WeightField::kReal, gauss);
      for (const auto& entry : w) {
        CHECK(entry.imag() == 0.0);
        sum_sq += entry.real() * entry.real();
        ++count;
      }
    }
    const double se = std::sqrt(2.0) / (static_cast<double>(n) * std::sqrt(static_cast<double>(count)));
    CHECK(std::abs(sum_sq / static_cast<double>(count) - 0.01) <= 3.0 * se);
  }

  SUBCASE("fixed stream, fixed n: identical draw") {
    GaussianStream g1(777);
    GaussianStream g2(777);
    const auto a = rsl::sample_weight_matrix(16, WeightField::kComplex, g1);
    const auto b = rsl::sample_weight_matrix(16, WeightField::kComplex, g2);
    CHECK(a == b);
  }
}

TEST_CASE("simulation determinism across runs and worker counts") {
  McConfig cfg;
  cfg.n = 24;
  cfg.t_max = 10;
  cfg.samples = 999;  // deliberately not a multiple of the block size
  cfg.seed = 2024;
  cfg.model = ModelKind::kLru;

  cfg.workers = 1;
  const auto serial = rsl::simulate_energies(cfg);
  const auto serial_again = rsl::simulate_energies(cfg);
  cfg.workers = 8;
  const auto parallel = rsl::simulate_energies(cfg);

  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].mean == serial_again[i].mean);
    CHECK(serial[i].mean == parallel[i].mean);            // bitwise
    CHECK(serial[i].stderr_value == parallel[i].stderr_value);
    CHECK(serial[i].samples == parallel[i].samples);
  }
}

TEST_CASE("complex simulation matches the exact formulas") {
  McConfig cfg;
  cfg.n = 16;
  cfg.t_max = 6;
  cfg.samples = 4000;
  cfg.seed = 99;
  cfg.workers = 2;

  SUBCASE("per-step recurrence") {
    cfg.model = ModelKind::kRnn;
    const auto rows = rsl::simulate_energies(cfg);
    REQUIRE(rows.size() == 7);
    CHECK(std::abs(rows[0].mean - 1.0) <= 4.0 * rows[0].stderr_value);
    check_rows_against_exact(cfg, rows, 5.0);
    for (const auto& row : rows) {
      CHECK(row.mean >= 0.0);
      CHECK(row.samples == cfg.samples);
      CHECK(row.nonfinite == 0);
    }
  }

  SUBCASE("driven recurrence") {
    cfg.model = ModelKind::kLru;
    const auto rows = rsl::simulate_energies(cfg);
    check_rows_against_exact(cfg, rows, 5.0);
  }

  SUBCASE("shared input vector keeps the same expectation") {
    cfg.model = ModelKind::kLru;
    cfg.input_model = InputModel::kConstantVector;
    const auto rows = rsl::simulate_energies(cfg);
    check_rows_against_exact(cfg, rows, 5.0);
  }
}

TEST_CASE("custom covariance scaling matches the weighted formula") {
  McConfig cfg;
  cfg.n = 12;
  cfg.t_max = 4;
  cfg.samples = 4000;
  cfg.seed = 31;
  cfg.model = ModelKind::kLru;
  cfg.input_model = InputModel::kCustomCovariance;
  cfg.covariance = rsl::CovarianceSpec{{2.0, 0.5, 0.0, 1.0, 3.0}};
  const auto rows = rsl::simulate_energies(cfg);
  for (long t = 0; t <= cfg.t_max; ++t) {
    const auto& traces = cfg.covariance->normalized_traces;
    rsl::CovarianceSpec prefix{std::vector<double>(traces.begin(), traces.begin() + t + 1)};
    const double expected =
        rsl::lru_energy_with_covariance(cfg.n, prefix, EvalMode::kLogFloat).value;
    CAPTURE(t);
    CHECK(std::abs(rows[static_cast<std::size_t>(t)].mean - expected) <=
          5.0 * rows[static_cast<std::size_t>(t)].stderr_value);
  }
}

TEST_CASE("overflowing samples are flagged, not dropped silently") {
  McConfig cfg;
  cfg.n = 4;
  cfg.t_max = 20000;  // deep enough that some trajectories leave double range
  cfg.samples = 8;
  cfg.seed = 5;
  cfg.model = ModelKind::kRnn;
  const auto curve = rsl::simulation_curve(cfg);
  const auto& last = curve.rows.back();
  REQUIRE(last.stderr_value.has_value());
  long nonfinite = 0;
  for (const auto& row : curve.rows) {
    if (!row.flags.empty()) {
      CHECK(row.flags.front().find("nonfinite=") == 0);
      nonfinite = 1;
    }
  }
  CHECK(nonfinite == 1);  // at least one flagged row
}

TEST_CASE("real weights dominate complex weights in expectation") {
  SUBCASE("depth zero: both are the input energy") {
    const auto cmp = rsl::real_vs_complex_check(16, 0, 2000, 11);
    CHECK(std::abs(cmp.gap_in_stderr) <= 4.0);
    CHECK(cmp.passes);
  }
  SUBCASE("one-sided bound at moderate depth") {
    const auto cmps = rsl::real_vs_complex_check(16, {4, 8}, 4000, 12, ModelKind::kRnn, 2);
    for (const auto& cmp : cmps) {
      CAPTURE(cmp.depth);
      CHECK(cmp.passes);
      CHECK(cmp.real_stderr > 0.0);
      CHECK(cmp.complex_stderr > 0.0);
    }
  }
}

TEST_CASE("config validation and resource guard") {
  McConfig cfg;
  cfg.n = 0;
  CHECK_THROWS_AS((void)rsl::simulate_energies(cfg), std::invalid_argument);
  cfg.n = 4;
  cfg.samples = 0;
  CHECK_THROWS_AS((void)rsl::simulate_energies(cfg), std::invalid_argument);
  cfg.samples = 1;
  cfg.workers = 0;
  CHECK_THROWS_AS((void)rsl::simulate_energies(cfg), std::invalid_argument);
  cfg.workers = 1;
  cfg.input_model = InputModel::kCustomCovariance;
  CHECK_THROWS_AS((void)rsl::simulate_energies(cfg), std::invalid_argument);  // cov missing
  cfg.covariance = rsl::CovarianceSpec{{1.0, 1.0}};
  CHECK_THROWS_AS((void)rsl::simulate_energies(cfg), std::invalid_argument);  // wrong length

  McConfig guard;
  guard.n = 1000000;
  guard.t_max = 1000000;
  guard.samples = 1000000;
  guard.seed = 1;
  CHECK_THROWS_AS((void)rsl::simulate_energies(guard), rsl::BudgetError);
}

TEST_CASE("simulation curve carries reproducibility metadata") {
  McConfig cfg;
  cfg.n = 8;
  cfg.t_max = 2;
  cfg.samples = 50;
  cfg.seed = 123;
  const auto curve = rsl::simulation_curve(cfg);
  CHECK(curve.source == rsl::CurveSource::kMc);
  CHECK(curve.metadata.at("seed") == "123");
  CHECK(curve.metadata.at("field") == "complex");
  CHECK(curve.metadata.at("samples") == "50");
  for (const auto& row : curve.rows) CHECK(row.stderr_value.has_value());
}
