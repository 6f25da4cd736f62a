#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "rsl/curve.hpp"
#include "rsl/energy.hpp"
#include "rsl/rng.hpp"

namespace rsl {

enum class WeightField { kComplex, kReal };

// How the per-step inputs are drawn. All choices satisfy
// E[x x^T] = trace * I per step.
enum class InputModel {
  kWhitenedIid,      // fresh standard normal vector per step
  kConstantVector,   // one standard normal vector shared by all steps
  kCustomCovariance  // fresh vector scaled by sqrt(normalized trace) per step
};

std::string to_string(WeightField field);
std::string to_string(InputModel input);
WeightField field_from_string(const std::string& s);
InputModel input_model_from_string(const std::string& s);

struct McConfig {
  long n = 1;
  long t_max = 0;
  long samples = 1;
  std::uint64_t seed = 0;
  WeightField field = WeightField::kComplex;
  InputModel input_model = InputModel::kWhitenedIid;
  std::optional<CovarianceSpec> covariance;  // required iff kCustomCovariance
  ModelKind model = ModelKind::kRnn;
  int workers = 1;
  void validate() const;  // includes the n * t_max * samples work guard
};

struct McEstimate {
  long depth = 0;
  double mean = 0.0;
  double stderr_value = 0.0;
  long samples = 0;    // finite samples entering the mean
  long nonfinite = 0;  // overflowed samples, excluded but reported
};

// One weight matrix draw, row-major. Complex field: independent real and
// imaginary parts of variance 1/(2n) each, so E|W_ij|^2 = 1/n and
// E[W_ij^2] = 0. Real field: entries of variance 1/n (imaginary parts 0).
std::vector<std::complex<double>> sample_weight_matrix(long n, WeightField field,
                                                       GaussianStream& gauss);

// Runs the recurrence sample-by-sample (matrix-vector products only) and
// returns per-depth streaming mean / stderr over all samples. Identical
// output for any worker count.
std::vector<McEstimate> simulate_energies(const McConfig& config);

// simulate_energies wrapped as an mc-source curve; rows with overflowed
// samples carry a "nonfinite=<count>" flag.
EnergyCurve simulation_curve(const McConfig& config);

struct FieldComparison {
  long depth = 0;
  double real_mean = 0.0;
  double real_stderr = 0.0;
  double complex_mean = 0.0;
  double complex_stderr = 0.0;
  double gap = 0.0;             // real - complex
  double gap_in_stderr = 0.0;   // gap / combined stderr
  bool passes = false;          // one-sided: gap_in_stderr >= -3
};

// Runs both weight fields at the same sizes and reports the gap at the
// requested depths. The real-field energy dominates the complex one in
// expectation whenever cross-time input trace correlations are
// nonnegative, which holds for both built-in input models.
std::vector<FieldComparison> real_vs_complex_check(long n, const std::vector<long>& depths,
                                                   long samples, std::uint64_t seed,
                                                   ModelKind model = ModelKind::kRnn,
                                                   int workers = 1);
FieldComparison real_vs_complex_check(long n, long depth, long samples, std::uint64_t seed);

}  // namespace rsl
