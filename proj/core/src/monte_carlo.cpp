#include "rsl/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "rsl/budgets.hpp"
#include "rsl/errors.hpp"
#include "rsl/version.hpp"

namespace rsl {

namespace {

constexpr long kSamplesPerBlock = 64;

// Streaming mean/variance (Welford update, Chan merge). Merging in a
// fixed block order keeps results byte-identical across worker counts.
struct DepthAccumulator {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  long nonfinite = 0;

  void add(double x) {
    if (!std::isfinite(x)) {
      ++nonfinite;
      return;
    }
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const DepthAccumulator& other) {
    nonfinite += other.nonfinite;
    if (other.count == 0) return;
    if (count == 0) {
      count = other.count;
      mean = other.mean;
      m2 = other.m2;
      return;
    }
    const double delta = other.mean - mean;
    const long total = count + other.count;
    mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / static_cast<double>(total);
    count = total;
  }
};

void fill_gaussian(GaussianStream& gauss, double* dst, long count, double scale) {
  for (long i = 0; i < count; ++i) dst[i] = scale * gauss.next();
}

// Complex state as interleaved (re, im) pairs; hand-rolled arithmetic
// keeps the inner loop free of the library complex-multiply call.
void matvec_complex(const double* w, const double* h, double* out, long n) {
  for (long i = 0; i < n; ++i) {
    const double* row = w + 2 * i * n;
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (long j = 0; j < n; ++j) {
      const double wr = row[2 * j];
      const double wi = row[2 * j + 1];
      const double hr = h[2 * j];
      const double hi = h[2 * j + 1];
      acc_re += wr * hr - wi * hi;
      acc_im += wr * hi + wi * hr;
    }
    out[2 * i] = acc_re;
    out[2 * i + 1] = acc_im;
  }
}

void matvec_real(const double* w, const double* h, double* out, long n) {
  for (long i = 0; i < n; ++i) {
    const double* row = w + i * n;
    double acc = 0.0;
    for (long j = 0; j < n; ++j) acc += row[j] * h[j];
    out[i] = acc;
  }
}

double energy_complex(const double* h, long n) {
  double acc = 0.0;
  for (long j = 0; j < 2 * n; ++j) acc += h[j] * h[j];
  return acc / static_cast<double>(n);
}

double energy_real(const double* h, long n) {
  double acc = 0.0;
  for (long j = 0; j < n; ++j) acc += h[j] * h[j];
  return acc / static_cast<double>(n);
}

struct SampleWorkspace {
  std::vector<double> weights;
  std::vector<double> state;
  std::vector<double> next_state;
  std::vector<double> input;
  std::vector<double> energies;
};

// Draw order per sample: weight matrix first (row-major, re then im for
// the complex field), then inputs in time order as the recurrence
// consumes them. Changing this order is a format break for fixed seeds.
void run_sample(const McConfig& cfg, std::uint64_t sample_index, SampleWorkspace& ws) {
  const long n = cfg.n;
  const bool complex_field = cfg.field == WeightField::kComplex;
  GaussianStream gauss(derive_stream_seed(cfg.seed, sample_index));

  const double weight_scale =
      complex_field ? std::sqrt(0.5 / static_cast<double>(n)) : std::sqrt(1.0 / static_cast<double>(n));
  fill_gaussian(gauss, ws.weights.data(), complex_field ? 2 * n * n : n * n, weight_scale);

  const auto input_scale = [&](long step) -> double {
    if (cfg.input_model == InputModel::kCustomCovariance)
      return std::sqrt(cfg.covariance->normalized_traces[step]);
    return 1.0;
  };
  const auto draw_input = [&](long step) {
    if (cfg.input_model == InputModel::kConstantVector && step > 0) return;  // reuse
    fill_gaussian(gauss, ws.input.data(), n, input_scale(step));
  };
  const auto load_state_from_input = [&] {
    if (complex_field) {
      for (long j = 0; j < n; ++j) {
        ws.state[2 * j] = ws.input[j];
        ws.state[2 * j + 1] = 0.0;
      }
    } else {
      for (long j = 0; j < n; ++j) ws.state[j] = ws.input[j];
    }
  };

  draw_input(0);
  load_state_from_input();
  ws.energies[0] = complex_field ? energy_complex(ws.state.data(), n)
                                 : energy_real(ws.state.data(), n);

  for (long t = 1; t <= cfg.t_max; ++t) {
    if (complex_field) {
      matvec_complex(ws.weights.data(), ws.state.data(), ws.next_state.data(), n);
    } else {
      matvec_real(ws.weights.data(), ws.state.data(), ws.next_state.data(), n);
    }
    if (cfg.model == ModelKind::kLru) {
      draw_input(t);
      if (complex_field) {
        for (long j = 0; j < n; ++j) ws.next_state[2 * j] += ws.input[j];
      } else {
        for (long j = 0; j < n; ++j) ws.next_state[j] += ws.input[j];
      }
    }
    ws.state.swap(ws.next_state);
    ws.energies[t] = complex_field ? energy_complex(ws.state.data(), n)
                                   : energy_real(ws.state.data(), n);
  }
}

}  // namespace

std::string to_string(WeightField field) {
  return field == WeightField::kComplex ? "complex" : "real";
}

std::string to_string(InputModel input) {
  switch (input) {
    case InputModel::kWhitenedIid: return "whitened";
    case InputModel::kConstantVector: return "constant";
    case InputModel::kCustomCovariance: return "custom";
  }
  throw std::logic_error("unreachable");
}

WeightField field_from_string(const std::string& s) {
  if (s == "complex") return WeightField::kComplex;
  if (s == "real") return WeightField::kReal;
  throw std::invalid_argument("unknown field '" + s + "' (expected complex|real)");
}

InputModel input_model_from_string(const std::string& s) {
  if (s == "whitened") return InputModel::kWhitenedIid;
  if (s == "constant") return InputModel::kConstantVector;
  if (s == "custom") return InputModel::kCustomCovariance;
  throw std::invalid_argument("unknown input model '" + s + "'");
}

void McConfig::validate() const {
  if (n < 1) throw std::invalid_argument("McConfig: width n must be >= 1");
  if (t_max < 0) throw std::invalid_argument("McConfig: t_max must be >= 0");
  if (samples < 1) throw std::invalid_argument("McConfig: samples must be >= 1");
  if (workers < 1) throw std::invalid_argument("McConfig: workers must be >= 1");
  if (input_model == InputModel::kCustomCovariance) {
    if (!covariance.has_value())
      throw std::invalid_argument("McConfig: custom input model needs a covariance spec");
    covariance->validate();
    if (static_cast<long>(covariance->normalized_traces.size()) != t_max + 1)
      throw std::invalid_argument("McConfig: covariance length must be t_max + 1");
  }
  const long long work = static_cast<long long>(n) * std::max(t_max, 1L) * samples;
  if (work > budgets::kSimulationWorkMax) {
    throw BudgetError("simulation work product n*t_max*samples = " + std::to_string(work) +
                      " exceeds " + std::to_string(budgets::kSimulationWorkMax));
  }
}

std::vector<std::complex<double>> sample_weight_matrix(long n, WeightField field,
                                                       GaussianStream& gauss) {
  if (n < 1) throw std::invalid_argument("sample_weight_matrix: n must be >= 1");
  std::vector<std::complex<double>> w(static_cast<std::size_t>(n) * n);
  if (field == WeightField::kComplex) {
    const double scale = std::sqrt(0.5 / static_cast<double>(n));
    for (auto& entry : w) {
      const double re = scale * gauss.next();
      const double im = scale * gauss.next();
      entry = {re, im};
    }
  } else {
    const double scale = std::sqrt(1.0 / static_cast<double>(n));
    for (auto& entry : w) entry = {scale * gauss.next(), 0.0};
  }
  return w;
}

std::vector<McEstimate> simulate_energies(const McConfig& config) {
  config.validate();
  const long depths = config.t_max + 1;
  const long num_blocks = (config.samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
  std::vector<std::vector<DepthAccumulator>> block_acc(
      static_cast<std::size_t>(num_blocks),
      std::vector<DepthAccumulator>(static_cast<std::size_t>(depths)));

  std::atomic<long> next_block{0};
  const auto worker_body = [&] {
    SampleWorkspace ws;
    const long n = config.n;
    const long state_len = config.field == WeightField::kComplex ? 2 * n : n;
    ws.weights.resize(static_cast<std::size_t>(state_len) * n);
    ws.state.resize(state_len);
    ws.next_state.resize(state_len);
    ws.input.resize(n);
    ws.energies.resize(depths);
    for (;;) {
      const long b = next_block.fetch_add(1);
      if (b >= num_blocks) break;
      auto& acc = block_acc[static_cast<std::size_t>(b)];
      const long begin = b * kSamplesPerBlock;
      const long end = std::min(begin + kSamplesPerBlock, config.samples);
      for (long s = begin; s < end; ++s) {
        run_sample(config, static_cast<std::uint64_t>(s), ws);
        for (long d = 0; d < depths; ++d) acc[static_cast<std::size_t>(d)].add(ws.energies[d]);
      }
    }
  };

  const int threads = static_cast<int>(std::min<long>(config.workers, num_blocks));
  if (threads <= 1) {
    worker_body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker_body);
    for (auto& t : pool) t.join();
  }

  std::vector<DepthAccumulator> merged(static_cast<std::size_t>(depths));
  for (long b = 0; b < num_blocks; ++b) {
    for (long d = 0; d < depths; ++d)
      merged[static_cast<std::size_t>(d)].merge(block_acc[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)]);
  }

  std::vector<McEstimate> out(static_cast<std::size_t>(depths));
  for (long d = 0; d < depths; ++d) {
    const auto& acc = merged[static_cast<std::size_t>(d)];
    McEstimate& e = out[static_cast<std::size_t>(d)];
    e.depth = d;
    e.samples = acc.count;
    e.nonfinite = acc.nonfinite;
    e.mean = acc.mean;
    e.stderr_value = acc.count > 1
                         ? std::sqrt(acc.m2 / (static_cast<double>(acc.count - 1) *
                                               static_cast<double>(acc.count)))
                         : 0.0;
  }
  return out;
}

EnergyCurve simulation_curve(const McConfig& config) {
  const std::vector<McEstimate> estimates = simulate_energies(config);
  EnergyCurve curve;
  curve.n = config.n;
  curve.model = config.model;
  curve.source = CurveSource::kMc;
  curve.metadata["seed"] = std::to_string(config.seed);
  curve.metadata["field"] = to_string(config.field);
  curve.metadata["samples"] = std::to_string(config.samples);
  curve.metadata["input"] = to_string(config.input_model);
  curve.metadata["version"] = kVersion;
  curve.rows.reserve(estimates.size());
  for (const auto& e : estimates) {
    CurveRow row;
    row.depth = e.depth;
    row.value = e.mean;
    row.log_value = e.mean > 0.0 ? std::log(e.mean) : -std::numeric_limits<double>::infinity();
    row.stderr_value = e.stderr_value;
    if (e.nonfinite > 0) row.flags.push_back("nonfinite=" + std::to_string(e.nonfinite));
    curve.rows.push_back(std::move(row));
  }
  curve.validate();
  return curve;
}

std::vector<FieldComparison> real_vs_complex_check(long n, const std::vector<long>& depths,
                                                   long samples, std::uint64_t seed,
                                                   ModelKind model, int workers) {
  if (depths.empty()) throw std::invalid_argument("real_vs_complex_check: no depths");
  long t_max = 0;
  for (long d : depths) {
    if (d < 0) throw std::invalid_argument("real_vs_complex_check: negative depth");
    t_max = std::max(t_max, d);
  }
  McConfig cfg;
  cfg.n = n;
  cfg.t_max = t_max;
  cfg.samples = samples;
  cfg.model = model;
  cfg.workers = workers;

  cfg.field = WeightField::kReal;
  cfg.seed = derive_stream_seed(seed, 1);
  const auto real_rows = simulate_energies(cfg);
  cfg.field = WeightField::kComplex;
  cfg.seed = derive_stream_seed(seed, 2);
  const auto complex_rows = simulate_energies(cfg);

  std::vector<FieldComparison> out;
  out.reserve(depths.size());
  for (long d : depths) {
    const auto& r = real_rows[static_cast<std::size_t>(d)];
    const auto& c = complex_rows[static_cast<std::size_t>(d)];
    FieldComparison cmp;
    cmp.depth = d;
    cmp.real_mean = r.mean;
    cmp.real_stderr = r.stderr_value;
    cmp.complex_mean = c.mean;
    cmp.complex_stderr = c.stderr_value;
    cmp.gap = r.mean - c.mean;
    const double combined = std::hypot(r.stderr_value, c.stderr_value);
    cmp.gap_in_stderr = combined > 0.0 ? cmp.gap / combined : 0.0;
    cmp.passes = cmp.gap_in_stderr >= -3.0;
    out.push_back(cmp);
  }
  return out;
}

FieldComparison real_vs_complex_check(long n, long depth, long samples, std::uint64_t seed) {
  return real_vs_complex_check(n, std::vector<long>{depth}, samples, seed).front();
}

}  // namespace rsl
