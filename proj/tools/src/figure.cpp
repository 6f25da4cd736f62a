#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cli_internal.hpp"
#include "rsl/asymptotics.hpp"
#include "rsl/cli.hpp"
#include "rsl/curve_io.hpp"
#include "rsl/energy.hpp"
#include "rsl/monte_carlo.hpp"
#include "rsl/rng.hpp"
#include "rsl/version.hpp"

namespace rsl::cli {

namespace {

// Self-describing data table: '# key=value' header, column names, rows.
struct FigureTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    if (!out) throw std::runtime_error("error writing '" + path + "'");
  }
};

std::string fmt(double v) { return format_double(v); }

std::string out_path(const FigureOptions& opt, const std::string& stem) {
  return (std::filesystem::path(opt.out_dir) / (stem + ".csv")).string();
}

long depth_for_c(double c, long n) {
  return std::lround(c * std::sqrt(static_cast<double>(n)));
}

std::vector<double> default_c_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 16; ++i) grid.push_back(0.25 * i);
  return grid;
}

int run_scaling_laws(const FigureOptions& opt) {
  const std::vector<long> widths = opt.n_values.empty() ? std::vector<long>{4096} : opt.n_values;
  for (long n : widths) {
    if (n < 1) throw std::invalid_argument("figure: widths must be >= 1");
    // Cover all three regimes: up to the mesoscopic boundary n^(2/3).
    const long max_depth =
        std::min<long>(n - 1, std::lround(std::pow(static_cast<double>(n), 2.0 / 3.0)));
    for (ModelKind model : {ModelKind::kRnn, ModelKind::kLru}) {
      const EnergyCurve exact =
          exact_energy_curve(n, {0, std::max<long>(max_depth, 0)}, model, EvalMode::kLogFloat);
      FigureTable table;
      table.metadata = {{"figure", "scaling_laws"},
                        {"n", std::to_string(n)},
                        {"model", to_string(model)},
                        {"source", "exact+asymptotic"},
                        {"c_low", "0.1"},
                        {"c_high", "10"},
                        {"version", kVersion}};
      table.columns = {"depth", "c",          "value",       "log_value",
                       "subcritical", "critical", "supercritical_log", "regime"};
      for (const auto& row : exact.rows) {
        const double c = static_cast<double>(row.depth) / std::sqrt(static_cast<double>(n));
        const double subcritical =
            model == ModelKind::kRnn ? 1.0 : static_cast<double>(row.depth) + 1.0;
        const double critical =
            model == ModelKind::kRnn
                ? critical_profile(c)
                : std::sqrt(static_cast<double>(n)) * critical_profile_integral(c);
        const double super_log =
            row.depth >= 1 ? (model == ModelKind::kRnn ? supercritical_log_rnn(n, row.depth)
                                                       : supercritical_log_lru(n, row.depth))
                           : std::nan("");
        std::string regime = "beyond-sublinear";
        if (row.depth < n) regime = to_string(classify_regime(n, row.depth).regime);
        table.rows.push_back({std::to_string(row.depth), fmt(c), fmt(row.value),
                              fmt(row.log_value), fmt(subcritical), fmt(critical),
                              fmt(super_log), regime});
      }
      table.write(out_path(opt, "scaling_laws_" + to_string(model) + "_n" + std::to_string(n)));
    }
  }
  return kExitOk;
}

int run_mc_figure(const FigureOptions& opt, WeightField field) {
  const std::vector<long> widths = opt.n_values.empty()
                                       ? (field == WeightField::kComplex
                                              ? std::vector<long>{32, 64}
                                              : std::vector<long>{64})
                                       : opt.n_values;
  const std::vector<double> grid = opt.c_grid.empty() ? default_c_grid() : opt.c_grid;
  for (double c : grid) {
    if (!(c >= 0.0)) throw std::invalid_argument("figure: c grid values must be >= 0");
  }

  std::uint64_t run_index = 0;
  for (long n : widths) {
    for (ModelKind model : {ModelKind::kRnn, ModelKind::kLru}) {
      std::set<long> depth_set;
      for (double c : grid) depth_set.insert(depth_for_c(c, n));
      const long t_max = *depth_set.rbegin();

      McConfig cfg;
      cfg.n = n;
      cfg.t_max = t_max;
      cfg.samples = opt.samples;
      cfg.seed = derive_stream_seed(opt.seed, run_index++);
      cfg.field = field;
      cfg.model = model;
      cfg.workers = opt.workers;
      const std::vector<McEstimate> estimates = simulate_energies(cfg);

      FigureTable table;
      table.metadata = {{"figure", field == WeightField::kComplex ? "mc_complex" : "mc_real"},
                        {"n", std::to_string(n)},
                        {"model", to_string(model)},
                        {"source", "mc"},
                        {"field", to_string(field)},
                        {"samples", std::to_string(opt.samples)},
                        {"seed", std::to_string(opt.seed)},
                        {"run_seed", std::to_string(cfg.seed)},
                        {"profile", "complex critical profile"},
                        {"version", kVersion}};
      table.columns = {"c", "depth", "c_actual", "mc_mean", "mc_stderr", "samples",
                       "profile", "flags"};
      for (double c : grid) {
        const long depth = depth_for_c(c, n);
        const auto& e = estimates[static_cast<std::size_t>(depth)];
        const double c_actual = static_cast<double>(depth) / std::sqrt(static_cast<double>(n));
        const double profile =
            model == ModelKind::kRnn
                ? critical_profile(c_actual)
                : std::sqrt(static_cast<double>(n)) * critical_profile_integral(c_actual);
        table.rows.push_back({fmt(c), std::to_string(depth), fmt(c_actual), fmt(e.mean),
                              fmt(e.stderr_value), std::to_string(e.samples), fmt(profile),
                              e.nonfinite > 0 ? "nonfinite=" + std::to_string(e.nonfinite) : ""});
      }
      const std::string stem = (field == WeightField::kComplex ? "mc_complex_" : "mc_real_") +
                               to_string(model) + "_n" + std::to_string(n);
      table.write(out_path(opt, stem));
    }
  }
  return kExitOk;
}

}  // namespace

int run_figure(const FigureOptions& opt) {
  if (opt.figure == "scaling_laws") return run_scaling_laws(opt);
  if (opt.figure == "mc_complex") return run_mc_figure(opt, WeightField::kComplex);
  if (opt.figure == "mc_real") return run_mc_figure(opt, WeightField::kReal);
  throw std::invalid_argument("unknown figure id '" + opt.figure + "'");
}

}  // namespace rsl::cli
