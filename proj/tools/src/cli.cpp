#include "rsl/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cli_internal.hpp"
#include "rsl/curve_io.hpp"
#include "rsl/energy.hpp"
#include "rsl/errors.hpp"
#include "rsl/monte_carlo.hpp"
#include "rsl/version.hpp"

namespace rsl::cli {

namespace {

DepthRange parse_depth_range_impl(const std::string& text) {
  const std::size_t sep = text.find("..");
  if (sep == std::string::npos)
    throw std::invalid_argument("depth range must look like 'a..b' (got '" + text + "')");
  const auto parse_part = [&](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("bad depth range '" + text + "'");
    for (char ch : part) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("bad depth range '" + text + "'");
    }
    return std::stol(part);
  };
  DepthRange range{parse_part(text.substr(0, sep)), parse_part(text.substr(sep + 2))};
  range.validate();
  return range;
}

struct ExactOptions {
  long n = 1;
  std::string depths;
  std::string model = "rnn";
  std::string mode = "rational";
  std::string format = "csv";
  std::string output = "-";
};

int run_exact(const ExactOptions& opt) {
  EnergyCurve curve = exact_energy_curve(opt.n, parse_depth_range(opt.depths),
                                         model_from_string(opt.model), mode_from_string(opt.mode));
  curve.metadata["version"] = kVersion;
  write_curve_file(curve, opt.output, format_from_string(opt.format));
  return kExitOk;
}

struct SimulateOptions {
  long n = 1;
  long t_max = 0;
  long samples = 10000;
  std::uint64_t seed = 0;
  std::string field = "complex";
  std::string model = "rnn";
  std::string input = "whitened";
  std::vector<double> cov;
  int workers = 1;
  std::string format = "csv";
  std::string output = "-";
};

int run_simulate(const SimulateOptions& opt) {
  McConfig cfg;
  cfg.n = opt.n;
  cfg.t_max = opt.t_max;
  cfg.samples = opt.samples;
  cfg.seed = opt.seed;
  cfg.field = field_from_string(opt.field);
  cfg.model = model_from_string(opt.model);
  cfg.input_model = input_model_from_string(opt.input);
  cfg.workers = opt.workers;
  if (cfg.input_model == InputModel::kCustomCovariance) {
    cfg.covariance = CovarianceSpec{opt.cov};
  } else if (!opt.cov.empty()) {
    throw std::invalid_argument("--cov is only valid with --input custom");
  }
  write_curve_file(simulation_curve(cfg), opt.output, format_from_string(opt.format));
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"finite-width signal energies of linear recurrences", "rsl"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // exact
  ExactOptions exact;
  CLI::App* cmd_exact = app.add_subcommand("exact", "evaluate the closed-form energy curve");
  cmd_exact->add_option("--n", exact.n, "hidden width (>= 1)")->required();
  cmd_exact->add_option("--depths", exact.depths, "inclusive depth range a..b")->required();
  cmd_exact->add_option("--model", exact.model, "rnn|lru")->required();
  cmd_exact->add_option("--mode", exact.mode, "rational|logfloat (default rational)");
  cmd_exact->add_option("--format", exact.format, "csv|json");
  cmd_exact->add_option("--output,-o", exact.output, "output path, '-' for stdout");

  // simulate
  SimulateOptions sim;
  CLI::App* cmd_sim = app.add_subcommand("simulate", "Monte Carlo estimate of the energy curve");
  cmd_sim->add_option("--n", sim.n, "hidden width")->required();
  cmd_sim->add_option("--t-max", sim.t_max, "maximum depth")->required();
  cmd_sim->add_option("--samples", sim.samples, "independent draws (default 10000)");
  cmd_sim->add_option("--seed", sim.seed, "RNG seed (required; no hidden entropy)")->required();
  cmd_sim->add_option("--field", sim.field, "complex|real");
  cmd_sim->add_option("--model", sim.model, "rnn|lru");
  cmd_sim->add_option("--input", sim.input, "whitened|constant|custom");
  cmd_sim->add_option("--cov", sim.cov, "normalized traces for --input custom")->delimiter(',');
  cmd_sim->add_option("--workers", sim.workers, "worker threads (does not affect results)");
  cmd_sim->add_option("--format", sim.format, "csv|json");
  cmd_sim->add_option("--output,-o", sim.output, "output path, '-' for stdout");

  // verify
  VerifyOptions verify;
  CLI::App* cmd_verify = app.add_subcommand("verify", "run the combinatorial verification suite");
  cmd_verify->add_option("--max-k", verify.max_k, "largest permutation size to enumerate");
  cmd_verify->add_option("--max-m", verify.max_m, "largest cycle order to cross-check");
  cmd_verify->add_flag("--inject-fault", verify.inject_fault)->group("");  // test hook

  // figure
  FigureOptions figure;
  CLI::App* cmd_figure = app.add_subcommand("figure", "emit figure-ready data files");
  cmd_figure
      ->add_option("figure_id", figure.figure, "scaling_laws|mc_complex|mc_real")
      ->required()
      ->check(CLI::IsMember({"scaling_laws", "mc_complex", "mc_real"}));
  cmd_figure->add_option("--n", figure.n_values, "widths (comma list)")->delimiter(',');
  cmd_figure->add_option("--samples", figure.samples, "Monte Carlo samples per run");
  CLI::Option* fig_seed = cmd_figure->add_option("--seed", figure.seed, "RNG seed");
  cmd_figure->add_option("--c-grid", figure.c_grid, "comma list of c values")->delimiter(',');
  cmd_figure->add_option("--out-dir", figure.out_dir, "output directory");
  cmd_figure->add_option("--workers", figure.workers, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);

  if (cmd_exact->parsed()) return run_exact(exact);
  if (cmd_sim->parsed()) return run_simulate(sim);
  if (cmd_verify->parsed()) return run_verify(verify);
  if (cmd_figure->parsed()) {
    if (figure.figure != "scaling_laws" && fig_seed->count() == 0)
      throw CLI::RequiredError("--seed (stochastic figures take no hidden entropy)");
    return run_figure(figure);
  }
  return kExitUsage;
}

}  // namespace

DepthRange parse_depth_range(const std::string& text) { return parse_depth_range_impl(text); }

EvalMode mode_from_string(const std::string& s) {
  if (s == "rational") return EvalMode::kRational;
  if (s == "logfloat") return EvalMode::kLogFloat;
  throw std::invalid_argument("unknown mode '" + s + "' (expected rational|logfloat)");
}

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const CLI::CallForHelp& e) {
    std::cout << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    std::cout << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "rsl: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "rsl: budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "rsl: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace rsl::cli
