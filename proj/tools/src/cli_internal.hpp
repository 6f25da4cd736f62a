#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsl/energy.hpp"

namespace rsl::cli {

struct VerifyOptions {
  int max_k = 7;
  int max_m = 7;
  bool inject_fault = false;  // test hook: corrupts one defect count
};
int run_verify(const VerifyOptions& opt);

struct FigureOptions {
  std::string figure;
  std::vector<long> n_values;   // empty -> per-figure default
  long samples = 10000;
  std::uint64_t seed = 0;
  std::vector<double> c_grid;   // empty -> 0, 0.25, ..., 4
  std::string out_dir = ".";
  int workers = 1;
};
int run_figure(const FigureOptions& opt);

// "a..b" inclusive
DepthRange parse_depth_range(const std::string& text);

EvalMode mode_from_string(const std::string& s);

}  // namespace rsl::cli
