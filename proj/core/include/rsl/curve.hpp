#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rsl {

enum class ModelKind { kRnn, kLru };
enum class CurveSource { kExact, kMc, kAsymptotic };

std::string to_string(ModelKind model);
std::string to_string(CurveSource source);
ModelKind model_from_string(const std::string& s);
CurveSource source_from_string(const std::string& s);

struct CurveRow {
  long depth = 0;
  double value = 0.0;
  double log_value = 0.0;
  std::optional<double> stderr_value;  // present iff the curve is Monte Carlo
  std::vector<std::string> flags;      // e.g. "nonfinite=3"
};

// One energy-vs-depth series with enough metadata to regenerate it.
struct EnergyCurve {
  long n = 0;
  ModelKind model = ModelKind::kRnn;
  CurveSource source = CurveSource::kExact;
  std::map<std::string, std::string> metadata;  // seed, field, samples, version, ...
  std::vector<CurveRow> rows;

  // Rows strictly sorted by depth; stderr present exactly on mc rows;
  // log_value finite on exact/asymptotic rows. Throws std::invalid_argument.
  void validate() const;
};

}  // namespace rsl
