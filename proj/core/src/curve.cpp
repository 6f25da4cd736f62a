#include "rsl/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace rsl {

std::string to_string(ModelKind model) {
  return model == ModelKind::kRnn ? "rnn" : "lru";
}

std::string to_string(CurveSource source) {
  switch (source) {
    case CurveSource::kExact: return "exact";
    case CurveSource::kMc: return "mc";
    case CurveSource::kAsymptotic: return "asymptotic";
  }
  throw std::logic_error("unreachable");
}

ModelKind model_from_string(const std::string& s) {
  if (s == "rnn") return ModelKind::kRnn;
  if (s == "lru") return ModelKind::kLru;
  throw std::invalid_argument("unknown model '" + s + "' (expected rnn|lru)");
}

CurveSource source_from_string(const std::string& s) {
  if (s == "exact") return CurveSource::kExact;
  if (s == "mc") return CurveSource::kMc;
  if (s == "asymptotic") return CurveSource::kAsymptotic;
  throw std::invalid_argument("unknown source '" + s + "'");
}

void EnergyCurve::validate() const {
  if (n < 1) throw std::invalid_argument("EnergyCurve: n must be >= 1");
  const bool mc = source == CurveSource::kMc;
  long prev_depth = -1;
  bool first = true;
  for (const auto& row : rows) {
    if (!first && row.depth <= prev_depth)
      throw std::invalid_argument("EnergyCurve: rows must be strictly sorted by depth");
    prev_depth = row.depth;
    first = false;
    if (row.stderr_value.has_value() != mc)
      throw std::invalid_argument("EnergyCurve: stderr must be present exactly on mc rows");
    if (!mc && !std::isfinite(row.log_value))
      throw std::invalid_argument("EnergyCurve: log_value must be finite on exact/asymptotic rows");
  }
}

}  // namespace rsl
