#include "rsl/budgets.hpp"

#include <cstdlib>
#include <string>

namespace rsl::budgets {

namespace {

long env_long(const char* name, long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0) return fallback;
  return v;
}

}  // namespace

int enumeration_max() {
  return static_cast<int>(env_long("RSL_MAX_K", kDefaultEnumerationMax));
}

long rational_depth_max() {
  return env_long("RSL_MAX_BIGNUM_K", kDefaultRationalDepthMax);
}

}  // namespace rsl::budgets
