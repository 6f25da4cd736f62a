#pragma once

namespace rsl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rsl
