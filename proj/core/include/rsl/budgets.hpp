#pragma once

namespace rsl::budgets {

// Permutation-enumeration cap for the brute-force oracle (k! work).
// Override with RSL_MAX_K.
int enumeration_max();

// Depth cap for exact rational evaluation (bignum sizes grow like
// depth*log(n) digits). Override with RSL_MAX_BIGNUM_K.
long rational_depth_max();

inline constexpr int kDefaultEnumerationMax = 8;
inline constexpr long kDefaultRationalDepthMax = 10000;

// Cap on n * t_max * samples for a Monte Carlo run.
inline constexpr long long kSimulationWorkMax = 1'000'000'000'000LL;

}  // namespace rsl::budgets
