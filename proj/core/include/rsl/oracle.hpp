#pragma once

#include <map>

#include "rsl/bignum.hpp"
#include "rsl/budgets.hpp"
#include "rsl/permutations.hpp"

namespace rsl {

// Brute-force recomputation of the expected normalized trace of
// (W^k)* W^k for complex Gaussian W, by summing n^{-defect} over all
// pairing permutations. Serves as an independent witness for the
// closed-form energy formula; everything here is exact arithmetic.

// A pairing permutation together with its contraction statistics.
// sigma acts on {0..k-1} and stands for a bijection of the k factor
// positions; free_indices counts the index classes its Kronecker
// constraints leave unconstrained; defect = k + 1 - free_indices.
struct WickPermutation {
  Permutation sigma;
  int free_indices;
  int defect;
};

WickPermutation analyze_wick_permutation(const Permutation& sigma);

// Counts surviving index classes by explicitly merging the 2k constraint
// symbols with a disjoint-set structure.
int free_index_count_direct(const Permutation& sigma);

// Same count via the cycle number of the commutator of the full cycle
// with the extension of sigma fixing 0.
int free_index_count_commutator(const Permutation& sigma);

// Sum over all sigma in S_k of n^{-defect(sigma)}, as an exact rational.
// k = 0 returns 1 (normalized trace of the identity). Work grows like k!,
// so k is capped by `budget` (default: budgets::enumeration_max()).
BigRat trace_moment(long n, int k);
BigRat trace_moment(long n, int k, int budget);

// Distribution of cycle counts, either tallied by enumeration or expanded
// from the factorial closed form; the two must agree coefficientwise.
struct CyclePolynomial {
  std::map<int, BigInt> multiplicity;  // cycle count -> number of full cycles
  BigInt total() const;
  bool operator==(const CyclePolynomial&) const = default;
};

// Tallies the cycle count of inverse(full_cycle) * c over all (m+1)-cycles
// c, enumerated as conjugates of the full cycle by the stabilizer of 0
// (m! conjugations instead of filtering (m+1)! permutations).
CyclePolynomial cycle_count_distribution(int m);
CyclePolynomial cycle_count_distribution(int m, int budget);

// Exact expansion of (rising_{m+2}(t) - falling_{m+2}(t)) / ((m+1)(m+2));
// the coefficient of t^c is the multiplicity of cycle count c above.
CyclePolynomial hultman_polynomial(int m);

// Verifies that conjugating the full cycle by the k! stabilizer elements
// of 0 yields k! distinct (k+1)-cycles, i.e. the enumeration used by
// cycle_count_distribution covers every full cycle exactly once.
bool uniform_cycle_bijection_check(int k);
bool uniform_cycle_bijection_check(int k, int budget);

}  // namespace rsl
