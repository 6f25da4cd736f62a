#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "rsl/energy.hpp"
#include "rsl/errors.hpp"
#include "rsl/oracle.hpp"

using rsl::BigInt;
using rsl::BigRat;
using rsl::CyclePolynomial;
using rsl::Permutation;

namespace {

template <typename Visit>
void for_each_permutation(int k, Visit&& visit) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  do {
    visit(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

long factorial_long(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("permutation basics") {
  CHECK_THROWS_AS(Permutation({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 2}), std::invalid_argument);
  const Permutation cycle = Permutation::full_cycle(4);
  CHECK(cycle.cycle_count() == 1);
  CHECK(compose(cycle, cycle.inverse()) == Permutation::identity(4));
  // compose applies the right factor first
  const Permutation f({1, 0, 2});
  const Permutation g({2, 1, 0});
  CHECK(compose(f, g)(0) == f(g(0)));
}

TEST_CASE("free index counts: worked examples") {
  const Permutation identity2 = Permutation::identity(2);
  const Permutation swap2({1, 0});
  CHECK(rsl::free_index_count_direct(identity2) == 3);
  CHECK(rsl::free_index_count_direct(swap2) == 1);
  CHECK(rsl::free_index_count_commutator(identity2) == 3);
  CHECK(rsl::free_index_count_commutator(swap2) == 1);
  for (int k = 1; k <= 6; ++k) {
    CHECK(rsl::free_index_count_direct(Permutation::identity(k)) == k + 1);
    CHECK(rsl::free_index_count_commutator(Permutation::identity(k)) == k + 1);
  }
}

TEST_CASE("free index counts: the two routes agree on all of S_k, k<=7") {
  for (int k = 1; k <= 7; ++k) {
    long count = 0;
    for_each_permutation(k, [&](const Permutation& sigma) {
      REQUIRE(rsl::free_index_count_direct(sigma) ==
              rsl::free_index_count_commutator(sigma));
      ++count;
    });
    CHECK(count == factorial_long(k));
  }
}

TEST_CASE("defect statistics") {
  for (int k = 1; k <= 6; ++k) {
    int zero_defect = 0;
    for_each_permutation(k, [&](const Permutation& sigma) {
      const auto wick = rsl::analyze_wick_permutation(sigma);
      REQUIRE(wick.defect >= 0);
      REQUIRE(wick.defect <= k);
      REQUIRE(wick.free_indices == k + 1 - wick.defect);
      if (wick.defect == 0) ++zero_defect;
    });
    // only the identity survives the infinite-width limit
    CHECK(zero_defect == 1);
    CHECK(rsl::analyze_wick_permutation(Permutation::identity(k)).defect == 0);
  }
}

TEST_CASE("trace moment oracle") {
  for (long n : {1L, 2L, 7L}) CHECK(rsl::trace_moment(n, 1) == BigRat(1));
  CHECK(rsl::trace_moment(5, 0) == BigRat(1));
  CHECK(rsl::trace_moment(2, 2) == BigRat(5, 4));

  for (long n = 1; n <= 6; ++n) {
    for (int k = 0; k <= 7; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const auto closed = rsl::rnn_energy({n, k}, rsl::EvalMode::kRational);
      REQUIRE(rsl::trace_moment(n, k) == *closed.rational);
    }
  }

  CHECK_THROWS_AS((void)rsl::trace_moment(2, 9), rsl::BudgetError);
  CHECK_THROWS_AS((void)rsl::trace_moment(0, 1), std::invalid_argument);

  // the enumeration cap is configuration
  ::setenv("RSL_MAX_K", "9", 1);
  CHECK(rsl::trace_moment(1, 9) == BigRat(362880));  // width 1: every sigma contributes 1
  ::unsetenv("RSL_MAX_K");
  CHECK_THROWS_AS((void)rsl::trace_moment(1, 9), rsl::BudgetError);
}

TEST_CASE("cycle count distribution") {
  const auto m1 = rsl::cycle_count_distribution(1);
  REQUIRE(m1.multiplicity.size() == 1);
  CHECK(m1.multiplicity.at(2) == 1);

  const auto m2 = rsl::cycle_count_distribution(2);
  REQUIRE(m2.multiplicity.size() == 2);
  CHECK(m2.multiplicity.at(3) == 1);
  CHECK(m2.multiplicity.at(1) == 1);

  for (int m = 1; m <= 7; ++m) {
    const auto dist = rsl::cycle_count_distribution(m);
    CHECK(dist.total() == BigInt(factorial_long(m)));
    // observed parity structure: every cycle count is congruent to m+1 mod 2
    for (const auto& [cycles, count] : dist.multiplicity) {
      CHECK(cycles % 2 == (m + 1) % 2);
      CHECK(count > 0);
    }
  }
  CHECK_THROWS_AS((void)rsl::cycle_count_distribution(9), rsl::BudgetError);
  CHECK_THROWS_AS((void)rsl::cycle_count_distribution(0), std::invalid_argument);
}

TEST_CASE("factorial closed form matches the enumerated distribution") {
  const auto h1 = rsl::hultman_polynomial(1);  // t^2
  REQUIRE(h1.multiplicity.size() == 1);
  CHECK(h1.multiplicity.at(2) == 1);

  const auto h2 = rsl::hultman_polynomial(2);  // t^3 + t
  REQUIRE(h2.multiplicity.size() == 2);
  CHECK(h2.multiplicity.at(3) == 1);
  CHECK(h2.multiplicity.at(1) == 1);

  for (int m = 1; m <= 7; ++m) {
    CAPTURE(m);
    REQUIRE(rsl::hultman_polynomial(m) == rsl::cycle_count_distribution(m));
  }
}

TEST_CASE("conjugation by the stabilizer covers all full cycles exactly once") {
  CHECK(rsl::uniform_cycle_bijection_check(1));
  CHECK(rsl::uniform_cycle_bijection_check(2));
  for (int k = 3; k <= 6; ++k) CHECK(rsl::uniform_cycle_bijection_check(k));
  CHECK_THROWS_AS((void)rsl::uniform_cycle_bijection_check(9), rsl::BudgetError);
}
