#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli_internal.hpp"
#include "rsl/cli.hpp"
#include "rsl/budgets.hpp"
#include "rsl/energy.hpp"
#include "rsl/errors.hpp"
#include "rsl/oracle.hpp"

namespace rsl::cli {

namespace {

std::string one_line(const Permutation& sigma) {
  std::string s = "[";
  for (int i = 0; i < sigma.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(sigma(i) + 1);  // report in 1-based form
  }
  return s + "]";
}

template <typename Visit>
void for_each_permutation(int k, Visit&& visit) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  do {
    visit(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

struct CheckResult {
  std::string name;
  long witnesses = 0;
  bool ok = true;
  std::string detail;  // first failing witness, or extra stats
};

void print_result(const CheckResult& r) {
  std::printf("  %-38s %8ld %s%s%s\n", r.name.c_str(), r.witnesses, r.ok ? "ok" : "MISMATCH",
              r.detail.empty() ? "" : " ", r.detail.c_str());
}

CheckResult check_commutator_identity(int max_k, bool inject_fault) {
  CheckResult result{"free-index commutator identity"};
  // The fault hook corrupts one defect so the suite provably notices.
  const int fault_k = std::min(max_k, 3);
  for (int k = 1; k <= max_k && result.ok; ++k) {
    long index = 0;
    long fault_index = -1;
    if (inject_fault && k == fault_k) {
      long count = 1;
      for (int i = 2; i <= k; ++i) count *= i;
      fault_index = count - 1;  // last permutation of this size
    }
    for_each_permutation(k, [&](const Permutation& sigma) {
      if (!result.ok) return;
      const int direct = free_index_count_direct(sigma);
      int commutator = free_index_count_commutator(sigma);
      if (index == fault_index) commutator += 1;
      ++index;
      ++result.witnesses;
      if (direct != commutator) {
        result.ok = false;
        std::ostringstream os;
        os << "at k=" << k << " sigma=" << one_line(sigma) << ": direct=" << direct
           << " commutator=" << commutator;
        result.detail = os.str();
      }
    });
  }
  return result;
}

CheckResult check_oracle_vs_closed_form(int max_k) {
  CheckResult result{"trace oracle vs closed form"};
  const int k_cap = std::min(max_k, 7);
  for (long n = 1; n <= 6 && result.ok; ++n) {
    for (int k = 0; k <= k_cap && result.ok; ++k) {
      const BigRat oracle = trace_moment(n, k, max_k);
      const EnergyValue closed = rnn_energy({n, k}, EvalMode::kRational);
      ++result.witnesses;
      if (oracle != *closed.rational) {
        result.ok = false;
        std::ostringstream os;
        os << "at n=" << n << " k=" << k << ": oracle=" << oracle
           << " closed=" << *closed.rational;
        result.detail = os.str();
      }
    }
  }
  return result;
}

CheckResult check_cycle_distribution(int max_m) {
  CheckResult result{"cycle distribution vs polynomial"};
  for (int m = 1; m <= max_m && result.ok; ++m) {
    const CyclePolynomial enumerated = cycle_count_distribution(m, max_m);
    const CyclePolynomial closed = hultman_polynomial(m);
    ++result.witnesses;
    if (!(enumerated == closed)) {
      result.ok = false;
      result.detail = "at m=" + std::to_string(m);
    }
  }
  return result;
}

CheckResult check_bijection(int max_m) {
  CheckResult result{"full-cycle conjugation bijection"};
  for (int k = 1; k <= max_m && result.ok; ++k) {
    ++result.witnesses;
    if (!uniform_cycle_bijection_check(k, max_m)) {
      result.ok = false;
      result.detail = "at k=" + std::to_string(k);
    }
  }
  return result;
}

CheckResult check_mode_agreement() {
  CheckResult result{"logfloat vs rational agreement"};
  const std::vector<long> widths{1, 2, 3, 4, 5, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 200};
  double worst = 0.0;
  for (long n : widths) {
    for (long k = 0; k <= 200 && result.ok; ++k) {
      const EnergyValue exact = rnn_energy({n, k}, EvalMode::kRational);
      const EnergyValue logf = rnn_energy({n, k}, EvalMode::kLogFloat);
      const double rel = std::abs(std::expm1(logf.log_value - exact.log_value));
      worst = std::max(worst, rel);
      ++result.witnesses;
      if (rel > 1e-12) {
        result.ok = false;
        std::ostringstream os;
        os << "at n=" << n << " k=" << k << ": rel dev " << rel;
        result.detail = os.str();
      }
    }
    if (!result.ok) break;
  }
  if (result.ok) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "(max rel dev %.2e)", worst);
    result.detail = buf;
  }
  return result;
}

}  // namespace

int run_verify(const VerifyOptions& opt) {
  if (opt.max_k < 1 || opt.max_m < 1)
    throw std::invalid_argument("verify: budgets must be >= 1");
  const int cap = budgets::enumeration_max();
  if (opt.max_k > cap || opt.max_m > cap) {
    throw BudgetError("verify budgets (max-k=" + std::to_string(opt.max_k) +
                      ", max-m=" + std::to_string(opt.max_m) + ") exceed the enumeration cap " +
                      std::to_string(cap) + "; raise RSL_MAX_K");
  }

  std::printf("verification report (max-k=%d, max-m=%d)\n", opt.max_k, opt.max_m);
  const CheckResult checks[] = {
      check_commutator_identity(opt.max_k, opt.inject_fault),
      check_oracle_vs_closed_form(opt.max_k),
      check_cycle_distribution(opt.max_m),
      check_bijection(opt.max_m),
      check_mode_agreement(),
  };
  bool all_ok = true;
  for (const auto& r : checks) {
    print_result(r);
    all_ok = all_ok && r.ok;
  }
  std::printf("%s\n", all_ok ? "all checks passed" : "verification FAILED");
  return all_ok ? kExitOk : kExitVerificationFailure;
}

}  // namespace rsl::cli
