#include "rsl/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "rsl/errors.hpp"

namespace rsl {

namespace {

void check_enumeration_budget(int k, int budget, const char* what) {
  if (k > budget) {
    throw BudgetError(std::string(what) + " capped at " + std::to_string(budget) +
                      " (got " + std::to_string(k) + "); raise RSL_MAX_K to enumerate more");
  }
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int size) : parent(size) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Extension of sigma (on {0..k-1}, standing for positions 1..k) to
// {0..k} fixing 0.
Permutation extend_fixing_zero(const Permutation& sigma) {
  const int k = sigma.size();
  std::vector<int> img(k + 1);
  img[0] = 0;
  for (int i = 1; i <= k; ++i) img[i] = sigma(i - 1) + 1;
  return Permutation(std::move(img));
}

template <typename Visit>
void for_each_permutation(int k, Visit&& visit) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  do {
    visit(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

}  // namespace

int free_index_count_direct(const Permutation& sigma) {
  const int k = sigma.size();
  if (k < 1) throw std::invalid_argument("free index count needs k >= 1");
  // Symbols 0..k are the chain indices of the conjugated factors; k+j
  // (j = 1..k-1) are the interior indices of the plain factors, whose
  // boundary entries alias the chain endpoints.
  const auto plain_symbol = [k](int j) { return (j == 0) ? 0 : (j == k) ? k : k + j; };
  DisjointSet dsu(2 * k);
  for (int r = 1; r <= k; ++r) {
    const int s = sigma(r - 1) + 1;  // matched plain-factor position, 1-based
    dsu.unite(r - 1, plain_symbol(s - 1));
    dsu.unite(r, plain_symbol(s));
  }
  std::set<int> roots;
  for (int x = 0; x < 2 * k; ++x) roots.insert(dsu.find(x));
  return static_cast<int>(roots.size());
}

int free_index_count_commutator(const Permutation& sigma) {
  const int k = sigma.size();
  if (k < 1) throw std::invalid_argument("free index count needs k >= 1");
  const Permutation ext = extend_fixing_zero(sigma);
  const Permutation tau = Permutation::full_cycle(k + 1);
  const Permutation comm =
      compose(tau.inverse(), compose(ext.inverse(), compose(tau, ext)));
  return comm.cycle_count();
}

WickPermutation analyze_wick_permutation(const Permutation& sigma) {
  const int free = free_index_count_commutator(sigma);
  return WickPermutation{sigma, free, sigma.size() + 1 - free};
}

BigRat trace_moment(long n, int k) { return trace_moment(n, k, budgets::enumeration_max()); }

BigRat trace_moment(long n, int k, int budget) {
  if (n < 1) throw std::invalid_argument("trace_moment: width n must be >= 1");
  if (k < 0) throw std::invalid_argument("trace_moment: power k must be >= 0");
  check_enumeration_budget(k, budget, "trace moment enumeration");
  if (k == 0) return BigRat(1);

  // Histogram defects, then form sum_r count[r] * n^(k-r) over n^k; cheaper
  // than one rational addition per permutation.
  std::vector<BigInt> defect_count(static_cast<std::size_t>(k) + 1, BigInt(0));
  for_each_permutation(k, [&](const Permutation& sigma) {
    ++defect_count[static_cast<std::size_t>(k + 1 - free_index_count_commutator(sigma))];
  });
  const BigInt width(n);
  BigInt num(0);
  for (int r = 0; r <= k; ++r) {
    if (defect_count[r] == 0) continue;
    num += defect_count[r] * pow(width, static_cast<unsigned>(k - r));
  }
  return BigRat(num, pow(width, static_cast<unsigned>(k)));
}

BigInt CyclePolynomial::total() const {
  BigInt t(0);
  for (const auto& [cycles, count] : multiplicity) t += count;
  return t;
}

CyclePolynomial cycle_count_distribution(int m) {
  // One less than the trace-moment cap: both enumerations do factorial
  // work, but the distribution also materializes every conjugate.
  return cycle_count_distribution(m, budgets::enumeration_max() - 1);
}

CyclePolynomial cycle_count_distribution(int m, int budget) {
  if (m < 1) throw std::invalid_argument("cycle_count_distribution: m must be >= 1");
  check_enumeration_budget(m, budget, "cycle distribution enumeration");
  const Permutation tau = Permutation::full_cycle(m + 1);
  const Permutation tau_inv = tau.inverse();
  CyclePolynomial dist;
  // Each (m+1)-cycle arises exactly once as a conjugate of tau by a
  // permutation fixing 0 (see uniform_cycle_bijection_check).
  for_each_permutation(m, [&](const Permutation& stab) {
    const Permutation pi = extend_fixing_zero(stab);
    const Permutation cyc = compose(pi.inverse(), compose(tau, pi));
    dist.multiplicity[compose(tau_inv, cyc).cycle_count()] += 1;
  });
  return dist;
}

CyclePolynomial hultman_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("hultman_polynomial: m must be >= 1");
  // Expand t(t+1)...(t+m+1) and t(t-1)...(t-m-1) as coefficient vectors.
  const int p = m + 2;
  std::vector<BigInt> rise{BigInt(0), BigInt(1)};  // starts as the monomial t
  std::vector<BigInt> fall = rise;
  for (int j = 1; j < p; ++j) {
    rise.push_back(BigInt(0));
    fall.push_back(BigInt(0));
    for (int d = static_cast<int>(rise.size()) - 1; d >= 1; --d) {
      rise[d] = rise[d - 1] + j * rise[d];
      fall[d] = fall[d - 1] - j * fall[d];
    }
    rise[0] *= j;
    fall[0] *= -j;
  }
  const BigInt scale = BigInt(m + 1) * (m + 2);
  CyclePolynomial poly;
  for (std::size_t d = 0; d < rise.size(); ++d) {
    BigInt c = rise[d] - fall[d];
    if (c == 0) continue;
    BigInt q, r;
    divide_qr(c, scale, q, r);
    if (r != 0) throw std::logic_error("hultman_polynomial: coefficient not divisible");
    poly.multiplicity[static_cast<int>(d)] = q;
  }
  return poly;
}

bool uniform_cycle_bijection_check(int k) {
  return uniform_cycle_bijection_check(k, budgets::enumeration_max() - 1);
}

bool uniform_cycle_bijection_check(int k, int budget) {
  if (k < 1) throw std::invalid_argument("uniform_cycle_bijection_check: k must be >= 1");
  check_enumeration_budget(k, budget, "bijection enumeration");
  const Permutation tau = Permutation::full_cycle(k + 1);
  std::set<std::vector<int>> images;
  bool all_full_cycles = true;
  std::size_t stabilizer_size = 0;
  for_each_permutation(k, [&](const Permutation& stab) {
    ++stabilizer_size;
    const Permutation pi = extend_fixing_zero(stab);
    const Permutation cyc = compose(pi.inverse(), compose(tau, pi));
    all_full_cycles = all_full_cycles && cyc.cycle_count() == 1;
    images.insert(cyc.image());
  });
  // Injective into the (k+1)-cycles and hitting all k! of them.
  return all_full_cycles && images.size() == stabilizer_size;
}

}  // namespace rsl
