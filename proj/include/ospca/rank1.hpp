#pragma once

#include "ospca/conic/solver.hpp"
#include "ospca/types.hpp"

namespace ospca::rank1 {

struct Rank1Solution {
  std::vector<int> support;  // sorted
  Vector u;                  // unit norm, zero off support
  double value = 0.0;        // u^T S u = leading eigenvalue of the support block
};

enum class Policy { Auto, Exact, RelaxRound, GreedySwaps };

Policy policy_from_string(const std::string& name);

/// Exhaustive enumeration of k-subsets; ties resolved toward the
/// lexicographically smallest support. Guarded by an enumeration cap.
Rank1Solution exact_rank1(const Matrix& s, int k);

/// Forward selection on the leading eigenvalue, optionally followed by a
/// best-improvement 1-swap local search.
Rank1Solution greedy_rank1(const Matrix& s, int k, bool swaps);

/// Solves the single-component strengthened relaxation, keeps the k largest
/// fractional support scores (ties: larger lifted diagonal, then lower
/// index), and re-solves the restricted block exactly.
Rank1Solution relax_round_rank1(const Matrix& s, int k);
Rank1Solution relax_round_rank1(const Matrix& s, int k, const conic::SolveSettings& settings);

/// Policy dispatch: exact below the enumeration threshold, otherwise the
/// better of relax-and-round and greedy-with-swaps.
Rank1Solution solve_rank1(const Matrix& s, int k, Policy policy = Policy::Auto);

/// Enumeration guards.
inline constexpr long long kEnumerateHardCap = 2'000'000;
inline constexpr long long kAutoExactCap = 100'000;

}  // namespace ospca::rank1
