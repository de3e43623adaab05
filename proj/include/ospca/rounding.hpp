#pragma once

#include "ospca/relax/solve.hpp"
#include "ospca/types.hpp"

#include <optional>

namespace ospca::rounding {

struct DisjointSupport {
  IntMatrix Z;  // p x r binary, row sums <= 1, column sums >= 1
};

struct RoundOptions {
  std::optional<std::vector<int>> per_component;  // column capacities
  // Swaps between assignments that change <Z, Zstar> by at most this keep the
  // rounding an exact optimizer while improving the resolved objective.
  double tie_tol = 1e-5;
  // The re-solved objective used to rank tie splits; supplied by the caller.
  const Matrix* sigma = nullptr;
};

/// Exact optimizer of  max <Z, Zstar>  over row sums <= 1, column sums >= 1
/// (and <= k_t when capacities are given), total <= k; solved as a min-cost
/// flow. When sigma is supplied, ties between optimizers are resolved toward
/// the split with the larger sum of block eigenvalues.
DisjointSupport round_disjoint(const Matrix& zstar, int k, int r, const RoundOptions& opts = {});

/// Per-component leading eigenvectors of the support blocks, zero padded.
ComponentSet resolve_svd(const SymMatrix& sigma, const DisjointSupport& z);

struct Algorithm1Result {
  ComponentSet solution;
  relax::RelaxationResult relaxation;
  double gap = 0.0;  // (UB - obj) / UB
};

/// Relax, round to a disjoint support, and re-solve each block by
/// eigendecomposition. Per-component budgets restrict the relaxation but not
/// the rounding polytope; a violated budget in the rounded support is
/// reported on stderr.
Algorithm1Result algorithm1(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                            relax::RelaxationKind kind);
Algorithm1Result algorithm1(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                            relax::RelaxationKind kind, const conic::SolveSettings& settings);

}  // namespace ospca::rounding
