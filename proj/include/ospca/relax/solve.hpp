#pragma once

#include "ospca/conic/solver.hpp"
#include "ospca/relax/builders.hpp"

namespace ospca::relax {

/// Upper bound plus the fractional support and lifted blocks backing it.
struct RelaxationResult {
  RelaxationKind kind = RelaxationKind::BasicExtended;
  double upper_bound = 0.0;  // normalized by tr(Sigma)
  double raw_objective = 0.0;
  Matrix zstar;              // p x r, clipped to [0,1]
  Matrix y;                  // aggregate p x p
  std::vector<Matrix> ycomp; // per-component lifted matrices
  Vector w;
  int cuts_added = 0;
  bool stalled_cuts = false;
  conic::ConicSolution solver;
};

struct CutSettings {
  int max_rounds = 50;
  double eig_tol = 1e-4;
};

RelaxationResult extract_result(const BuiltRelaxation& built, const SymMatrix& sigma,
                                conic::ConicSolution sol);

/// Solves a minor-form program and restores violated PSD blocks by adding one
/// eigenvector cut per block and round, warm-starting each re-solve.
RelaxationResult solve_with_cuts(BuiltRelaxation built, const SymMatrix& sigma,
                                 const conic::SolveSettings& settings,
                                 const CutSettings& cuts = {});

/// Builds and solves the requested relaxation (running the cut loop when the
/// kind asks for it) and normalizes the bound by tr(Sigma).
RelaxationResult upper_bound(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                             RelaxationKind kind);
RelaxationResult upper_bound(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                             RelaxationKind kind, const conic::SolveSettings& settings);

/// Worst-case (largest) bound over all nonincreasing allocations of k_total.
std::pair<std::vector<int>, RelaxationResult> worst_case_allocation_bound(
    const SymMatrix& sigma, int k_total, int r, RelaxationKind kind);

}  // namespace ospca::relax
