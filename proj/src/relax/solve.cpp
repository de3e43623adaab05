#include "ospca/relax/solve.hpp"

#include "ospca/allocations.hpp"
#include "ospca/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <iostream>

namespace ospca::relax {

using conic::ConicSolution;
using conic::LinExpr;
using conic::SolveSettings;

RelaxationResult extract_result(const BuiltRelaxation& built, const SymMatrix& sigma,
                                ConicSolution sol) {
  if (!sol.usable()) throw Error("relaxation solve failed");
  RelaxationResult res;
  res.kind = built.kind;
  res.raw_objective = sol.objective;
  res.upper_bound = sol.objective / sigma.trace();
  res.zstar.resize(built.p, built.r);
  for (int t = 0; t < built.r; ++t)
    for (int i = 0; i < built.p; ++i)
      res.zstar(i, t) = std::clamp(sol.x(built.z[t][i]), 0.0, 1.0);
  res.y = built.sym_value(built.y, sol.x);
  for (int t = 0; t < built.r; ++t) res.ycomp.push_back(built.sym_value(built.yt[t], sol.x));
  res.w.resize(built.p);
  for (int i = 0; i < built.p; ++i) res.w(i) = sol.x(built.w[i]);
  res.solver = std::move(sol);
  return res;
}

RelaxationResult solve_with_cuts(BuiltRelaxation built, const SymMatrix& sigma,
                                 const SolveSettings& settings, const CutSettings& cuts) {
  ConicSolution sol = conic::solve(built.prog, settings);
  int added = 0;
  bool stalled = false;
  double best_worst = -std::numeric_limits<double>::infinity();
  double prev_bound = std::numeric_limits<double>::infinity();
  int no_improve = 0;
  for (int round = 0; round < cuts.max_rounds; ++round) {
    double worst = 0.0;
    int worst_count = 0;
    for (const auto& block : built.psd_blocks) {
      Matrix x = block.value(sol.x);
      Eigen::SelfAdjointEigenSolver<Matrix> es(x);
      const double lmin = es.eigenvalues()(0);
      if (lmin < -cuts.eig_tol) {
        ++worst_count;
        worst = std::min(worst, lmin);
        const Vector v = es.eigenvectors().col(0);
        LinExpr cut;
        int idx = 0;
        for (int j = 0; j < block.side; ++j)
          for (int i = j; i < block.side; ++i, ++idx) {
            const double coef = (i == j ? 1.0 : 2.0) * v(i) * v(j);
            LinExpr e = block.lower[idx];
            e *= coef;
            cut += e;
          }
        built.prog.add_nonneg(cut);
        ++added;
      }
    }
    if (worst_count == 0) break;
    // Stall valve: neither the worst eigenvalue nor the bound moved in two
    // consecutive rounds.
    const bool eig_improved = worst > best_worst + 1e-9;
    const bool bound_improved = sol.objective < prev_bound - 1e-9;
    if (!eig_improved && !bound_improved) {
      if (++no_improve >= 2) {
        stalled = true;
        break;
      }
    } else {
      no_improve = 0;
    }
    best_worst = std::max(best_worst, worst);
    prev_bound = std::min(prev_bound, sol.objective);
    conic::WarmStart warm{sol.x, sol.y, sol.s};
    warm.y.conservativeResize(built.prog.num_rows());
    warm.s.conservativeResize(built.prog.num_rows());
    for (int i = static_cast<int>(sol.y.size()); i < built.prog.num_rows(); ++i) {
      warm.y(i) = 0.0;
      warm.s(i) = 0.0;
    }
    sol = conic::solve(built.prog, settings, &warm);
  }
  RelaxationResult res = extract_result(built, sigma, std::move(sol));
  res.cuts_added = added;
  res.stalled_cuts = stalled;
  return res;
}

RelaxationResult upper_bound(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                             RelaxationKind kind) {
  return upper_bound(sigma, budget, r, kind, SolveSettings::for_dim(sigma.dim()));
}

RelaxationResult upper_bound(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                             RelaxationKind kind, const SolveSettings& settings) {
  BuiltRelaxation built = build(sigma, budget, r, kind);
  if (kind == RelaxationKind::SocPermIneqWithCuts)
    return solve_with_cuts(std::move(built), sigma, settings);
  return extract_result(built, sigma, conic::solve(built.prog, settings));
}

std::pair<std::vector<int>, RelaxationResult> worst_case_allocation_bound(
    const SymMatrix& sigma, int k_total, int r, RelaxationKind kind) {
  const auto allocations = enumerate_allocations(k_total, r, sigma.dim());
  if (allocations.empty()) throw BudgetIllPosed("no feasible allocation");
  std::optional<RelaxationResult> best;
  std::vector<int> best_alloc;
  for (const auto& alloc : allocations) {
    RelaxationResult res =
        upper_bound(sigma, SparsityBudget::of_components(alloc), r, kind);
    if (!best || res.upper_bound > best->upper_bound) {
      best = std::move(res);
      best_alloc = alloc;
    }
  }
  return {best_alloc, std::move(*best)};
}

}  // namespace ospca::relax
