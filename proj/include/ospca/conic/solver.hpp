#pragma once

#include "ospca/conic/program.hpp"

namespace ospca::conic {

enum class SolveStatus { Optimal, NearOptimal, Infeasible, Unbounded, IterLimit };

const char* to_string(SolveStatus s);

struct SolveSettings {
  double eps_prim = 1e-7;
  double eps_dual = 1e-7;
  double eps_gap = 1e-7;
  int max_iter = 200000;
  double alpha = 1.6;   // over-relaxation
  int check_interval = 50;
  int ruiz_iters = 10;
  int stall_window = 1000;      // iterations without progress before bailing
  double stall_tol = 1e-12;
  bool verbose = false;

  /// Tolerances per the solver defaults: tight at desk scale, relaxed for
  /// larger instances.
  static SolveSettings for_dim(int p);
  SolveSettings with_eps(double eps) const;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::IterLimit;
  Vector x, y, s;
  double objective = 0.0;       // c^T x (maximization sense)
  double dual_objective = 0.0;  // b^T y
  double primal_infeas = 0.0;
  double dual_infeas = 0.0;
  double rel_gap = 0.0;
  int iterations = 0;
  bool stalled = false;

  bool usable() const {
    return status == SolveStatus::Optimal || status == SolveStatus::NearOptimal ||
           status == SolveStatus::IterLimit;
  }
};

struct WarmStart {
  Vector x, y, s;
};

/// Operator-splitting solve of the homogeneous self-dual embedding, with Ruiz
/// equilibration and over-relaxation. Deterministic for fixed inputs.
ConicSolution solve(const ConicProgram& prog, const SolveSettings& settings = {},
                    const WarmStart* warm = nullptr);

}  // namespace ospca::conic
