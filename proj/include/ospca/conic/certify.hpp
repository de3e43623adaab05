#pragma once

#include "ospca/conic/solver.hpp"

namespace ospca::conic {

/// Residuals recomputed from scratch (independent of the solver's internal
/// bookkeeping): worst primal cone violation, equality residual, dual cone
/// violation of y, dual equality residual, and the duality gap.
struct CertifyReport {
  double max_cone_violation = 0.0;   // distance-like violation of b - Ax from K
  double equality_residual = 0.0;    // zero-cone rows of b - Ax
  double dual_cone_violation = 0.0;  // violation of y from K*
  double dual_residual = 0.0;        // || A^T y - c ||_inf (max sense)
  double duality_gap = 0.0;          // |c^T x - b^T y|
};

CertifyReport certify(const ConicProgram& prog, const ConicSolution& sol);

/// Max violation of b - Ax from the cone product for a bare point (used by
/// the feasibility oracles in tests as well).
double primal_cone_violation(const ConicProgram& prog, const Vector& x, double* eq_residual);

}  // namespace ospca::conic
