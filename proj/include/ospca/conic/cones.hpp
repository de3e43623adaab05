#pragma once

#include "ospca/conic/program.hpp"

namespace ospca::conic {

/// Workspace-backed projections onto the cone product (and its dual). The
/// dual differs from the primal only on Zero slices (dual is free).
class ConeProjector {
 public:
  explicit ConeProjector(const std::vector<ConeSpec>& cones) : cones_(cones) {}

  void project_primal(Vector& v) const { project(v, false); }
  void project_dual(Vector& v) const { project(v, true); }

 private:
  void project(Vector& v, bool dual) const;
  const std::vector<ConeSpec>& cones_;
};

/// Projects the svec'd symmetric block onto the PSD cone in place.
void project_psd_svec(double* data, int side);

/// Projects (t, x) onto the second-order cone in place.
void project_soc(double* data, int len);

/// Projects (a, b, c...) onto the rotated second-order cone in place.
void project_rsoc(double* data, int len);

}  // namespace ospca::conic
