#include "ospca/conic/certify.hpp"

#include "ospca/linalg.hpp"

#include <cmath>

namespace ospca::conic {

namespace {

// Violation measures written directly from the cone definitions; no shared
// code with the projection routines.
double slice_violation(const ConeSpec& cone, const double* d, bool dual, double* eq_out) {
  const int len = cone_rows(cone);
  switch (cone.kind) {
    case ConeKind::Zero: {
      if (dual) return 0.0;  // dual of {0} is everything
      double v = 0.0;
      for (int i = 0; i < len; ++i) v = std::max(v, std::abs(d[i]));
      if (eq_out) *eq_out = std::max(*eq_out, v);
      return 0.0;
    }
    case ConeKind::NonNeg: {
      double v = 0.0;
      for (int i = 0; i < len; ++i) v = std::max(v, -d[i]);
      return std::max(0.0, v);
    }
    case ConeKind::SecondOrder: {
      double nx = 0.0;
      for (int i = 1; i < len; ++i) nx += d[i] * d[i];
      return std::max(0.0, std::sqrt(nx) - d[0]);
    }
    case ConeKind::RotatedSecondOrder: {
      const double a = d[0], b = d[1];
      double nc = 0.0;
      for (int i = 2; i < len; ++i) nc += d[i] * d[i];
      double v = std::max({0.0, -a, -b});
      // scale-balanced gap between ||c||^2 and 2ab
      const double gap = nc - 2.0 * a * b;
      if (gap > 0.0) v = std::max(v, gap / (1.0 + std::sqrt(nc)));
      return v;
    }
    case ConeKind::Psd: {
      Matrix m;
      matrix_from_svec(d, cone.size, m);
      return std::max(0.0, -ospca::min_eigenvalue(m));
    }
  }
  return 0.0;
}

double cone_violation(const ConicProgram& prog, const Vector& v, bool dual, double* eq_out) {
  double worst = 0.0;
  int off = 0;
  for (const auto& cone : prog.cones()) {
    worst = std::max(worst, slice_violation(cone, v.data() + off, dual, eq_out));
    off += cone_rows(cone);
  }
  return worst;
}

}  // namespace

double primal_cone_violation(const ConicProgram& prog, const Vector& x, double* eq_residual) {
  Vector s = Eigen::Map<const Vector>(prog.b().data(), prog.num_rows()) - prog.a_sparse() * x;
  if (eq_residual) *eq_residual = 0.0;
  return cone_violation(prog, s, false, eq_residual);
}

CertifyReport certify(const ConicProgram& prog, const ConicSolution& sol) {
  CertifyReport rep;
  rep.max_cone_violation = primal_cone_violation(prog, sol.x, &rep.equality_residual);
  rep.dual_cone_violation = cone_violation(prog, sol.y, true, nullptr);
  Vector dres = prog.a_sparse().transpose() * sol.y - prog.c_dense();
  rep.dual_residual = dres.size() ? dres.cwiseAbs().maxCoeff() : 0.0;
  rep.duality_gap = std::abs(prog.c_dense().dot(sol.x) -
                             Eigen::Map<const Vector>(prog.b().data(), prog.num_rows()).dot(sol.y));
  return rep;
}

}  // namespace ospca::conic
