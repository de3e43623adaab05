#include "ospca/conic/cones.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace ospca::conic {

void project_soc(double* data, int len) {
  const double t = data[0];
  double nx = 0.0;
  for (int i = 1; i < len; ++i) nx += data[i] * data[i];
  nx = std::sqrt(nx);
  if (nx <= t) return;
  if (nx <= -t) {
    for (int i = 0; i < len; ++i) data[i] = 0.0;
    return;
  }
  const double a = 0.5 * (1.0 + t / nx);
  data[0] = a * nx;
  for (int i = 1; i < len; ++i) data[i] *= a;
}

void project_rsoc(double* data, int len) {
  // Orthogonal rotation to (t, s, w) with t=(a+b)/sqrt2, s=(a-b)/sqrt2 turns
  // 2ab >= ||w||^2, a,b >= 0 into ||(s,w)|| <= t.
  constexpr double inv_sqrt2 = 0.7071067811865476;
  const double a = data[0], b = data[1];
  data[0] = (a + b) * inv_sqrt2;
  data[1] = (a - b) * inv_sqrt2;
  project_soc(data, len);
  const double t = data[0], s = data[1];
  data[0] = (t + s) * inv_sqrt2;
  data[1] = (t - s) * inv_sqrt2;
}

void project_psd_svec(double* data, int side) {
  if (side == 1) {
    if (data[0] < 0.0) data[0] = 0.0;
    return;
  }
  thread_local Matrix m;
  matrix_from_svec(data, side, m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector& ev = es.eigenvalues();
  if (ev(0) >= 0.0) return;
  Matrix rec = Matrix::Zero(side, side);
  for (int i = 0; i < side; ++i) {
    if (ev(i) <= 0.0) continue;
    rec.noalias() += ev(i) * es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  }
  svec_from_matrix(rec, data);
}

void ConeProjector::project(Vector& v, bool dual) const {
  int off = 0;
  for (const auto& cone : cones_) {
    const int len = cone_rows(cone);
    double* d = v.data() + off;
    switch (cone.kind) {
      case ConeKind::Zero:
        if (!dual)
          for (int i = 0; i < len; ++i) d[i] = 0.0;
        break;
      case ConeKind::NonNeg:
        for (int i = 0; i < len; ++i)
          if (d[i] < 0.0) d[i] = 0.0;
        break;
      case ConeKind::SecondOrder:
        project_soc(d, len);
        break;
      case ConeKind::RotatedSecondOrder:
        project_rsoc(d, len);
        break;
      case ConeKind::Psd:
        project_psd_svec(d, cone.size);
        break;
    }
    off += len;
  }
}

}  // namespace ospca::conic
