#include "ospca/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace ospca {

double leading_eigenvalue(const Matrix& s) {
  if (s.rows() == 1) return s(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(s.rows() - 1);
}

double min_eigenvalue(const Matrix& s) {
  if (s.rows() == 1) return s(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::pair<double, Vector> leading_eigenpair(const Matrix& s) {
  if (s.rows() == 1) return {s(0, 0), Vector::Ones(1)};
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  Vector v = es.eigenvectors().col(s.rows() - 1);
  int pivot = 0;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
  if (v(pivot) < 0) v = -v;
  return {es.eigenvalues()(s.rows() - 1), v};
}

double orthogonality_violation(const Matrix& u) {
  const int r = static_cast<int>(u.cols());
  Matrix g = u.transpose() * u - Matrix::Identity(r, r);
  return g.cwiseAbs().sum();
}

Matrix principal_submatrix(const Matrix& s, const std::vector<int>& idx) {
  const int m = static_cast<int>(idx.size());
  Matrix out(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out(a, b) = s(idx[a], idx[b]);
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  const long long cap = (1LL << 62);
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap;
  }
  return c;
}

}  // namespace ospca
