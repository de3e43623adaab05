#include "ospca/types.hpp"

#include "ospca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ospca {

SymMatrix::SymMatrix(Matrix entries, MatrixKind kind) : kind_(kind) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw DimensionMismatch("symmetric matrix must be square and non-empty");
  m_ = 0.5 * (entries + entries.transpose()).eval();
  if (kind_ == MatrixKind::Correlation) {
    for (int i = 0; i < m_.rows(); ++i)
      if (std::abs(m_(i, i) - 1.0) > 1e-9)
        throw Error("correlation matrix must have unit diagonal");
  }
  const double tol = kPsdTol * std::max(1.0, m_.trace());
  if (min_eigenvalue(m_) < -tol)
    throw NotPositiveSemidefinite("matrix is not positive semidefinite within tolerance");
}

SparsityBudget SparsityBudget::of_components(std::vector<int> ks) {
  SparsityBudget b;
  b.per_component = std::move(ks);
  b.total = std::accumulate(b.per_component->begin(), b.per_component->end(), 0);
  return b;
}

int SparsityBudget::k_total() const {
  if (total) return *total;
  return std::accumulate(per_component->begin(), per_component->end(), 0);
}

void SparsityBudget::validate(int p, int r) const {
  if (!total && !per_component) throw BudgetIllPosed("empty sparsity budget");
  if (per_component) {
    if (static_cast<int>(per_component->size()) != r)
      throw BudgetIllPosed("per-component budget length must equal the number of components");
    for (int kt : *per_component) {
      if (kt < 1 || kt > p) throw BudgetIllPosed("each per-component budget must lie in [1, p]");
    }
    if (total && *total != std::accumulate(per_component->begin(), per_component->end(), 0))
      throw BudgetIllPosed("total budget does not match the per-component budgets");
  } else {
    if (*total <= r || *total >= p * r)
      throw BudgetIllPosed("total budget must satisfy r < k < p*r");
  }
}

ComponentSet make_component_set(const Matrix& U, const SymMatrix& sigma) {
  if (U.rows() != sigma.dim()) throw DimensionMismatch("loadings/matrix dimension mismatch");
  ComponentSet cs;
  cs.U = U;
  cs.Z = IntMatrix::Zero(U.rows(), U.cols());
  for (int i = 0; i < U.rows(); ++i)
    for (int t = 0; t < U.cols(); ++t) cs.Z(i, t) = U(i, t) != 0.0 ? 1 : 0;
  cs.objective = (U.transpose() * sigma.entries() * U).trace();
  cs.variance_fraction = cs.objective / sigma.trace();
  cs.violation = orthogonality_violation(U);
  return cs;
}

}  // namespace ospca
