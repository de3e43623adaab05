#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ospca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct ZeroVarianceColumn : Error {
  int column;
  explicit ZeroVarianceColumn(int col)
      : Error("column " + std::to_string(col) + " has zero sample variance"), column(col) {}
};
struct InfeasibleOverlap : Error {
  using Error::Error;
};
struct BudgetIllPosed : Error {
  using Error::Error;
};
struct TooLargeToEnumerate : Error {
  using Error::Error;
};
struct InfeasibleRounding : Error {
  using Error::Error;
};
struct EmptyActiveSet : Error {
  using Error::Error;
};
struct NumericalBreakdown : Error {
  using Error::Error;
};
struct NotPositiveSemidefinite : Error {
  using Error::Error;
};

enum class MatrixKind { Covariance, Correlation };

/// Dense symmetric matrix with PSD-within-tolerance validation. Stores the
/// symmetrized entries (A + A^T)/2 so entries(i,j) == entries(j,i) exactly.
class SymMatrix {
 public:
  SymMatrix(Matrix entries, MatrixKind kind);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }
  MatrixKind kind() const { return kind_; }
  double trace() const { return m_.trace(); }
  double operator()(int i, int j) const { return m_(i, j); }

  // PSD slack tolerance, relative to the trace.
  static constexpr double kPsdTol = 1e-7;

 private:
  Matrix m_;
  MatrixKind kind_;
};

/// Raw n x p data matrix (rows are samples).
struct Dataset {
  Matrix values;
  int n() const { return static_cast<int>(values.rows()); }
  int p() const { return static_cast<int>(values.cols()); }
};

/// Total and/or per-component cardinality budgets.
struct SparsityBudget {
  std::optional<int> total;
  std::optional<std::vector<int>> per_component;

  static SparsityBudget of_total(int k) { return {k, std::nullopt}; }
  static SparsityBudget of_components(std::vector<int> ks);

  bool has_per_component() const { return per_component.has_value(); }
  int k_total() const;
  // Throws BudgetIllPosed unless the budget is consistent and well-posed for
  // a p-dimensional problem with r components.
  void validate(int p, int r) const;
};

/// A feasible (or near-feasible) set of sparse components. U is p x r with
/// unit-norm columns supported on Z.
struct ComponentSet {
  Matrix U;
  IntMatrix Z;
  double objective = 0.0;          // <U U^T, Sigma>
  double variance_fraction = 0.0;  // objective / tr(Sigma)
  double violation = 0.0;          // ||U^T U - I||_1 (entrywise)
};

/// Computes objective, variance fraction and orthogonality violation of U
/// against sigma and derives Z from the support of U.
ComponentSet make_component_set(const Matrix& U, const SymMatrix& sigma);

}  // namespace ospca
