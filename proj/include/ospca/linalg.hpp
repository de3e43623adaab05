#pragma once

#include "ospca/types.hpp"

namespace ospca {

/// Largest eigenvalue of a symmetric matrix (tridiagonalization path).
double leading_eigenvalue(const Matrix& s);

double min_eigenvalue(const Matrix& s);

/// Leading eigenpair with a deterministic sign convention: the entry of
/// largest magnitude (lowest index on ties) is made positive.
std::pair<double, Vector> leading_eigenpair(const Matrix& s);

/// Entrywise l1 norm of U^T U - I.
double orthogonality_violation(const Matrix& u);

/// Submatrix of s restricted to the given row/column indices.
Matrix principal_submatrix(const Matrix& s, const std::vector<int>& idx);

/// n choose k with saturation at 2^62 to avoid overflow in guards.
long long binomial(int n, int k);

}  // namespace ospca
