#pragma once

#include "ospca/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ospca {

/// Spiked instance: noise Gram matrix plus two sigma-weighted binary spikes
/// with a prescribed support overlap fraction.
struct SpikedInstance {
  int p = 0;
  double sigma = 0.0;
  int k_true = 0;
  double q = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> support1, support2;  // sorted index sets
  Matrix matrix;                        // U^T U + sigma (x1 x1^T + x2 x2^T)

  SymMatrix sym() const { return SymMatrix(matrix, MatrixKind::Covariance); }
};

/// Sample covariance (1/(n-1)) A^T A of the centered data; per-column scaling
/// by the sample standard deviation when standardize is set, in which case
/// the result is a correlation matrix.
SymMatrix correlation_from_data(const Dataset& data, bool standardize);

SpikedInstance generate_spiked(int p, double sigma, int k_true, double q, std::uint64_t seed);

double variance_explained(const ComponentSet& sol, const SymMatrix& sigma);

/// The classical 13-variable pitprops correlation matrix (bundled asset).
SymMatrix pitprops();

/// CSV matrix reader: p rows x p cols, no header. Asymmetry beyond 1e-8 is
/// repaired by averaging with a warning on stderr.
SymMatrix read_matrix_csv(const std::string& path, MatrixKind kind);

/// CSV dataset reader: n rows x p cols, optional non-numeric header line.
Dataset read_dataset_csv(const std::string& path);

void write_matrix_csv(std::ostream& os, const Matrix& m);

}  // namespace ospca
