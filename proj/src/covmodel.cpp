#include "ospca/covmodel.hpp"

#include "ospca/linalg.hpp"
#include "ospca/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ospca {

extern const char* kPitpropsCsv;  // generated from data/pitprops.csv

SymMatrix correlation_from_data(const Dataset& data, bool standardize) {
  const int n = data.n(), p = data.p();
  if (n < 2) throw Error("need at least two samples");
  Matrix a = data.values;
  const Vector mean = a.colwise().mean();
  a.rowwise() -= mean.transpose();
  if (standardize) {
    for (int j = 0; j < p; ++j) {
      const double sd = std::sqrt(a.col(j).squaredNorm() / (n - 1));
      if (sd == 0.0) throw ZeroVarianceColumn(j);
      a.col(j) /= sd;
    }
  }
  Matrix s = (a.transpose() * a) / double(n - 1);
  return SymMatrix(std::move(s), standardize ? MatrixKind::Correlation : MatrixKind::Covariance);
}

SpikedInstance generate_spiked(int p, double sigma, int k_true, double q, std::uint64_t seed) {
  if (p < 2 || k_true < 1 || k_true > p) throw Error("invalid spiked dimensions");
  const double qk = q * k_true;
  const int overlap = static_cast<int>(std::llround(qk));
  if (std::abs(qk - overlap) > 1e-9 || overlap < 0 || overlap > k_true)
    throw InfeasibleOverlap("overlap fraction times support size must be an integer");
  if (p < 2 * k_true - overlap)
    throw InfeasibleOverlap("supports with the requested overlap do not fit");

  SplitRng root(seed);
  SplitRng noise_rng = root.split(0);
  SplitRng support_rng = root.split(1);

  Matrix u(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) u(i, j) = noise_rng.next_double();

  // x1's support first, then the shared block from it, then x2's private
  // block from the complement.
  std::vector<int> s1 = support_rng.sample(p, k_true);
  std::vector<int> shared_pos = support_rng.sample(k_true, overlap);
  std::vector<int> s2;
  s2.reserve(k_true);
  for (int pos : shared_pos) s2.push_back(s1[pos]);
  std::vector<char> in_s1(p, 0);
  for (int i : s1) in_s1[i] = 1;
  std::vector<int> complement;
  complement.reserve(p - k_true);
  for (int i = 0; i < p; ++i)
    if (!in_s1[i]) complement.push_back(i);
  std::vector<int> priv_pos = support_rng.sample(static_cast<int>(complement.size()), k_true - overlap);
  for (int pos : priv_pos) s2.push_back(complement[pos]);

  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());

  Vector x1 = Vector::Zero(p), x2 = Vector::Zero(p);
  for (int i : s1) x1(i) = 1.0;
  for (int i : s2) x2(i) = 1.0;

  SpikedInstance inst;
  inst.p = p;
  inst.sigma = sigma;
  inst.k_true = k_true;
  inst.q = q;
  inst.seed = seed;
  inst.support1 = std::move(s1);
  inst.support2 = std::move(s2);
  inst.matrix = u.transpose() * u + sigma * (x1 * x1.transpose() + x2 * x2.transpose());
  return inst;
}

double variance_explained(const ComponentSet& sol, const SymMatrix& sigma) {
  if (sol.U.rows() != sigma.dim()) throw DimensionMismatch("loadings/matrix dimension mismatch");
  return (sol.U.transpose() * sigma.entries() * sol.U).trace() / sigma.trace();
}

namespace {

Matrix parse_csv_matrix(std::istream& is, bool allow_header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first && allow_header) {
        first = false;
        continue;
      }
      throw Error("non-numeric CSV cell");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error("ragged CSV rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("empty CSV input");
  Matrix m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

SymMatrix pitprops() {
  std::stringstream ss(kPitpropsCsv);
  Matrix m = parse_csv_matrix(ss, false);
  return SymMatrix(std::move(m), MatrixKind::Correlation);
}

SymMatrix read_matrix_csv(const std::string& path, MatrixKind kind) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  Matrix m = parse_csv_matrix(f, false);
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix CSV must be square");
  const double asym = (m - m.transpose().eval()).cwiseAbs().maxCoeff();
  if (asym > 1e-8)
    std::cerr << "warning: input matrix asymmetry " << asym << ", symmetrizing\n";
  return SymMatrix(std::move(m), kind);
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return Dataset{parse_csv_matrix(f, true)};
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  os.precision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
}

}  // namespace ospca
