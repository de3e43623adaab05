#include "ospca/conic/program.hpp"

#include <cmath>
#include <ostream>

namespace ospca::conic {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

int cone_rows(const ConeSpec& c) {
  return c.kind == ConeKind::Psd ? svec_size(c.size) : c.size;
}

std::vector<int> ConicProgram::new_vars(int n) {
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = new_var();
  return ids;
}

void ConicProgram::add_objective(int var, double coeff) {
  if (coeff != 0.0) c_.emplace_back(var, coeff);
}

void ConicProgram::push_row(const LinExpr& e, double scale) {
  // s_row = b_row - A_row x = scale * e
  for (const auto& [id, coeff] : e.terms)
    if (coeff != 0.0) a_.emplace_back(num_rows_, id, -coeff * scale);
  b_.push_back(e.constant * scale);
  ++num_rows_;
}

void ConicProgram::add_cone(ConeKind kind, const std::vector<LinExpr>& exprs) {
  for (const auto& e : exprs) push_row(e);
  cones_.push_back({kind, static_cast<int>(exprs.size())});
}

void ConicProgram::add_rsoc(const LinExpr& a, const LinExpr& b, const std::vector<LinExpr>& c) {
  std::vector<LinExpr> rows;
  rows.reserve(c.size() + 2);
  rows.push_back(a);
  rows.push_back(b);
  for (const auto& e : c) rows.push_back(e);
  add_cone(ConeKind::RotatedSecondOrder, rows);
}

void ConicProgram::add_soc(const LinExpr& t, const std::vector<LinExpr>& x) {
  std::vector<LinExpr> rows;
  rows.reserve(x.size() + 1);
  rows.push_back(t);
  for (const auto& e : x) rows.push_back(e);
  add_cone(ConeKind::SecondOrder, rows);
}

void ConicProgram::add_psd(const std::vector<LinExpr>& lower_tri, int side) {
  if (static_cast<int>(lower_tri.size()) != svec_size(side))
    throw DimensionMismatch("psd block entry count mismatch");
  int idx = 0;
  for (int j = 0; j < side; ++j)
    for (int i = j; i < side; ++i, ++idx)
      push_row(lower_tri[idx], i == j ? 1.0 : kSqrt2);
  cones_.push_back({ConeKind::Psd, side});
}

void ConicProgram::add_box(int var, double lo, double hi) {
  add_nonneg(LinExpr::var(var) - LinExpr(lo));
  add_nonneg(LinExpr(hi) - LinExpr::var(var));
}

Vector ConicProgram::c_dense() const {
  Vector c = Vector::Zero(num_vars_);
  for (const auto& [id, coeff] : c_) c(id) += coeff;
  return c;
}

Eigen::SparseMatrix<double> ConicProgram::a_sparse() const {
  Eigen::SparseMatrix<double> a(num_rows_, num_vars_);
  a.setFromTriplets(a_.begin(), a_.end());
  return a;
}

void ConicProgram::dump(std::ostream& os) const {
  os << "vars " << num_vars_ << " rows " << num_rows_ << "\n";
  os << "cones";
  for (const auto& c : cones_) {
    const char* k = c.kind == ConeKind::Zero            ? "zero"
                    : c.kind == ConeKind::NonNeg        ? "nonneg"
                    : c.kind == ConeKind::SecondOrder   ? "soc"
                    : c.kind == ConeKind::RotatedSecondOrder ? "rsoc"
                                                        : "psd";
    os << ' ' << k << ':' << c.size;
  }
  os << "\nA\n";
  os.precision(17);
  auto a = a_sparse();
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  os << "b\n";
  for (size_t i = 0; i < b_.size(); ++i) os << b_[i] << '\n';
  os << "c\n";
  Vector c = c_dense();
  for (int i = 0; i < c.size(); ++i) os << c(i) << '\n';
}

int svec_size(int n) { return n * (n + 1) / 2; }

void svec_from_matrix(const Matrix& m, double* out) {
  const int n = static_cast<int>(m.rows());
  int idx = 0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i, ++idx) out[idx] = i == j ? m(i, j) : kSqrt2 * m(i, j);
}

void matrix_from_svec(const double* in, int n, Matrix& out) {
  out.resize(n, n);
  int idx = 0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i, ++idx) {
      const double v = i == j ? in[idx] : in[idx] / kSqrt2;
      out(i, j) = v;
      out(j, i) = v;
    }
}

}  // namespace ospca::conic
