#pragma once

#include "ospca/types.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <vector>

namespace ospca::conic {

enum class ConeKind { Zero, NonNeg, SecondOrder, RotatedSecondOrder, Psd };

struct ConeSpec {
  ConeKind kind;
  int size;  // number of rows; for Psd the side length of the matrix block
};

int cone_rows(const ConeSpec& c);

/// Sparse affine expression sum_i coeff_i x_i + constant.
struct LinExpr {
  std::vector<std::pair<int, double>> terms;
  double constant = 0.0;

  LinExpr() = default;
  LinExpr(double c) : constant(c) {}  // NOLINT: implicit constants are handy
  static LinExpr var(int id, double coeff = 1.0) {
    LinExpr e;
    e.terms.emplace_back(id, coeff);
    return e;
  }
  LinExpr& add(int id, double coeff) {
    terms.emplace_back(id, coeff);
    return *this;
  }
  LinExpr& operator+=(const LinExpr& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    constant += o.constant;
    return *this;
  }
  LinExpr& operator-=(const LinExpr& o) {
    for (const auto& [id, c] : o.terms) terms.emplace_back(id, -c);
    constant -= o.constant;
    return *this;
  }
  LinExpr& operator*=(double s) {
    for (auto& [id, c] : terms) c *= s;
    constant *= s;
    return *this;
  }
  double eval(const Vector& x) const {
    double v = constant;
    for (const auto& [id, c] : terms) v += c * x(id);
    return v;
  }
};

inline LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
inline LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
inline LinExpr operator*(double s, LinExpr a) { return a *= s; }
inline LinExpr operator-(LinExpr a) { return a *= -1.0; }

/// Cone program in the form  maximize c^T x  s.t.  b - A x in K,
/// with K a product of cones in row order.
class ConicProgram {
 public:
  int new_var() { return num_vars_++; }
  std::vector<int> new_vars(int n);

  void add_objective(int var, double coeff);

  /// Appends rows s = expr (one per expression) assigned to a single cone.
  void add_cone(ConeKind kind, const std::vector<LinExpr>& exprs);
  void add_zero(const LinExpr& e) { add_cone(ConeKind::Zero, {e}); }
  void add_nonneg(const LinExpr& e) { add_cone(ConeKind::NonNeg, {e}); }
  /// 2ab >= ||c||^2 with a,b >= 0.
  void add_rsoc(const LinExpr& a, const LinExpr& b, const std::vector<LinExpr>& c);
  void add_soc(const LinExpr& t, const std::vector<LinExpr>& x);
  /// Symmetric matrix in the PSD cone; entries in lower-triangle column-major
  /// order ((0,0),(1,0),...,(n-1,0),(1,1),...). Off-diagonals are scaled by
  /// sqrt(2) internally (self-dual vectorization).
  void add_psd(const std::vector<LinExpr>& lower_tri, int side);
  void add_box(int var, double lo, double hi);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return num_rows_; }
  const std::vector<ConeSpec>& cones() const { return cones_; }
  const std::vector<double>& b() const { return b_; }
  Vector c_dense() const;
  Eigen::SparseMatrix<double> a_sparse() const;

  /// Plain-text dump: triplets of A, then b, c and the cone list.
  void dump(std::ostream& os) const;

 private:
  void push_row(const LinExpr& e, double scale = 1.0);

  int num_vars_ = 0;
  int num_rows_ = 0;
  std::vector<Eigen::Triplet<double>> a_;
  std::vector<double> b_;
  std::vector<std::pair<int, double>> c_;
  std::vector<ConeSpec> cones_;
};

/// svec index helpers for the scaled lower-triangle vectorization.
int svec_size(int n);
void svec_from_matrix(const Matrix& m, double* out);
void matrix_from_svec(const double* in, int n, Matrix& out);

}  // namespace ospca::conic
