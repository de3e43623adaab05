#include "ospca/covmodel.hpp"
#include "ospca/linalg.hpp"
#include "ospca/rng.hpp"
#include "ospca/rounding.hpp"

#include <doctest.h>

#include <cmath>

using namespace ospca;
using rounding::DisjointSupport;
using rounding::RoundOptions;

namespace {

// Brute force over all feasible binary assignments: each feature goes to one
// of the r components or none.
double brute_force_round(const Matrix& zstar, int k, int r) {
  const int p = static_cast<int>(zstar.rows());
  double best = -1.0;
  std::vector<int> assign(p, -1);
  const long long total = static_cast<long long>(std::pow(r + 1, p));
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    int count = 0;
    std::vector<int> col_counts(r, 0);
    double val = 0.0;
    for (int i = 0; i < p; ++i) {
      const int a = static_cast<int>(c % (r + 1)) - 1;
      c /= (r + 1);
      if (a >= 0) {
        ++count;
        ++col_counts[a];
        val += zstar(i, a);
      }
    }
    bool ok = count <= k;
    for (int t = 0; t < r; ++t) ok = ok && col_counts[t] >= 1;
    if (ok) best = std::max(best, val);
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("rounding");

TEST_CASE("integral input is its own optimum") {
  Matrix zstar = Matrix::Zero(5, 2);
  zstar(0, 0) = 1;
  zstar(1, 1) = 1;
  auto z = rounding::round_disjoint(zstar, 2, 2);
  CHECK(z.Z(0, 0) == 1);
  CHECK(z.Z(1, 1) == 1);
  CHECK(z.Z.sum() == 2);
}

TEST_CASE("symmetric tie lands on the diagonal assignment") {
  Matrix zstar = Matrix::Constant(4, 3, 0.25);
  auto z = rounding::round_disjoint(zstar, 3, 3);
  for (int t = 0; t < 3; ++t) CHECK(z.Z(t, t) == 1);
  CHECK(z.Z.sum() == 3);
}

TEST_CASE("flow optimum equals brute force on random fractional inputs") {
  SplitRng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    auto stream = rng.split(trial);
    const int p = 7, r = 2, k = 4;
    Matrix zstar(p, r);
    for (int i = 0; i < p; ++i)
      for (int t = 0; t < r; ++t) zstar(i, t) = stream.next_double();
    auto z = rounding::round_disjoint(zstar, k, r);
    double val = 0.0;
    for (int i = 0; i < p; ++i)
      for (int t = 0; t < r; ++t) val += z.Z(i, t) * zstar(i, t);
    CHECK(val == doctest::Approx(brute_force_round(zstar, k, r)).epsilon(1e-9));
    // disjointness and counts
    for (int i = 0; i < p; ++i) CHECK(z.Z.row(i).sum() <= 1);
    for (int t = 0; t < r; ++t) CHECK(z.Z.col(t).sum() >= 1);
    CHECK(z.Z.sum() <= k);
  }
}

TEST_CASE("tie refinement keeps the rounding objective") {
  SplitRng rng(56);
  for (int trial = 0; trial < 10; ++trial) {
    auto stream = rng.split(trial);
    const int p = 7, r = 2, k = 4;
    Matrix zstar(p, r);
    for (int i = 0; i < p; ++i)
      for (int t = 0; t < r; ++t) zstar(i, t) = stream.next_double();
    Matrix g(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) g(i, j) = stream.next_double() - 0.5;
    Matrix sigma = g * g.transpose();
    RoundOptions opts;
    opts.sigma = &sigma;
    opts.tie_tol = 1e-9;
    auto z = rounding::round_disjoint(zstar, k, r, opts);
    double val = 0.0;
    for (int i = 0; i < p; ++i)
      for (int t = 0; t < r; ++t) val += z.Z(i, t) * zstar(i, t);
    CHECK(val >= brute_force_round(zstar, k, r) - 1e-6);
  }
}

TEST_CASE("per-component capacities are honored when requested") {
  Matrix zstar = Matrix::Constant(6, 2, 0.5);
  zstar.col(0).head(4).setConstant(0.9);
  RoundOptions opts;
  opts.per_component = std::vector<int>{2, 2};
  auto z = rounding::round_disjoint(zstar, 4, 2, opts);
  CHECK(z.Z.col(0).sum() <= 2);
  CHECK(z.Z.col(1).sum() <= 2);
}

TEST_CASE("rounding requires a feature per component") {
  Matrix zstar = Matrix::Constant(1, 2, 0.5);
  CHECK_THROWS_AS(rounding::round_disjoint(zstar, 2, 2), InfeasibleRounding);
}

TEST_CASE("resolve on identity blocks returns basis vectors") {
  SymMatrix eye(Matrix::Identity(5, 5), MatrixKind::Correlation);
  DisjointSupport z;
  z.Z = IntMatrix::Zero(5, 2);
  z.Z(2, 0) = 1;
  z.Z(4, 1) = 1;
  auto cs = rounding::resolve_svd(eye, z);
  CHECK(cs.U(2, 0) == doctest::Approx(1.0));
  CHECK(cs.U(4, 1) == doctest::Approx(1.0));
  CHECK(cs.objective == doctest::Approx(2.0));
  CHECK(cs.violation <= 1e-12);
}

TEST_CASE("two-by-two block resolves to its closed-form eigenvalue") {
  Matrix m(3, 3);
  m << 2, 0.5, 0, 0.5, 1, 0, 0, 0, 0.3;
  SymMatrix sigma(m, MatrixKind::Covariance);
  DisjointSupport z;
  z.Z = IntMatrix::Zero(3, 1);
  z.Z(0, 0) = z.Z(1, 0) = 1;
  auto cs = rounding::resolve_svd(sigma, z);
  CHECK(cs.objective == doctest::Approx((3.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-12));
}

TEST_CASE("full pipeline is sandwiched by the disjoint brute force") {
  SplitRng rng(57);
  for (int trial = 0; trial < 5; ++trial) {
    auto stream = rng.split(trial);
    Matrix g(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) g(i, j) = stream.next_double() * 2 - 1;
    SymMatrix sigma(g * g.transpose(), MatrixKind::Covariance);
    auto run = rounding::algorithm1(sigma, SparsityBudget::of_components({2, 2}), 2,
                                    relax::RelaxationKind::PermIneq);
    // exhaustive disjoint optimum
    double best = -1;
    for (unsigned m1 = 0; m1 < 256; ++m1) {
      if (__builtin_popcount(m1) < 1 || __builtin_popcount(m1) > 2) continue;
      for (unsigned m2 = 0; m2 < 256; ++m2) {
        if (m1 & m2) continue;
        if (__builtin_popcount(m2) < 1 || __builtin_popcount(m2) > 2) continue;
        if (__builtin_popcount(m1) + __builtin_popcount(m2) > 4) continue;
        std::vector<int> i1, i2;
        for (int i = 0; i < 8; ++i) {
          if (m1 & (1u << i)) i1.push_back(i);
          if (m2 & (1u << i)) i2.push_back(i);
        }
        best = std::max(best, leading_eigenvalue(principal_submatrix(sigma.entries(), i1)) +
                                  leading_eigenvalue(principal_submatrix(sigma.entries(), i2)));
      }
    }
    CHECK(run.solution.objective <= best + 1e-9);
    CHECK(run.solution.variance_fraction <= run.relaxation.upper_bound + 1e-4);
    CHECK(run.solution.violation <= 1e-9);
    CHECK(best / sigma.trace() <= run.relaxation.upper_bound + 1e-4);
  }
}

TEST_CASE("rounding is deterministic") {
  SplitRng rng(58);
  Matrix zstar(9, 2);
  for (int i = 0; i < 9; ++i)
    for (int t = 0; t < 2; ++t) zstar(i, t) = rng.next_double();
  auto a = rounding::round_disjoint(zstar, 5, 2);
  auto b = rounding::round_disjoint(zstar, 5, 2);
  CHECK(a.Z == b.Z);
}

TEST_SUITE_END();
