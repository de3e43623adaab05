#include "ospca/altmin.hpp"
#include "ospca/covmodel.hpp"
#include "ospca/linalg.hpp"
#include "ospca/rng.hpp"

#include <doctest.h>

using namespace ospca;
using altmin::AltMinConfig;

TEST_SUITE_BEGIN("altmin");

TEST_CASE("penalty schedule switches slope after fifty sweeps") {
  altmin::PenaltySchedule sched;
  CHECK(sched.lambda(1) == 1.0);
  CHECK(sched.lambda(50) == 50.0);
  CHECK(sched.lambda(51) == 55.0);
  CHECK(sched.lambda(100) == 300.0);
  altmin::PenaltySchedule lin{altmin::PenaltySchedule::Rule::Linear, 1.0, {}};
  CHECK(lin.lambda(100) == 100.0);
}

TEST_CASE("identity matrix is solved in the first sweep") {
  SymMatrix eye(Matrix::Identity(6, 6), MatrixKind::Correlation);
  AltMinConfig cfg;
  cfg.k_list = {2, 2};
  cfg.iterations = 3;
  auto res = altmin::algorithm2(eye, cfg);
  CHECK(res.solution.variance_fraction == doctest::Approx(2.0 / 6.0).epsilon(1e-9));
  CHECK(res.solution.violation <= 1e-9);
  // end of the first sweep: both components placed, already orthogonal
  CHECK(res.trace.rows[1].violation <= 1e-9);
  CHECK(res.trace.rows[1].objective == doctest::Approx(2.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("iterates stay unit-norm and within budget") {
  SplitRng rng(71);
  Matrix g(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) g(i, j) = rng.next_double() * 2 - 1;
  SymMatrix sigma(g * g.transpose(), MatrixKind::Covariance);
  AltMinConfig cfg;
  cfg.k_list = {3, 2};
  cfg.iterations = 12;
  auto res = altmin::algorithm2(sigma, cfg);
  for (int t = 0; t < 2; ++t) {
    CHECK(std::abs(res.solution.U.col(t).norm() - 1.0) <= 1e-9);
    int nnz = 0;
    for (int i = 0; i < 9; ++i) nnz += res.solution.U(i, t) != 0.0;
    CHECK(nnz <= cfg.k_list[t]);
  }
  CHECK(res.trace.lambda_scale > 0.0);
}

TEST_CASE("identity shift never changes the selected support") {
  // adding a multiple of I to the subproblem matrix shifts every block
  // eigenvalue equally, so the exact argmax support is invariant
  SplitRng rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    auto stream = rng.split(trial);
    Matrix g(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) g(i, j) = stream.next_double() * 2 - 1;
    Matrix s = g * g.transpose();
    s -= 1.5 * Matrix::Identity(7, 7);  // make it indefinite
    auto base = rank1::exact_rank1(s, 3);
    const double offset = 1e-6 - min_eigenvalue(s);
    auto shifted = rank1::exact_rank1(s + offset * Matrix::Identity(7, 7), 3);
    CHECK(base.support == shifted.support);
    CHECK(shifted.value == doctest::Approx(base.value + offset).epsilon(1e-9));
  }
}

TEST_CASE("shifted subproblems are positive semidefinite at every step") {
  SplitRng rng(73);
  Matrix g(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(i, j) = rng.next_double() * 2 - 1;
  SymMatrix sigma(g * g.transpose(), MatrixKind::Covariance);
  AltMinConfig cfg;
  cfg.k_list = {2, 2, 2};
  cfg.iterations = 6;
  cfg.track_history = true;
  auto res = altmin::algorithm2(sigma, cfg);
  CHECK(res.trace.rows.size() == 6 * 3);
  // violation under pressure: the last sweep is no worse than the first
  const double first = res.trace.rows[2].violation;
  const double last = res.trace.rows.back().violation;
  CHECK(last <= first + 1e-9);
}

TEST_CASE("variable fixing keeps rows with support mass") {
  Matrix zstar = Matrix::Zero(6, 2);
  zstar(3, 0) = 0.6;
  auto active = altmin::variable_fix(zstar, 1e-4);
  CHECK(active == std::vector<int>{3});
  Matrix zeros = Matrix::Zero(4, 2);
  CHECK_THROWS_AS(altmin::variable_fix(zeros, 1e-4), EmptyActiveSet);
  auto all = altmin::variable_fix(zeros, 0.0);
  CHECK(all.size() == 4);
}

TEST_CASE("fixed variant equals the plain run when nothing is fixed") {
  SymMatrix eye(Matrix::Identity(6, 6), MatrixKind::Correlation);
  AltMinConfig cfg;
  cfg.k_list = {2, 2};
  cfg.iterations = 4;
  auto fixed = altmin::algorithm2_fixed(eye, cfg, relax::RelaxationKind::PermIneq);
  auto plain = altmin::algorithm2(eye, cfg);
  CHECK(fixed.solution.variance_fraction ==
        doctest::Approx(plain.solution.variance_fraction).epsilon(1e-9));
  CHECK(fixed.solution.violation <= 1e-9);
}

TEST_CASE("fixed variant stays close to the unfixed run on pitprops") {
  auto pit = pitprops();
  AltMinConfig cfg;
  cfg.k_list = {5, 5};
  cfg.iterations = 40;
  auto fixed = altmin::algorithm2_fixed(pit, cfg, relax::RelaxationKind::PermIneq);
  auto plain = altmin::algorithm2(pit, cfg);
  CHECK(fixed.active.size() <= 13);
  CHECK(std::abs(fixed.solution.variance_fraction - plain.solution.variance_fraction) <= 0.02);
  // feasibility-compensated sandwich against the bound
  CHECK(fixed.solution.variance_fraction - fixed.relaxation.upper_bound <=
        0.5 * fixed.solution.violation + 1e-4);
}

TEST_SUITE_END();
