#include "ospca/allocations.hpp"
#include "ospca/covmodel.hpp"
#include "ospca/eval.hpp"
#include "ospca/rng.hpp"

#include <doctest.h>

using namespace ospca;

TEST_SUITE_BEGIN("eval");

TEST_CASE("deflation on a diagonal matrix picks the top entries") {
  Matrix d = Eigen::Vector3d(3, 2, 1).asDiagonal();
  SymMatrix sigma(d, MatrixKind::Covariance);
  auto cs = eval::deflation_baseline(sigma, {1, 1}, rank1::Policy::Exact);
  CHECK(cs.objective == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(cs.violation <= 1e-12);
}

TEST_CASE("single component deflation equals the rank-1 solver") {
  SplitRng rng(81);
  Matrix g(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) g(i, j) = rng.next_double() * 2 - 1;
  SymMatrix sigma(g * g.transpose(), MatrixKind::Covariance);
  auto cs = eval::deflation_baseline(sigma, {3}, rank1::Policy::Exact);
  auto direct = rank1::exact_rank1(sigma.entries(), 3);
  CHECK(cs.objective == doctest::Approx(direct.value).epsilon(1e-9));
}

TEST_CASE("heavily overlapping truth makes deflation non-orthogonal") {
  // budgets at the truth size exceed p here, so supports must overlap and
  // deflation cannot stay orthogonal
  int violated = 0;
  for (int seed = 0; seed < 20; ++seed) {
    auto inst = generate_spiked(35, 2.0, 20, 0.95, 1000 + seed);
    auto cs = eval::deflation_baseline(inst.sym(), {20, 20}, rank1::Policy::GreedySwaps);
    if (cs.violation > 1e-8) ++violated;
  }
  CHECK(violated > 10);
}

TEST_CASE("disjoint spikes with exact solves recover orthogonal components") {
  // two disjoint dominant blocks; deflation must return violation zero
  Matrix d = Matrix::Identity(8, 8) * 0.01;
  d.block(0, 0, 2, 2) << 5, 4.9, 4.9, 5;
  d.block(2, 2, 2, 2) << 4, 3.9, 3.9, 4;
  SymMatrix sigma(d, MatrixKind::Covariance);
  auto cs = eval::deflation_baseline(sigma, {2, 2}, rank1::Policy::Exact);
  CHECK(cs.violation <= 1e-9);
  CHECK(cs.objective == doctest::Approx(9.9 + 7.9).epsilon(1e-6));
}

TEST_CASE("support recovery rates under permutation matching") {
  Matrix u = Matrix::Zero(6, 2);
  u(0, 0) = u(1, 0) = 0.7;
  u(2, 1) = u(3, 1) = 0.7;
  // exact supports in either order
  auto [tpr1, fpr1] = eval::tpr_fpr(u, {0, 1}, {2, 3});
  CHECK(tpr1 == doctest::Approx(1.0));
  CHECK(fpr1 == doctest::Approx(0.0));
  auto [tpr2, fpr2] = eval::tpr_fpr(u, {2, 3}, {0, 1});
  CHECK(tpr2 == doctest::Approx(1.0));
  CHECK(fpr2 == doctest::Approx(0.0));
}

TEST_CASE("rates match a direct two-permutation evaluation") {
  SplitRng rng(82);
  for (int trial = 0; trial < 50; ++trial) {
    auto stream = rng.split(trial);
    const int p = 12;
    Matrix u = Matrix::Zero(p, 2);
    for (int t = 0; t < 2; ++t)
      for (int i = 0; i < p; ++i)
        if (stream.next_double() < 0.3) u(i, t) = stream.next_double() + 0.1;
    if ((u.col(0).array() != 0).count() == 0) u(0, 0) = 0.5;
    if ((u.col(1).array() != 0).count() == 0) u(1, 1) = 0.5;
    std::vector<int> s1, s2;
    for (int i = 0; i < p; ++i) {
      if (stream.next_double() < 0.4) s1.push_back(i);
      if (stream.next_double() < 0.4) s2.push_back(i);
    }
    if (s1.empty()) s1.push_back(0);
    if (s2.empty()) s2.push_back(1);
    auto [tpr, fpr] = eval::tpr_fpr(u, s1, s2);
    // direct: pooled counts under both assignments
    double best_score = -2, best_tpr = 0, best_fpr = 0;
    for (int perm = 0; perm < 2; ++perm) {
      const auto& a = perm ? s2 : s1;
      const auto& b = perm ? s1 : s2;
      int tp = 0, fp = 0;
      for (int i = 0; i < p; ++i) {
        if (u(i, 0) != 0) (std::count(a.begin(), a.end(), i) ? tp : fp)++;
        if (u(i, 1) != 0) (std::count(b.begin(), b.end(), i) ? tp : fp)++;
      }
      double tt = double(tp) / (a.size() + b.size());
      double ff = double(fp) / (2 * p - a.size() - b.size());
      if (tt - ff > best_score) {
        best_score = tt - ff;
        best_tpr = tt;
        best_fpr = ff;
      }
    }
    CHECK(tpr == doctest::Approx(best_tpr));
    CHECK(fpr == doctest::Approx(best_fpr));
  }
}

TEST_CASE("allocation enumeration") {
  CHECK(enumerate_allocations(3, 3, 5) == std::vector<std::vector<int>>{{1, 1, 1}});
  CHECK(enumerate_allocations(6, 2, 5) ==
        std::vector<std::vector<int>>{{3, 3}, {4, 2}, {5, 1}});
  // independent partition count: partitions of 15 into exactly 3 parts <= 13
  int count = 0;
  for (int a = 1; a <= 13; ++a)
    for (int b = 1; b <= a; ++b) {
      const int c = 15 - a - b;
      if (c >= 1 && c <= b) ++count;
    }
  CHECK(static_cast<int>(enumerate_allocations(15, 3, 13).size()) == count);
  CHECK(count == 19);
}

TEST_CASE("kl asymmetry normalization") {
  CHECK(kl_asymmetry({5, 5, 5}, 15, 3, 13) == doctest::Approx(0.0));
  // the maximizer scores one
  auto allocs = enumerate_allocations(15, 3, 13);
  double best = 0;
  std::vector<int> argbest;
  for (const auto& a : allocs) {
    const double v = kl_asymmetry(a, 15, 3, 13);
    if (v > best) {
      best = v;
      argbest = a;
    }
  }
  CHECK(best == doctest::Approx(1.0));
  const double mid = kl_asymmetry({7, 6, 2}, 15, 3, 13);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
}

TEST_CASE("auc harness self-test with a perfect method") {
  // hand-built curve: one point at (0,1) means perfect recovery
  eval::RocResult res;
  res.curve = {{5, 1.0, 0.0}, {10, 1.0, 1.0}};
  // recompute auc the way the harness does
  std::vector<std::pair<double, double>> pts{{0.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}};
  std::sort(pts.begin(), pts.end());
  double auc = 0;
  for (size_t i = 1; i < pts.size(); ++i)
    auc += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2;
  CHECK(auc == doctest::Approx(1.0));
}

TEST_CASE("auc is invariant to sweep order") {
  eval::RocConfig cfg;
  cfg.p = 12;
  cfg.k_true = 4;
  cfg.q = 0.5;
  cfg.n_seeds = 2;
  cfg.iterations = 30;
  cfg.k_sweep = {2, 4, 6, 12};
  auto a = eval::roc_experiment(eval::RocMethod::DeflationBaseline, cfg);
  cfg.k_sweep = {12, 6, 2, 4};
  auto b = eval::roc_experiment(eval::RocMethod::DeflationBaseline, cfg);
  CHECK(a.auc == doctest::Approx(b.auc).epsilon(1e-12));
}

TEST_CASE("allocation study on the identity ties everywhere") {
  SymMatrix eye(Matrix::Identity(6, 6), MatrixKind::Correlation);
  altmin::AltMinConfig cfg;
  cfg.iterations = 5;
  auto study = eval::allocation_study(eye, 4, 2, relax::RelaxationKind::PermIneq, cfg);
  REQUIRE(study.rows.size() == 2);  // (2,2) and (3,1)
  for (const auto& row : study.rows) {
    CHECK(row.objective == doctest::Approx(2.0 / 6.0).epsilon(1e-6));
    CHECK(row.objective <= row.upper_bound + 0.5 * row.violation + 1e-4);
  }
  CHECK(study.rows[study.best_index].objective >=
        study.rows[study.symmetric_index].objective - 1e-9);
}

TEST_SUITE_END();
