#include "ospca/covmodel.hpp"
#include "ospca/linalg.hpp"
#include "ospca/rng.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace ospca;

TEST_SUITE_BEGIN("covmodel");

TEST_CASE("centered constant data gives the zero matrix") {
  Dataset d;
  d.values.resize(2, 3);
  d.values << 1, 2, 3, 1, 2, 3;
  auto s = correlation_from_data(d, false);
  CHECK(s.entries().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two-sample covariance by hand") {
  Dataset d;
  d.values.resize(2, 2);
  d.values << 1, 0, -1, 0;
  auto s = correlation_from_data(d, false);
  CHECK(s(0, 0) == doctest::Approx(2.0));
  CHECK(s(0, 1) == 0.0);
  CHECK(s(1, 1) == 0.0);
}

TEST_CASE("random dataset matches the double-loop oracle") {
  SplitRng rng(11);
  const int n = 20, p = 5;
  Dataset d;
  d.values.resize(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) d.values(i, j) = rng.next_double() * 4 - 2;
  auto s = correlation_from_data(d, false);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      double ma = 0, mb = 0;
      for (int i = 0; i < n; ++i) {
        ma += d.values(i, a);
        mb += d.values(i, b);
      }
      ma /= n;
      mb /= n;
      double cov = 0;
      for (int i = 0; i < n; ++i) cov += (d.values(i, a) - ma) * (d.values(i, b) - mb);
      cov /= (n - 1);
      CHECK(std::abs(s(a, b) - cov) < 1e-12);
    }
}

TEST_CASE("standardized output has unit diagonal") {
  SplitRng rng(3);
  Dataset d;
  d.values.resize(15, 4);
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 4; ++j) d.values(i, j) = rng.next_double() * (j + 1);
  auto s = correlation_from_data(d, true);
  CHECK(s.kind() == MatrixKind::Correlation);
  for (int j = 0; j < 4; ++j) CHECK(s(j, j) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("constant column fails standardization") {
  Dataset d;
  d.values.resize(3, 2);
  d.values << 1, 5, 2, 5, 3, 5;
  CHECK_THROWS_AS(correlation_from_data(d, true), ZeroVarianceColumn);
}

TEST_CASE("spiked generator honors the requested overlap") {
  auto inst = generate_spiked(50, 2.0, 20, 1.0 / 20.0, 7);
  std::vector<int> inter;
  std::set_intersection(inst.support1.begin(), inst.support1.end(), inst.support2.begin(),
                        inst.support2.end(), std::back_inserter(inter));
  CHECK(inter.size() == 1);
  CHECK(inst.support1.size() == 20);
  CHECK(inst.support2.size() == 20);
}

TEST_CASE("zero signal still yields a psd gram matrix") {
  auto inst = generate_spiked(12, 0.0, 3, 0.0, 3);
  CHECK(min_eigenvalue(inst.matrix) >= -1e-7 * inst.matrix.trace());
}

TEST_CASE("small instance is psd with exact overlap one") {
  auto inst = generate_spiked(6, 1.5, 2, 0.5, 12345);
  std::vector<int> inter;
  std::set_intersection(inst.support1.begin(), inst.support1.end(), inst.support2.begin(),
                        inst.support2.end(), std::back_inserter(inter));
  CHECK(inter.size() == 1);
  CHECK(min_eigenvalue(inst.matrix) >= 0.0);
}

TEST_CASE("spiked generation is bitwise reproducible") {
  auto a = generate_spiked(30, 2.0, 10, 0.2, 99);
  auto b = generate_spiked(30, 2.0, 10, 0.2, 99);
  CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.support1 == b.support1);
  CHECK(a.support2 == b.support2);
}

TEST_CASE("matrix minus spikes equals the noise gram matrix") {
  auto inst = generate_spiked(20, 3.0, 5, 0.4, 17);
  Matrix m = inst.matrix;
  Vector x1 = Vector::Zero(20), x2 = Vector::Zero(20);
  for (int i : inst.support1) x1(i) = 1;
  for (int i : inst.support2) x2(i) = 1;
  m -= inst.sigma * (x1 * x1.transpose() + x2 * x2.transpose());
  CHECK(min_eigenvalue(m) >= -1e-7 * m.trace());
}

TEST_CASE("non-integral overlap is rejected") {
  CHECK_THROWS_AS(generate_spiked(10, 1.0, 3, 0.5, 1), InfeasibleOverlap);
  CHECK_THROWS_AS(generate_spiked(5, 1.0, 3, 0.0, 1), InfeasibleOverlap);
}

TEST_CASE("variance explained on the identity") {
  SymMatrix eye(Matrix::Identity(6, 6), MatrixKind::Correlation);
  Matrix u = Matrix::Zero(6, 2);
  u(0, 0) = 1;
  u(1, 1) = 1;
  auto cs = make_component_set(u, eye);
  CHECK(variance_explained(cs, eye) == doctest::Approx(2.0 / 6.0));
  CHECK(cs.violation == doctest::Approx(0.0));
}

TEST_CASE("variance explained matches the quadratic-form oracle") {
  SplitRng rng(8);
  const int p = 7, r = 3;
  Matrix base(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) base(i, j) = rng.next_double() - 0.5;
  SymMatrix sigma(base * base.transpose(), MatrixKind::Covariance);
  Matrix g(p, r);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < r; ++j) g(i, j) = rng.next_double() - 0.5;
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix u = qr.householderQ() * Matrix::Identity(p, r);
  auto cs = make_component_set(u, sigma);
  double direct = 0.0;
  for (int t = 0; t < r; ++t) direct += (u.col(t).transpose() * sigma.entries() * u.col(t))(0);
  CHECK(variance_explained(cs, sigma) == doctest::Approx(direct / sigma.trace()).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.entries(), Eigen::EigenvaluesOnly);
  double top = 0.0;
  for (int t = 0; t < r; ++t) top += es.eigenvalues()(p - 1 - t);
  CHECK(variance_explained(cs, sigma) <= top / sigma.trace() + 1e-9);
}

TEST_CASE("orthogonality violation basics") {
  Matrix u(4, 2);
  u << 1, 1, 0, 0, 0, 0, 0, 0;
  CHECK(orthogonality_violation(u) == doctest::Approx(2.0));
  Matrix v = Matrix::Identity(4, 2);
  CHECK(orthogonality_violation(v) <= 1e-12);
}

TEST_CASE("bundled pitprops matrix") {
  auto pit = pitprops();
  CHECK(pit.dim() == 13);
  for (int i = 0; i < 13; ++i) CHECK(pit(i, i) == 1.0);
  CHECK((pit.entries() - pit.entries().transpose().eval()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(leading_eigenvalue(pit.entries()) / 13.0 >= 0.32);
}

TEST_CASE("matrix csv roundtrip") {
  auto pit = pitprops();
  std::stringstream ss;
  write_matrix_csv(ss, pit.entries());
  const std::string path = "/tmp/ospca_test_pitprops.csv";
  {
    std::ofstream f(path);
    f << ss.str();
  }
  auto back = read_matrix_csv(path, MatrixKind::Correlation);
  CHECK((back.entries() - pit.entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_SUITE_END();
