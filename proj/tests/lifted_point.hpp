#pragma once

// Shared test helper: random feasible (U, Z) pairs with orthonormal sparse
// columns, and the lifted assignment of every builder variable at such a
// pair. Feasibility of the lifted point validates the inequality
// transcriptions independently of the solver.

#include "ospca/relax/builders.hpp"
#include "ospca/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ospca::testing {

struct FeasiblePair {
  Matrix U;     // orthonormal columns, column t supported on <= k_t indices
  IntMatrix Z;  // exactly k_t ones per column (padded supports)
};

inline FeasiblePair make_feasible_pair(int p, const std::vector<int>& kts, SplitRng& rng) {
  const int r = static_cast<int>(kts.size());
  FeasiblePair out;
  out.U = Matrix::Zero(p, r);
  out.Z = IntMatrix::Zero(p, r);

  std::vector<int> unused(p);
  std::iota(unused.begin(), unused.end(), 0);
  int t = 0;
  while (t < r) {
    // group of consecutive components sharing one support block
    int group = 1;
    while (t + group < r && rng.next_double() < 0.4) ++group;
    int min_kt = kts[t];
    for (int g = 1; g < group; ++g) min_kt = std::min(min_kt, kts[t + g]);
    group = std::min(group, min_kt);
    int m = group + (min_kt > group ? rng.next_int(min_kt - group + 1) : 0);
    m = std::min<int>(m, static_cast<int>(unused.size()));
    if (m < group) {  // not enough fresh indices left; shrink the group
      group = std::max(1, m);
      m = std::max(m, group);
    }
    std::vector<int> block;
    for (int a = 0; a < m; ++a) {
      const int pick = rng.next_int(static_cast<int>(unused.size()));
      block.push_back(unused[pick]);
      unused.erase(unused.begin() + pick);
    }
    Matrix g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = rng.next_double() * 2 - 1;
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    for (int c = 0; c < group; ++c)
      for (int a = 0; a < m; ++a) out.U(block[a], t + c) = q(a, c);
    for (int c = 0; c < group; ++c)
      for (int a = 0; a < m; ++a) out.Z(block[a], t + c) = 1;
    t += group;
  }
  // pad each column's support to exactly k_t
  for (int c = 0; c < r; ++c) {
    int have = out.Z.col(c).sum();
    for (int i = 0; i < p && have < kts[c]; ++i)
      if (!out.Z(i, c)) {
        out.Z(i, c) = 1;
        ++have;
      }
  }
  return out;
}

inline void set_sym(Vector& x, const relax::SymVarIds& v, const Matrix& m) {
  for (int j = 0; j < v.n; ++j)
    for (int i = j; i < v.n; ++i) x(v(i, j)) = m(i, j);
}

/// Variable assignment lifting (U, Z) into a built relaxation.
inline Vector lifted_point(const relax::BuiltRelaxation& built, const FeasiblePair& pair) {
  const int p = built.p, r = built.r;
  Vector x = Vector::Zero(built.prog.num_vars());
  for (int t = 0; t < r; ++t)
    for (int i = 0; i < p; ++i) x(built.z[t][i]) = pair.Z(i, t);
  for (int i = 0; i < p; ++i) {
    int s = 0;
    for (int t = 0; t < r; ++t) s += pair.Z(i, t);
    x(built.w[i]) = std::min(1, s);
  }
  const Matrix y = pair.U * pair.U.transpose();
  set_sym(x, built.y, y);
  if (!built.y_pos.empty()) {
    set_sym(x, built.y_pos, y.cwiseMax(0.0));
    set_sym(x, built.y_neg, (-y).cwiseMax(0.0));
  }
  for (int t = 0; t < r; ++t) {
    const Matrix yt = pair.U.col(t) * pair.U.col(t).transpose();
    set_sym(x, built.yt[t], yt);
    if (!built.yt_pos.empty()) {
      set_sym(x, built.yt_pos[t], yt.cwiseMax(0.0));
      set_sym(x, built.yt_neg[t], (-yt).cwiseMax(0.0));
    }
    if (!built.ft.empty()) {
      const Matrix f = yt.cwiseAbs();
      set_sym(x, built.ft[t], f);
      // sorted version: permute by decreasing diagonal of Y^t
      std::vector<int> order(p);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return yt(a, a) > yt(b, b); });
      const int kt = built.gt[t].block;
      for (int j = 0; j < kt; ++j)
        for (int i = j; i < kt; ++i) x(built.gt[t](i, j)) = f(order[i], order[j]);
      // majorization witnesses
      std::vector<double> diag_sorted(p);
      for (int i = 0; i < p; ++i) diag_sorted[i] = yt(order[i], order[i]);
      for (int j = 0; j + 1 < p; ++j) {
        x(built.rd[t][j]) = diag_sorted[j];
        for (int i = 0; i < p; ++i)
          x(built.td[t][i][j]) = std::max(0.0, yt(i, i) - diag_sorted[j]);
      }
      if (!built.T.empty()) {
        for (int i = 0; i < p; ++i)
          for (int j = 0; j < p; ++j) x(built.T[t][i][j]) = pair.Z(i, t) * yt(j, j);
      }
    }
  }
  return x;
}

}  // namespace ospca::testing
