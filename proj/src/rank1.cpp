#include "ospca/rank1.hpp"

#include "ospca/linalg.hpp"
#include "ospca/relax/solve.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ospca::rank1 {

namespace {

Rank1Solution from_support(const Matrix& s, std::vector<int> support) {
  std::sort(support.begin(), support.end());
  Rank1Solution sol;
  auto [value, vec] = leading_eigenpair(principal_submatrix(s, support));
  sol.u = Vector::Zero(s.rows());
  for (size_t a = 0; a < support.size(); ++a) sol.u(support[a]) = vec(a);
  sol.value = value;
  sol.support = std::move(support);
  return sol;
}

double support_value(const Matrix& s, const std::vector<int>& idx) {
  return leading_eigenvalue(principal_submatrix(s, idx));
}

}  // namespace

Policy policy_from_string(const std::string& name) {
  if (name == "auto") return Policy::Auto;
  if (name == "exact") return Policy::Exact;
  if (name == "relax-round") return Policy::RelaxRound;
  if (name == "greedy") return Policy::GreedySwaps;
  throw Error("unknown rank-1 policy: " + name);
}

Rank1Solution exact_rank1(const Matrix& s, int k) {
  const int p = static_cast<int>(s.rows());
  if (k < 1 || k > p) throw Error("invalid k");
  if (binomial(p, k) > kEnumerateHardCap)
    throw TooLargeToEnumerate("subset enumeration too large");

  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  std::vector<int> best_subset;
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    const double v = support_value(s, subset);
    if (v > best) {  // strict: lexicographic enumeration keeps first optimum
      best = v;
      best_subset = subset;
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && subset[i] == p - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return from_support(s, best_subset);
}

Rank1Solution greedy_rank1(const Matrix& s, int k, bool swaps) {
  const int p = static_cast<int>(s.rows());
  if (k < 1 || k > p) throw Error("invalid k");
  std::vector<int> sel;
  std::vector<char> used(p, 0);
  sel.reserve(k);
  while (static_cast<int>(sel.size()) < k) {
    int best_j = -1;
    double best_v = -std::numeric_limits<double>::infinity();
    sel.push_back(-1);
    for (int j = 0; j < p; ++j) {
      if (used[j]) continue;
      sel.back() = j;
      const double v = support_value(s, sel);
      if (v > best_v) {
        best_v = v;
        best_j = j;
      }
    }
    sel.back() = best_j;
    used[best_j] = 1;
  }
  if (swaps) {
    double cur = support_value(s, sel);
    for (int pass = 0; pass < 50; ++pass) {
      double best_v = cur + 1e-12;
      int best_a = -1, best_b = -1;
      for (size_t ai = 0; ai < sel.size(); ++ai) {
        const int a = sel[ai];
        for (int b = 0; b < p; ++b) {
          if (used[b]) continue;
          std::vector<int> cand = sel;
          cand[ai] = b;
          const double v = support_value(s, cand);
          if (v > best_v) {
            best_v = v;
            best_a = static_cast<int>(ai);
            best_b = b;
          }
        }
      }
      if (best_a < 0) break;
      used[sel[best_a]] = 0;
      used[best_b] = 1;
      sel[best_a] = best_b;
      cur = best_v;
    }
  }
  return from_support(s, sel);
}

Rank1Solution relax_round_rank1(const Matrix& s, int k) {
  return relax_round_rank1(s, k, conic::SolveSettings::for_dim(static_cast<int>(s.rows())));
}

Rank1Solution relax_round_rank1(const Matrix& s, int k, const conic::SolveSettings& settings) {
  const int p = static_cast<int>(s.rows());
  // The relaxation builders require a PSD input; shift by the most negative
  // eigenvalue when needed (pure diagonal shift, leaves the argmax unchanged).
  double shift = 0.0;
  const double lmin = min_eigenvalue(s);
  if (lmin < 0.0) shift = 1e-9 - lmin;
  SymMatrix sym(s + shift * Matrix::Identity(p, p), MatrixKind::Covariance);
  relax::BuiltRelaxation built = relax::build(
      sym, SparsityBudget::of_components({k}), 1, relax::RelaxationKind::DisjointIneqPerComponent);
  conic::ConicSolution sol = conic::solve(built.prog, settings);
  if (!sol.usable()) throw Error("rank-1 relaxation solve failed");

  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  Vector score(p), diag(p);
  for (int i = 0; i < p; ++i) {
    score(i) = sol.x(built.z[0][i]);
    diag(i) = sol.x(built.y(i, i));
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (score(a) != score(b)) return score(a) > score(b);
    if (diag(a) != diag(b)) return diag(a) > diag(b);
    return a < b;
  });
  order.resize(k);
  return from_support(s, order);
}

Rank1Solution solve_rank1(const Matrix& s, int k, Policy policy) {
  const int p = static_cast<int>(s.rows());
  switch (policy) {
    case Policy::Exact: return exact_rank1(s, k);
    case Policy::GreedySwaps: return greedy_rank1(s, k, true);
    case Policy::RelaxRound: return relax_round_rank1(s, k);
    case Policy::Auto: break;
  }
  if (binomial(p, k) <= kAutoExactCap) return exact_rank1(s, k);
  Rank1Solution a = relax_round_rank1(s, k);
  Rank1Solution b = greedy_rank1(s, k, true);
  return a.value >= b.value ? a : b;
}

}  // namespace ospca::rank1
