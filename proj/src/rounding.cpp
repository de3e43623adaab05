#include "ospca/rounding.hpp"

#include "ospca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <queue>

namespace ospca::rounding {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
  int to;
  int cap;
  double cost;
  int rev;  // index of the reverse arc in graph[to]
};

struct Flow {
  std::vector<std::vector<Arc>> g;
  explicit Flow(int n) : g(n) {}
  void add(int from, int to, int cap, double cost) {
    g[from].push_back({to, cap, cost, static_cast<int>(g[to].size())});
    g[to].push_back({from, 0, -cost, static_cast<int>(g[from].size()) - 1});
  }
};

// One successive-shortest-path augmentation with Johnson potentials. The
// first call uses Bellman-Ford (the initial graph has negative costs), later
// calls Dijkstra on reduced costs. Deterministic: ties keep the first-found
// predecessor, and nodes are relaxed in index order.
bool shortest_path(Flow& f, int s, int t, std::vector<double>& pot, bool first,
                   std::vector<int>& pre_node, std::vector<int>& pre_arc, double* path_cost) {
  const int n = static_cast<int>(f.g.size());
  std::vector<double> dist(n, kInf);
  pre_node.assign(n, -1);
  pre_arc.assign(n, -1);
  dist[s] = 0.0;
  if (first) {
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int u = 0; u < n; ++u) {
        if (dist[u] == kInf) continue;
        for (size_t ai = 0; ai < f.g[u].size(); ++ai) {
          const Arc& a = f.g[u][ai];
          if (a.cap <= 0) continue;
          const double nd = dist[u] + a.cost;
          if (nd < dist[a.to] - 1e-15) {
            dist[a.to] = nd;
            pre_node[a.to] = u;
            pre_arc[a.to] = static_cast<int>(ai);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
  } else {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0.0, s);
    std::vector<char> done(n, 0);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = 1;
      for (size_t ai = 0; ai < f.g[u].size(); ++ai) {
        const Arc& a = f.g[u][ai];
        if (a.cap <= 0 || pot[a.to] == kInf || pot[u] == kInf) continue;
        const double rc = a.cost + pot[u] - pot[a.to];
        const double nd = d + std::max(0.0, rc);
        if (nd < dist[a.to] - 1e-15) {
          dist[a.to] = nd;
          pre_node[a.to] = u;
          pre_arc[a.to] = static_cast<int>(ai);
          pq.emplace(nd, a.to);
        }
      }
    }
  }
  if (dist[t] == kInf) return false;
  // true cost of the found path
  double cost = 0.0;
  for (int v = t; v != s; v = pre_node[v]) cost += f.g[pre_node[v]][pre_arc[v]].cost;
  *path_cost = cost;
  for (int v = 0; v < n; ++v)
    if (dist[v] < kInf) pot[v] = (pot[v] == kInf ? 0.0 : pot[v]) + dist[v];
  return true;
}

double block_value(const Matrix& sigma, const std::vector<int>& idx) {
  if (idx.empty()) return 0.0;
  return leading_eigenvalue(principal_submatrix(sigma, idx));
}

}  // namespace

DisjointSupport round_disjoint(const Matrix& zstar, int k, int r, const RoundOptions& opts) {
  const int p = static_cast<int>(zstar.rows());
  if (static_cast<int>(zstar.cols()) != r) throw DimensionMismatch("zstar column count");
  if (p < r) throw InfeasibleRounding("fewer features than components");
  if (k < r) throw InfeasibleRounding("budget below the component count");

  const double big = zstar.cwiseAbs().sum() + 1.0;
  const int src = 0, sink = 1 + r + p;
  Flow f(sink + 1);
  for (int t = 0; t < r; ++t) {
    const int cap = opts.per_component ? (*opts.per_component)[t] : k;
    f.add(src, 1 + t, 1, -big);  // mandatory unit per component
    if (cap > 1) f.add(src, 1 + t, cap - 1, 0.0);
  }
  for (int t = 0; t < r; ++t)
    for (int i = 0; i < p; ++i) f.add(1 + t, 1 + r + i, 1, -zstar(i, t));
  for (int i = 0; i < p; ++i) f.add(1 + r + i, sink, 1, 0.0);

  std::vector<double> pot(f.g.size(), kInf);
  std::vector<int> pre_node, pre_arc;
  int flow = 0;
  bool first = true;
  while (flow < k) {
    double cost = 0.0;
    if (!shortest_path(f, src, sink, pot, first, pre_node, pre_arc, &cost)) break;
    first = false;
    if (flow >= r && cost >= -1e-15) break;  // mandatory units done, no gain left
    for (int v = sink; v != src; v = pre_node[v]) {
      Arc& a = f.g[pre_node[v]][pre_arc[v]];
      a.cap -= 1;
      f.g[a.to][a.rev].cap += 1;
    }
    ++flow;
  }
  if (flow < r) throw InfeasibleRounding("could not serve every component");

  DisjointSupport out;
  out.Z = IntMatrix::Zero(p, r);
  for (int t = 0; t < r; ++t)
    for (const Arc& a : f.g[1 + t]) {
      if (a.to >= 1 + r && a.to < 1 + r + p && a.cap == 0 && a.cost <= 0.0)
        out.Z(a.to - 1 - r, t) = 1;
    }

  // Tie refinement: among optimizers of <Z, Zstar> (within tie_tol), prefer
  // assignments with a larger resolved objective.
  if (opts.sigma) {
    std::vector<std::vector<int>> comp(r);
    for (int t = 0; t < r; ++t)
      for (int i = 0; i < p; ++i)
        if (out.Z(i, t)) comp[t].push_back(i);
    std::vector<double> val(r);
    for (int t = 0; t < r; ++t) val[t] = block_value(*opts.sigma, comp[t]);
    for (int pass = 0; pass < 100; ++pass) {
      double best_gain = 1e-12;
      int bt1 = -1, bt2 = -1, ba = -1, bb = -1;
      double bv1 = 0, bv2 = 0;
      for (int t1 = 0; t1 < r; ++t1)
        for (int t2 = t1 + 1; t2 < r; ++t2)
          for (int a : comp[t1])
            for (int b : comp[t2]) {
              const double dtie = zstar(a, t2) + zstar(b, t1) - zstar(a, t1) - zstar(b, t2);
              if (dtie < -opts.tie_tol) continue;
              std::vector<int> n1 = comp[t1], n2 = comp[t2];
              std::replace(n1.begin(), n1.end(), a, b);
              std::replace(n2.begin(), n2.end(), b, a);
              const double v1 = block_value(*opts.sigma, n1);
              const double v2 = block_value(*opts.sigma, n2);
              const double gain = v1 + v2 - val[t1] - val[t2];
              if (gain > best_gain) {
                best_gain = gain;
                bt1 = t1; bt2 = t2; ba = a; bb = b; bv1 = v1; bv2 = v2;
              }
            }
      if (bt1 < 0) break;
      std::replace(comp[bt1].begin(), comp[bt1].end(), ba, bb);
      std::replace(comp[bt2].begin(), comp[bt2].end(), bb, ba);
      val[bt1] = bv1;
      val[bt2] = bv2;
    }
    out.Z.setZero();
    for (int t = 0; t < r; ++t)
      for (int i : comp[t]) out.Z(i, t) = 1;
  }
  return out;
}

ComponentSet resolve_svd(const SymMatrix& sigma, const DisjointSupport& z) {
  const int p = static_cast<int>(z.Z.rows()), r = static_cast<int>(z.Z.cols());
  Matrix u = Matrix::Zero(p, r);
  for (int t = 0; t < r; ++t) {
    std::vector<int> idx;
    for (int i = 0; i < p; ++i)
      if (z.Z(i, t)) idx.push_back(i);
    auto [value, vec] = leading_eigenpair(principal_submatrix(sigma.entries(), idx));
    for (size_t a = 0; a < idx.size(); ++a) u(idx[a], t) = vec(a);
  }
  return make_component_set(u, sigma);
}

Algorithm1Result algorithm1(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                            relax::RelaxationKind kind) {
  return algorithm1(sigma, budget, r, kind, conic::SolveSettings::for_dim(sigma.dim()));
}

Algorithm1Result algorithm1(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                            relax::RelaxationKind kind, const conic::SolveSettings& settings) {
  Algorithm1Result res;
  res.relaxation = relax::upper_bound(sigma, budget, r, kind, settings);
  RoundOptions opts;
  opts.sigma = &sigma.entries();
  DisjointSupport z = round_disjoint(res.relaxation.zstar, budget.k_total(), r, opts);
  if (budget.has_per_component()) {
    for (int t = 0; t < r; ++t) {
      const int count = z.Z.col(t).sum();
      if (count > (*budget.per_component)[t])
        std::cerr << "note: rounded component " << t << " uses " << count
                  << " features, budget split suggested " << (*budget.per_component)[t] << "\n";
    }
  }
  res.solution = resolve_svd(sigma, z);
  res.gap = res.relaxation.upper_bound <= 0.0
                ? 0.0
                : (res.relaxation.upper_bound - res.solution.variance_fraction) /
                      res.relaxation.upper_bound;
  return res;
}

}  // namespace ospca::rounding
