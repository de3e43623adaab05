#include "ospca/eval.hpp"

#include "ospca/allocations.hpp"
#include "ospca/linalg.hpp"
#include "ospca/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace ospca::eval {

ComponentSet deflation_baseline(const SymMatrix& sigma, const std::vector<int>& k_list,
                                rank1::Policy policy) {
  const int p = sigma.dim();
  const int r = static_cast<int>(k_list.size());
  if (r < 1) throw Error("need at least one component");
  Matrix current = sigma.entries();
  Matrix u = Matrix::Zero(p, r);
  for (int t = 0; t < r; ++t) {
    rank1::Rank1Solution sol = rank1::solve_rank1(current, k_list[t], policy);
    u.col(t) = sol.u;
    Matrix proj = Matrix::Identity(p, p) - sol.u * sol.u.transpose();
    current = proj * current * proj;
  }
  return make_component_set(u, sigma);
}

std::pair<double, double> tpr_fpr(const Matrix& u_hat, const std::vector<int>& support1,
                                  const std::vector<int>& support2) {
  if (u_hat.cols() != 2) throw Error("permutation matching protocol covers two components");
  if (support1.empty() || support2.empty()) throw Error("empty truth support");
  const int p = static_cast<int>(u_hat.rows());
  std::set<int> s1(support1.begin(), support1.end()), s2(support2.begin(), support2.end());
  std::set<int> h[2];
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < p; ++i)
      if (u_hat(i, t) != 0.0) h[t].insert(i);

  auto rates = [&](const std::set<int>& a, const std::set<int>& b) {
    int tp = 0, fp = 0;
    for (int i : h[0]) (a.count(i) ? tp : fp) += 1;
    for (int i : h[1]) (b.count(i) ? tp : fp) += 1;
    const double pos = static_cast<double>(a.size() + b.size());
    const double neg = static_cast<double>(2 * p) - pos;
    return std::pair<double, double>(tp / pos, neg > 0 ? fp / neg : 0.0);
  };
  auto [tpr_a, fpr_a] = rates(s1, s2);
  auto [tpr_b, fpr_b] = rates(s2, s1);
  // better assignment: larger tpr - fpr, ties toward larger tpr
  if (tpr_a - fpr_a > tpr_b - fpr_b || (tpr_a - fpr_a == tpr_b - fpr_b && tpr_a >= tpr_b))
    return {tpr_a, fpr_a};
  return {tpr_b, fpr_b};
}

RocMethod roc_method_from_string(const std::string& name) {
  if (name == "alg1") return RocMethod::Algorithm1;
  if (name == "alg2-fixed" || name == "alg2") return RocMethod::Algorithm2Fixed;
  if (name == "deflate") return RocMethod::DeflationBaseline;
  throw Error("unknown roc method: " + name);
}

namespace {

double trapezoid_auc(std::vector<std::pair<double, double>> pts, bool append_corner) {
  pts.emplace_back(0.0, 0.0);
  if (append_corner) pts.emplace_back(1.0, 1.0);
  std::sort(pts.begin(), pts.end());
  double auc = 0.0;
  for (size_t i = 1; i < pts.size(); ++i)
    auc += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
  return auc;
}

}  // namespace

RocResult roc_experiment(RocMethod method, const RocConfig& config) {
  RocResult out;
  out.method = method;
  conic::SolveSettings fix_settings = conic::SolveSettings::for_dim(config.p).with_eps(config.fix_eps);
  fix_settings.max_iter = config.fix_max_iter;

  auto run_one = [&](int k, int seed) -> std::pair<double, double> {
    SpikedInstance inst = generate_spiked(config.p, config.sigma_signal, config.k_true,
                                          config.q, config.seed_base + seed);
    SymMatrix sym = inst.sym();
    const std::vector<int> kl(2, k);
    Matrix u;
    switch (method) {
      case RocMethod::Algorithm1: {
        auto res = rounding::algorithm1(sym, SparsityBudget::of_components(kl), 2,
                                        config.fix_kind, fix_settings);
        u = res.solution.U;
        break;
      }
      case RocMethod::Algorithm2Fixed: {
        altmin::AltMinConfig ac;
        ac.k_list = kl;
        ac.iterations = config.iterations;
        ac.subsolver = config.subsolver;
        ac.track_history = false;
        ac.early_stop = true;
        auto res = altmin::algorithm2_fixed(sym, ac, config.fix_kind, fix_settings);
        u = res.solution.U;
        break;
      }
      case RocMethod::DeflationBaseline: {
        auto res = deflation_baseline(sym, kl, config.subsolver);
        u = res.U;
        break;
      }
    }
    return tpr_fpr(u, inst.support1, inst.support2);
  };

  // independent (k, seed) tasks; results land in fixed slots so the reduce
  // order does not depend on scheduling
  const int nk = static_cast<int>(config.k_sweep.size());
  std::vector<std::pair<double, double>> slots(nk * config.n_seeds);
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (int a = 0; a < nk; ++a)
      for (int seed = 0; seed < config.n_seeds; ++seed)
        slots[a * config.n_seeds + seed] = run_one(config.k_sweep[a], seed);
  } else {
    std::vector<std::thread> pool;
    for (int tid = 0; tid < jobs; ++tid)
      pool.emplace_back([&, tid] {
        for (int idx = tid; idx < nk * config.n_seeds; idx += jobs)
          slots[idx] = run_one(config.k_sweep[idx / config.n_seeds], idx % config.n_seeds);
      });
    for (auto& th : pool) th.join();
  }
  for (int a = 0; a < nk; ++a) {
    double tpr_sum = 0.0, fpr_sum = 0.0;
    for (int seed = 0; seed < config.n_seeds; ++seed) {
      tpr_sum += slots[a * config.n_seeds + seed].first;
      fpr_sum += slots[a * config.n_seeds + seed].second;
    }
    out.curve.push_back({config.k_sweep[a], tpr_sum / config.n_seeds, fpr_sum / config.n_seeds});
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& pt : out.curve) pts.emplace_back(pt.fpr, pt.tpr);
  out.auc = trapezoid_auc(std::move(pts), method == RocMethod::Algorithm1);
  return out;
}

AllocationStudy allocation_study(const SymMatrix& sigma, int k_total, int r,
                                 relax::RelaxationKind kind,
                                 const altmin::AltMinConfig& base_config) {
  AllocationStudy out;
  const auto allocations = enumerate_allocations(k_total, r, sigma.dim());
  for (const auto& alloc : allocations) {
    altmin::AltMinConfig cfg = base_config;
    cfg.k_list = alloc;
    altmin::FixedResult run = algorithm2_fixed(sigma, cfg, kind);
    AllocationStudyRow row;
    row.allocation = alloc;
    row.upper_bound = run.relaxation.upper_bound;
    row.objective = run.solution.variance_fraction;
    row.violation = run.solution.violation;
    row.asymmetry = kl_asymmetry(alloc, k_total, r, sigma.dim());
    row.gap = run.gap;
    out.rows.push_back(std::move(row));
  }
  for (size_t i = 0; i < out.rows.size(); ++i) {
    if (std::all_of(out.rows[i].allocation.begin(), out.rows[i].allocation.end(),
                    [&](int kt) { return kt * r == k_total; }))
      out.symmetric_index = static_cast<int>(i);
    if (out.rows[i].objective > out.rows[out.best_index].objective)
      out.best_index = static_cast<int>(i);
  }
  if (out.symmetric_index >= 0) {
    const double sym_obj = out.rows[out.symmetric_index].objective;
    if (sym_obj > 0)
      out.improvement_pct = 100.0 * (out.rows[out.best_index].objective - sym_obj) / sym_obj;
  }
  return out;
}

}  // namespace ospca::eval
