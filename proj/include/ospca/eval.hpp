#pragma once

#include "ospca/altmin.hpp"
#include "ospca/covmodel.hpp"
#include "ospca/rank1.hpp"
#include "ospca/types.hpp"

namespace ospca::eval {

/// Sequential rank-1 solves with projection deflation. Objective and
/// violation are measured against the original matrix; the result need not
/// be orthogonal.
ComponentSet deflation_baseline(const SymMatrix& sigma, const std::vector<int>& k_list,
                                rank1::Policy policy = rank1::Policy::Auto);

/// Micro-averaged support recovery rates under the better of the two
/// column-to-truth assignments (r = 2 protocol).
std::pair<double, double> tpr_fpr(const Matrix& u_hat, const std::vector<int>& support1,
                                  const std::vector<int>& support2);

enum class RocMethod { Algorithm1, Algorithm2Fixed, DeflationBaseline };
RocMethod roc_method_from_string(const std::string& name);

struct RocPoint {
  int k = 0;
  double tpr = 0.0;
  double fpr = 0.0;
};

struct RocConfig {
  int p = 50;
  double sigma_signal = 2.0;
  int k_true = 20;
  double q = 0.05;
  std::vector<int> k_sweep = {5, 10, 15, 20, 25, 30, 40, 50};
  int n_seeds = 20;
  std::uint64_t seed_base = 0;
  rank1::Policy subsolver = rank1::Policy::GreedySwaps;
  relax::RelaxationKind fix_kind = relax::RelaxationKind::DisjointIneqPerComponent;
  double fix_eps = 1e-5;
  int fix_max_iter = 20000;
  int iterations = 200;
  int jobs = 1;  // fan-out across (k, seed) tasks; reduce order is fixed
};

struct RocResult {
  std::vector<RocPoint> curve;  // fpr-sorted means per swept k
  double auc = 0.0;
  RocMethod method;
};

/// Sweeps the per-component budget, averages rates over seeded instances and
/// integrates the fpr-sorted curve (trapezoid, (0,0) prepended; (1,1)
/// appended for the disjoint rounding method whose curve cannot reach it).
RocResult roc_experiment(RocMethod method, const RocConfig& config);

struct AllocationStudyRow {
  std::vector<int> allocation;
  double upper_bound = 0.0;
  double objective = 0.0;
  double violation = 0.0;
  double asymmetry = 0.0;
  double gap = 0.0;
};

struct AllocationStudy {
  std::vector<AllocationStudyRow> rows;
  int symmetric_index = -1;  // row of the (k/r,...) allocation, -1 if k%r != 0
  int best_index = 0;        // argmax objective
  double improvement_pct = 0.0;
};

/// Bound plus alternating-minimization objective for every allocation of the
/// total budget, with the symmetric/best comparison.
AllocationStudy allocation_study(const SymMatrix& sigma, int k_total, int r,
                                 relax::RelaxationKind kind,
                                 const altmin::AltMinConfig& base_config);

}  // namespace ospca::eval
