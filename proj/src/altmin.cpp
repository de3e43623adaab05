#include "ospca/altmin.hpp"

#include "ospca/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ospca::altmin {

double PenaltySchedule::lambda(int l) const {
  switch (rule) {
    case Rule::Correlation: return l <= 50 ? double(l) : 50.0 + 5.0 * (l - 50);
    case Rule::Linear: return slope * l;
    case Rule::Custom:
      if (l < 1 || l > static_cast<int>(custom.size()))
        throw Error("custom penalty schedule too short");
      return custom[l - 1];
  }
  return double(l);
}

namespace {

Matrix shifted_subproblem(const Matrix& sigma, const std::vector<Matrix>& lifted, int skip,
                          double lambda, double eps_offset) {
  Matrix m = sigma;
  for (size_t t = 0; t < lifted.size(); ++t) {
    if (static_cast<int>(t) == skip || lifted[t].size() == 0) continue;
    m -= lambda * lifted[t];
  }
  const double offset = eps_offset - min_eigenvalue(m);
  m += offset * Matrix::Identity(m.rows(), m.cols());
  return m;
}

// One zero-penalty sweep; used only to calibrate the covariance penalty
// scale, its iterates are discarded.
double probe_scale(const Matrix& sigma, const AltMinConfig& config, bool* degenerate) {
  const int p = static_cast<int>(sigma.rows());
  const int r = static_cast<int>(config.k_list.size());
  Matrix u(p, r);
  std::vector<Matrix> lifted(r);
  for (int t = 0; t < r; ++t) {
    Matrix m = shifted_subproblem(sigma, lifted, t, 0.0, config.eps_offset);
    rank1::Rank1Solution sol = rank1::solve_rank1(m, config.k_list[t], config.subsolver);
    u.col(t) = sol.u;
    lifted[t] = sol.u * sol.u.transpose();
  }
  const double viol = orthogonality_violation(u);
  if (viol < 1e-12) {
    *degenerate = true;
    return 1.0;
  }
  const double objective = (u.transpose() * sigma * u).trace();
  return objective / (p * viol);
}

}  // namespace

AltMinResult algorithm2(const SymMatrix& sigma, const AltMinConfig& config) {
  const int r = static_cast<int>(config.k_list.size());
  if (r < 2) throw Error("alternating minimization needs at least two components");
  SparsityBudget::of_components(config.k_list).validate(sigma.dim(), r);
  const int p = sigma.dim();
  const Matrix& s = sigma.entries();

  AltMinResult out;
  out.trace.lambda_scale = 1.0;
  if (sigma.kind() == MatrixKind::Covariance) {
    bool degenerate = false;
    out.trace.lambda_scale = probe_scale(s, config, &degenerate);
    out.trace.degenerate_scaling = degenerate;
  }

  Matrix u = Matrix::Zero(p, r);
  std::vector<Matrix> lifted(r);
  std::vector<std::vector<int>> supports(r), prev_supports;
  int stable = 0;
  const double tr = sigma.trace();

  for (int l = 1; l <= config.iterations; ++l) {
    const double lambda = config.schedule.lambda(l) * out.trace.lambda_scale;
    for (int t = 0; t < r; ++t) {
      Matrix m = shifted_subproblem(s, lifted, t, lambda, config.eps_offset);
      rank1::Rank1Solution sol = rank1::solve_rank1(m, config.k_list[t], config.subsolver);
      u.col(t) = sol.u;
      lifted[t] = sol.u * sol.u.transpose();
      supports[t] = sol.support;
      if (config.track_history) {
        TraceRow row;
        row.iteration = l;
        row.component = t;
        row.lambda = lambda;
        row.objective = (u.transpose() * s * u).trace() / tr;
        row.violation = orthogonality_violation(u);
        row.supports = supports;
        out.trace.rows.push_back(std::move(row));
      }
    }
    out.trace.sweeps_run = l;
    if (config.early_stop) {
      const double viol = orthogonality_violation(u);
      if (viol < config.stop_violation && supports == prev_supports) {
        if (++stable >= config.stop_stable_sweeps) break;
      } else {
        stable = 0;
      }
      prev_supports = supports;
    }
  }
  out.solution = make_component_set(u, sigma);
  return out;
}

std::vector<int> variable_fix(const Matrix& zstar, double threshold) {
  if (threshold < 0) throw Error("negative fixing threshold");
  std::vector<int> active;
  for (int i = 0; i < zstar.rows(); ++i)
    if (zstar.row(i).sum() >= threshold) active.push_back(i);
  if (active.empty()) throw EmptyActiveSet("variable fixing removed every index");
  return active;
}

FixedResult algorithm2_fixed(const SymMatrix& sigma, const AltMinConfig& config,
                             relax::RelaxationKind kind) {
  return algorithm2_fixed(sigma, config, kind, conic::SolveSettings::for_dim(sigma.dim()));
}

FixedResult algorithm2_fixed(const SymMatrix& sigma, const AltMinConfig& config,
                             relax::RelaxationKind kind, const conic::SolveSettings& settings) {
  const int r = static_cast<int>(config.k_list.size());
  FixedResult out;
  out.relaxation = relax::upper_bound(
      sigma, SparsityBudget::of_components(config.k_list), r, kind, settings);
  AltMinResult inner;
  try {
    out.active = variable_fix(out.relaxation.zstar, config.fixing_threshold);
  } catch (const EmptyActiveSet&) {
    out.fix_fallback = true;
  }
  if (out.fix_fallback || static_cast<int>(out.active.size()) == sigma.dim()) {
    if (!out.fix_fallback) {
      // nothing removed; run unrestricted without re-indexing
    }
    inner = algorithm2(sigma, config);
    out.solution = std::move(inner.solution);
  } else {
    const int max_kt = *std::max_element(config.k_list.begin(), config.k_list.end());
    if (static_cast<int>(out.active.size()) < max_kt) {
      // keep enough indices for the largest component budget
      std::vector<char> in(sigma.dim(), 0);
      for (int i : out.active) in[i] = 1;
      for (int i = 0; i < sigma.dim() && static_cast<int>(out.active.size()) < max_kt; ++i)
        if (!in[i]) out.active.push_back(i);
      std::sort(out.active.begin(), out.active.end());
    }
    SymMatrix restricted(principal_submatrix(sigma.entries(), out.active), sigma.kind());
    inner = algorithm2(restricted, config);
    Matrix u = Matrix::Zero(sigma.dim(), r);
    for (size_t a = 0; a < out.active.size(); ++a) u.row(out.active[a]) = inner.solution.U.row(a);
    out.solution = make_component_set(u, sigma);
  }
  out.trace = std::move(inner.trace);
  out.gap = out.relaxation.upper_bound <= 0.0
                ? 0.0
                : (out.relaxation.upper_bound - out.solution.variance_fraction) /
                      out.relaxation.upper_bound;
  return out;
}

}  // namespace ospca::altmin
