#pragma once

#include "ospca/rank1.hpp"
#include "ospca/relax/solve.hpp"
#include "ospca/types.hpp"

#include <optional>

namespace ospca::altmin {

/// Penalty growth rule per outer iteration.
struct PenaltySchedule {
  enum class Rule { Correlation, Linear, Custom };
  Rule rule = Rule::Correlation;
  double slope = 1.0;                 // Linear
  std::vector<double> custom;        // Custom

  /// Correlation rule: l for l <= 50, then 50 + 5 (l - 50).
  double lambda(int l) const;
};

struct AltMinConfig {
  std::vector<int> k_list;
  int iterations = 100;  // L
  PenaltySchedule schedule;
  double eps_offset = 1e-6;
  double fixing_threshold = 1e-4;
  rank1::Policy subsolver = rank1::Policy::Auto;
  bool track_history = true;
  // Optional early stop: violation < stop_violation and unchanged supports
  // for stop_stable_sweeps consecutive sweeps.
  bool early_stop = false;
  double stop_violation = 1e-6;
  int stop_stable_sweeps = 3;
};

struct TraceRow {
  int iteration = 0;
  int component = 0;
  double lambda = 0.0;
  double objective = 0.0;  // variance fraction so far
  double violation = 0.0;
  std::vector<std::vector<int>> supports;
};

struct AltMinTrace {
  std::vector<TraceRow> rows;
  double lambda_scale = 1.0;
  bool degenerate_scaling = false;  // the probe sweep was already orthogonal
  int sweeps_run = 0;
};

struct AltMinResult {
  ComponentSet solution;
  AltMinTrace trace;
};

/// Sweeps penalized single-component subproblems with an increasing
/// orthogonality penalty. Covariance inputs scale the penalty by
/// <U U^T, Sigma> / (p ||U^T U - I||_1) measured on a zero-penalty sweep.
AltMinResult algorithm2(const SymMatrix& sigma, const AltMinConfig& config);

/// Indices whose fractional support mass reaches the threshold.
std::vector<int> variable_fix(const Matrix& zstar, double threshold);

struct FixedResult {
  ComponentSet solution;
  AltMinTrace trace;
  relax::RelaxationResult relaxation;
  std::vector<int> active;
  bool fix_fallback = false;  // empty active set, ran unrestricted
  double gap = 0.0;
};

/// Solves the relaxation, restricts to the active index set, runs
/// algorithm2 on the restricted matrix and zero-pads the result.
FixedResult algorithm2_fixed(const SymMatrix& sigma, const AltMinConfig& config,
                             relax::RelaxationKind kind);
FixedResult algorithm2_fixed(const SymMatrix& sigma, const AltMinConfig& config,
                             relax::RelaxationKind kind, const conic::SolveSettings& settings);

}  // namespace ospca::altmin
