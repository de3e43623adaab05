#pragma once

#include "ospca/conic/program.hpp"
#include "ospca/types.hpp"

#include <string>
#include <vector>

namespace ospca::relax {

enum class RelaxationKind {
  BasicExtended,
  DisjointIneq,
  DisjointIneqPerComponent,
  PermIneq,
  SocPermIneq,
  SocPermIneqWithCuts,
};

const char* to_string(RelaxationKind k);
RelaxationKind kind_from_string(const std::string& name);
bool kind_requires_per_component(RelaxationKind k);

/// Lower-triangle (column-major) variable ids of a symmetric matrix variable.
struct SymVarIds {
  int n = 0;
  std::vector<int> ids;

  int operator()(int i, int j) const {
    if (i < j) std::swap(i, j);
    return ids[j * n - j * (j - 1) / 2 + (i - j)];
  }
  bool empty() const { return ids.empty(); }
};

/// Symmetric matrix variable whose support is the leading block of side
/// `block`; entries outside the block are the constant zero (id -1).
struct BlockSymVarIds {
  int n = 0;
  int block = 0;
  std::vector<int> ids;  // lower col-major over the block only

  int operator()(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i >= block) return -1;
    return ids[j * block - j * (j - 1) / 2 + (i - j)];
  }
};

/// A symmetric-matrix-valued affine map of the program variables; used to
/// evaluate blocks that should be PSD and to emit eigenvector cuts.
struct BlockHandle {
  std::string name;
  int side = 0;
  std::vector<conic::LinExpr> lower;  // col-major lower triangle

  Matrix value(const Vector& x) const;
};

/// Built cone program plus the variable maps needed to extract results.
struct BuiltRelaxation {
  conic::ConicProgram prog;
  RelaxationKind kind = RelaxationKind::BasicExtended;
  int p = 0, r = 0, k_total = 0;
  std::vector<int> k_per;  // empty when only a total budget was supplied

  std::vector<std::vector<int>> z;  // [t][i]
  std::vector<int> w;
  SymVarIds y;
  std::vector<SymVarIds> yt;
  SymVarIds y_pos, y_neg;                  // absolute-value splits of Y
  std::vector<SymVarIds> yt_pos, yt_neg;   // splits of Y^t (per-component kinds)
  std::vector<SymVarIds> ft;               // perm kinds only
  std::vector<BlockSymVarIds> gt;          // perm kinds only
  std::vector<std::vector<std::vector<int>>> T;   // [t][i][j], PermIneq only
  std::vector<std::vector<int>> rd;               // [t][j]
  std::vector<std::vector<std::vector<int>>> td;  // [t][i][j]
  std::vector<BlockHandle> psd_blocks;

  Matrix sym_value(const SymVarIds& v, const Vector& x) const;
};

/// Extended reformulation relaxation with big-M support coupling.
BuiltRelaxation build_basic(const SymMatrix& sigma, const SparsityBudget& budget, int r);

/// build_basic plus the aggregate and per-component second-order-cone
/// strengthening inequalities ((9)-(10) only when per-component budgets are
/// supplied, i.e. kind DisjointIneqPerComponent).
BuiltRelaxation build_strengthened(const SymMatrix& sigma, const SparsityBudget& budget, int r);

/// Permutation-invariant lift with sorted-absolute-value blocks and the
/// transportation coupling; PSD cones on every lifted block.
BuiltRelaxation build_perm_invariant(const SymMatrix& sigma, const std::vector<int>& k_list, int r);

/// Second-order-cone variant: PSD memberships replaced by 2x2 minors. The
/// transportation coupling is not part of this variant (see README notes);
/// the PSD-intended blocks are registered for eigenvector cuts.
BuiltRelaxation build_soc(const SymMatrix& sigma, const std::vector<int>& k_list, int r);

BuiltRelaxation build(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                      RelaxationKind kind);

}  // namespace ospca::relax
