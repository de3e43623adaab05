#include "ospca/relax/builders.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ospca::relax {

using conic::ConeKind;
using conic::ConicProgram;
using conic::LinExpr;

const char* to_string(RelaxationKind k) {
  switch (k) {
    case RelaxationKind::BasicExtended: return "basic";
    case RelaxationKind::DisjointIneq: return "disjoint";
    case RelaxationKind::DisjointIneqPerComponent: return "disjoint-pc";
    case RelaxationKind::PermIneq: return "perm";
    case RelaxationKind::SocPermIneq: return "soc";
    case RelaxationKind::SocPermIneqWithCuts: return "soc-cuts";
  }
  return "?";
}

RelaxationKind kind_from_string(const std::string& name) {
  if (name == "basic") return RelaxationKind::BasicExtended;
  if (name == "disjoint") return RelaxationKind::DisjointIneq;
  if (name == "disjoint-pc") return RelaxationKind::DisjointIneqPerComponent;
  if (name == "perm") return RelaxationKind::PermIneq;
  if (name == "soc") return RelaxationKind::SocPermIneq;
  if (name == "soc-cuts") return RelaxationKind::SocPermIneqWithCuts;
  throw Error("unknown relaxation kind: " + name);
}

bool kind_requires_per_component(RelaxationKind k) {
  return k == RelaxationKind::DisjointIneqPerComponent || k == RelaxationKind::PermIneq ||
         k == RelaxationKind::SocPermIneq || k == RelaxationKind::SocPermIneqWithCuts;
}

Matrix BlockHandle::value(const Vector& x) const {
  Matrix m(side, side);
  int idx = 0;
  for (int j = 0; j < side; ++j)
    for (int i = j; i < side; ++i, ++idx) {
      const double v = lower[idx].eval(x);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

Matrix BuiltRelaxation::sym_value(const SymVarIds& v, const Vector& x) const {
  Matrix m(v.n, v.n);
  for (int j = 0; j < v.n; ++j)
    for (int i = j; i < v.n; ++i) m(i, j) = m(j, i) = x(v(i, j));
  return m;
}

namespace {

LinExpr ev(int id) { return id < 0 ? LinExpr(0.0) : LinExpr::var(id); }

struct Builder {
  const SymMatrix& sigma;
  int p, r, k_total;
  std::vector<int> k_per;  // empty if total-only
  RelaxationKind kind;
  bool psd_mode;  // full PSD cones vs 2x2 minors

  BuiltRelaxation out;
  ConicProgram& prog = out.prog;

  SymVarIds new_sym(int n) {
    SymVarIds v;
    v.n = n;
    v.ids = prog.new_vars(conic::svec_size(n));
    return v;
  }
  BlockSymVarIds new_block_sym(int n, int block) {
    BlockSymVarIds v;
    v.n = n;
    v.block = block;
    v.ids = prog.new_vars(conic::svec_size(block));
    return v;
  }

  std::vector<LinExpr> sym_lower(int side, const std::function<LinExpr(int, int)>& f) {
    std::vector<LinExpr> entries;
    entries.reserve(conic::svec_size(side));
    for (int j = 0; j < side; ++j)
      for (int i = j; i < side; ++i) entries.push_back(f(i, j));
    return entries;
  }

  // PSD membership of a matrix-valued affine map, either as a PSD cone or as
  // the 2x2-minor second-order system. Registers the block for cuts when in
  // minor mode.
  void psd_block(const std::string& name, int side, const std::function<LinExpr(int, int)>& f) {
    if (psd_mode) {
      prog.add_psd(sym_lower(side, f), side);
      return;
    }
    for (int i = 0; i < side; ++i) prog.add_nonneg(f(i, i));
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < i; ++j)
        prog.add_rsoc(0.5 * f(i, i), f(j, j), {f(i, j)});
    BlockHandle h;
    h.name = name;
    h.side = side;
    h.lower = sym_lower(side, f);
    out.psd_blocks.push_back(std::move(h));
  }

  // Symmetric split variables for the entrywise absolute value of a
  // symmetric matrix variable; returns per-row l1 expressions.
  std::vector<LinExpr> abs_row_sums(const SymVarIds& mvar, SymVarIds* pos_out,
                                    SymVarIds* neg_out) {
    SymVarIds pos = new_sym(mvar.n), neg = new_sym(mvar.n);
    if (pos_out) *pos_out = pos;
    if (neg_out) *neg_out = neg;
    for (int j = 0; j < mvar.n; ++j)
      for (int i = j; i < mvar.n; ++i) {
        prog.add_zero(ev(mvar(i, j)) - ev(pos(i, j)) + ev(neg(i, j)));
        prog.add_nonneg(ev(pos(i, j)));
        prog.add_nonneg(ev(neg(i, j)));
      }
    std::vector<LinExpr> rows(mvar.n);
    for (int i = 0; i < mvar.n; ++i)
      for (int j = 0; j < mvar.n; ++j) {
        rows[i].add(pos(i, j), 1.0);
        rows[i].add(neg(i, j), 1.0);
      }
    return rows;
  }

  void build() {
    out.kind = kind;
    out.p = p;
    out.r = r;
    out.k_total = k_total;
    out.k_per = k_per;

    const bool per = !k_per.empty();
    const bool strengthened = kind != RelaxationKind::BasicExtended;
    const bool perm = kind == RelaxationKind::PermIneq || kind == RelaxationKind::SocPermIneq ||
                      kind == RelaxationKind::SocPermIneqWithCuts;
    const bool big_m = !perm;
    const bool t_perspective = kind == RelaxationKind::DisjointIneq ||
                               kind == RelaxationKind::DisjointIneqPerComponent;

    // Variables.
    out.z.assign(r, {});
    for (int t = 0; t < r; ++t) out.z[t] = prog.new_vars(p);
    out.w = prog.new_vars(p);
    out.y = new_sym(p);
    for (int t = 0; t < r; ++t) out.yt.push_back(new_sym(p));

    // Objective <Y, Sigma>.
    for (int j = 0; j < p; ++j) {
      prog.add_objective(out.y(j, j), sigma(j, j));
      for (int i = j + 1; i < p; ++i) prog.add_objective(out.y(i, j), 2.0 * sigma(i, j));
    }

    // Coupling Y = sum_t Y^t and unit traces.
    for (int j = 0; j < p; ++j)
      for (int i = j; i < p; ++i) {
        LinExpr e = ev(out.y(i, j));
        for (int t = 0; t < r; ++t) e -= ev(out.yt[t](i, j));
        prog.add_zero(e);
      }
    for (int t = 0; t < r; ++t) {
      LinExpr tr;
      for (int i = 0; i < p; ++i) tr.add(out.yt[t](i, i), 1.0);
      prog.add_zero(tr - LinExpr(1.0));
    }

    // Boxes and the support-mass linearization w <= Z e, w <= e.
    for (int t = 0; t < r; ++t)
      for (int i = 0; i < p; ++i) prog.add_box(out.z[t][i], 0.0, 1.0);
    for (int i = 0; i < p; ++i) {
      prog.add_box(out.w[i], 0.0, 1.0);
      LinExpr ze;
      for (int t = 0; t < r; ++t) ze.add(out.z[t][i], 1.0);
      prog.add_nonneg(ze - ev(out.w[i]));
    }

    // Budgets.
    {
      LinExpr tot;
      for (int t = 0; t < r; ++t)
        for (int i = 0; i < p; ++i) tot.add(out.z[t][i], 1.0);
      prog.add_nonneg(LinExpr(double(k_total)) - tot);
    }
    if (per) {
      for (int t = 0; t < r; ++t) {
        LinExpr col;
        for (int i = 0; i < p; ++i) col.add(out.z[t][i], 1.0);
        prog.add_nonneg(LinExpr(double(k_per[t])) - col);
      }
    }

    // Support coupling |Y^t_ij| <= M_ij Z_it with M_ii = 1, M_ij = 1/2.
    if (big_m) {
      for (int t = 0; t < r; ++t)
        for (int i = 0; i < p; ++i)
          for (int j = 0; j < p; ++j) {
            const double m = i == j ? 1.0 : 0.5;
            prog.add_nonneg(m * ev(out.z[t][i]) - ev(out.yt[t](i, j)));
            prog.add_nonneg(m * ev(out.z[t][i]) + ev(out.yt[t](i, j)));
          }
    }

    if (strengthened) {
      // Aggregate rows on Y.
      std::vector<LinExpr> y_l1 = abs_row_sums(out.y, &out.y_pos, &out.y_neg);
      for (int i = 0; i < p; ++i) {
        std::vector<LinExpr> row(p);
        for (int j = 0; j < p; ++j) row[j] = ev(out.y(i, j));
        prog.add_rsoc(0.5 * r * ev(out.y(i, i)), ev(out.w[i]), row);
        prog.add_rsoc(0.5 * k_total * ev(out.y(i, i)), ev(out.w[i]), {y_l1[i]});
        std::vector<LinExpr> offdiag;
        offdiag.reserve(p - 1);
        for (int j = 0; j < p; ++j)
          if (j != i) offdiag.push_back(ev(out.y(j, i)));
        prog.add_rsoc(0.5 * (k_total - r + 1) * ev(out.w[i]),
                      ev(out.w[i]) - ev(out.y(i, i)), offdiag);
      }
    }

    if (t_perspective) {
      for (int t = 0; t < r; ++t)
        for (int i = 0; i < p; ++i) {
          std::vector<LinExpr> row(p);
          for (int j = 0; j < p; ++j) row[j] = ev(out.yt[t](i, j));
          prog.add_rsoc(0.5 * ev(out.yt[t](i, i)), ev(out.z[t][i]), row);
        }
    }

    // Per-component strengthening, available once k_t is fixed.
    if (per && strengthened) {
      out.yt_pos.resize(r);
      out.yt_neg.resize(r);
      for (int t = 0; t < r; ++t) {
        std::vector<LinExpr> yt_l1 = abs_row_sums(out.yt[t], &out.yt_pos[t], &out.yt_neg[t]);
        const double kt = k_per[t];
        for (int i = 0; i < p; ++i) {
          prog.add_rsoc(0.5 * kt * ev(out.yt[t](i, i)), ev(out.z[t][i]), {yt_l1[i]});
          std::vector<LinExpr> offdiag;
          offdiag.reserve(p - 1);
          for (int j = 0; j < p; ++j)
            if (j != i) offdiag.push_back(ev(out.yt[t](j, i)));
          prog.add_rsoc(0.5 * (kt - 1.0) * ev(out.z[t][i]),
                        ev(out.z[t][i]) - ev(out.yt[t](i, i)), offdiag);
        }
      }
    }

    if (perm) {
      for (int t = 0; t < r; ++t) {
        const int kt = k_per[t];
        out.ft.push_back(new_sym(p));
        out.gt.push_back(new_block_sym(p, kt));
        const SymVarIds& F = out.ft[t];
        const BlockSymVarIds& G = out.gt[t];

        // F dominates |Y^t| entrywise.
        for (int j = 0; j < p; ++j)
          for (int i = j; i < p; ++i) {
            prog.add_nonneg(ev(F(i, j)) - ev(out.yt[t](i, j)));
            prog.add_nonneg(ev(F(i, j)) + ev(out.yt[t](i, j)));
          }

        // Sorted rows of the leading block of G.
        for (int i = 0; i < kt; ++i)
          for (int j = 0; j + 1 < kt; ++j)
            prog.add_nonneg(ev(G(i, j)) - ev(G(i, j + 1)));

        // Trace and total-mass ties.
        {
          LinExpr trg, trf, sumg, sumf;
          for (int i = 0; i < kt; ++i) trg.add(G(i, i), 1.0);
          for (int i = 0; i < p; ++i) trf.add(F(i, i), 1.0);
          prog.add_zero(trg - LinExpr(1.0));
          prog.add_zero(trf - LinExpr(1.0));
          for (int i = 0; i < kt; ++i) {
            sumg.add(G(i, i), 1.0);
            for (int j = 0; j < i; ++j) sumg.add(G(i, j), 2.0);
          }
          for (int i = 0; i < p; ++i) {
            sumf.add(F(i, i), 1.0);
            for (int j = 0; j < i; ++j) sumf.add(F(i, j), 2.0);
          }
          prog.add_zero(sumg - sumf);
        }

        // Diagonal majorization: partial sums of diag(G) dominate the sorted
        // partial sums of diag(Y^t), in epigraph form.
        {
          std::vector<int> rd = prog.new_vars(p - 1);
          std::vector<std::vector<int>> td(p);
          for (int i = 0; i < p; ++i) {
            td[i] = prog.new_vars(p - 1);
            for (int j = 0; j + 1 < p; ++j) prog.add_nonneg(ev(td[i][j]));
          }
          out.rd.push_back(rd);
          out.td.push_back(td);
          for (int j = 0; j + 1 < p; ++j) {
            LinExpr lhs;
            for (int i = 0; i <= std::min(j, kt - 1); ++i) lhs.add(G(i, i), 1.0);
            LinExpr rhs = double(j + 1) * ev(rd[j]);
            for (int i = 0; i < p; ++i) rhs.add(td[i][j], 1.0);
            prog.add_nonneg(lhs - rhs);
            for (int i = 0; i < p; ++i)
              prog.add_nonneg(ev(rd[j]) + ev(td[i][j]) - ev(out.yt[t](i, i)));
          }
        }

        // Transportation coupling between Z and diag(F); PSD variant only
        // (the SOC tables were computed without it).
        if (psd_mode) {
          std::vector<std::vector<int>> T(p);
          for (int i = 0; i < p; ++i) T[i] = prog.new_vars(p);
          out.T.push_back(T);
          for (int i = 0; i < p; ++i)
            for (int j = 0; j < i; ++j)
              prog.add_rsoc(0.5 * ev(T[i][j]), ev(T[j][i]), {ev(F(i, j))});
          for (int i = 0; i < p; ++i) prog.add_zero(ev(T[i][i]) - ev(F(i, i)));
          for (int i = 0; i < p; ++i) {
            LinExpr row;
            for (int j = 0; j < p; ++j) row.add(T[i][j], 1.0);
            prog.add_zero(row - ev(out.z[t][i]));
          }
          for (int j = 0; j < p; ++j) {
            LinExpr col;
            for (int i = 0; i < p; ++i) col.add(T[i][j], 1.0);
            prog.add_zero(col - double(kt) * ev(F(j, j)));
          }
          for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
              prog.add_nonneg(ev(T[i][j]));
              prog.add_nonneg(ev(F(j, j)) - ev(T[i][j]));
            }
        }
      }
    }

    // PSD memberships (or their minor systems).
    for (int t = 0; t < r; ++t)
      psd_block("Y" + std::to_string(t), p,
                [&](int i, int j) { return ev(out.yt[t](i, j)); });
    psd_block("DiagW-Y", p, [&](int i, int j) {
      return i == j ? ev(out.w[i]) - ev(out.y(i, i)) : -ev(out.y(i, j));
    });
    if (perm) {
      for (int t = 0; t < r; ++t) {
        psd_block("F" + std::to_string(t), p,
                  [&](int i, int j) { return ev(out.ft[t](i, j)); });
        psd_block("G" + std::to_string(t), out.gt[t].block,
                  [&](int i, int j) { return ev(out.gt[t](i, j)); });
      }
    }
  }
};

BuiltRelaxation run_builder(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                            RelaxationKind kind) {
  budget.validate(sigma.dim(), r);
  if (kind_requires_per_component(kind) && !budget.has_per_component())
    throw BudgetIllPosed(std::string(to_string(kind)) + " requires per-component budgets");
  Builder b{sigma,
            sigma.dim(),
            r,
            budget.k_total(),
            budget.has_per_component() ? *budget.per_component : std::vector<int>{},
            kind,
            kind != RelaxationKind::SocPermIneq && kind != RelaxationKind::SocPermIneqWithCuts};
  // Total-only kinds ignore a per-component split beyond its sum.
  if (kind == RelaxationKind::BasicExtended || kind == RelaxationKind::DisjointIneq)
    b.k_per.clear();
  b.build();
  return std::move(b.out);
}

}  // namespace

BuiltRelaxation build_basic(const SymMatrix& sigma, const SparsityBudget& budget, int r) {
  return run_builder(sigma, budget, r, RelaxationKind::BasicExtended);
}

BuiltRelaxation build_strengthened(const SymMatrix& sigma, const SparsityBudget& budget, int r) {
  return run_builder(sigma, budget, r,
                     budget.has_per_component() ? RelaxationKind::DisjointIneqPerComponent
                                                : RelaxationKind::DisjointIneq);
}

BuiltRelaxation build_perm_invariant(const SymMatrix& sigma, const std::vector<int>& k_list,
                                     int r) {
  return run_builder(sigma, SparsityBudget::of_components(k_list), r, RelaxationKind::PermIneq);
}

BuiltRelaxation build_soc(const SymMatrix& sigma, const std::vector<int>& k_list, int r) {
  return run_builder(sigma, SparsityBudget::of_components(k_list), r, RelaxationKind::SocPermIneq);
}

BuiltRelaxation build(const SymMatrix& sigma, const SparsityBudget& budget, int r,
                      RelaxationKind kind) {
  return run_builder(sigma, budget, r, kind);
}

}  // namespace ospca::relax
