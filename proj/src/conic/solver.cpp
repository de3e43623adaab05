#include "ospca/conic/solver.hpp"

#include "ospca/conic/cones.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <iostream>

namespace ospca::conic {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::NearOptimal: return "near_optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterLimit: return "iter_limit";
  }
  return "?";
}

SolveSettings SolveSettings::for_dim(int p) {
  SolveSettings s;
  if (p <= 13) {
    s.eps_prim = s.eps_dual = s.eps_gap = 1e-7;
  } else if (p <= 34) {
    s.eps_prim = s.eps_dual = s.eps_gap = 1e-6;
  } else {
    s.eps_prim = s.eps_dual = s.eps_gap = 1e-5;
  }
  return s;
}

SolveSettings SolveSettings::with_eps(double eps) const {
  SolveSettings s = *this;
  s.eps_prim = s.eps_dual = s.eps_gap = eps;
  return s;
}

namespace {

struct Scaling {
  Vector d, e;      // row / column equilibration
  double sb = 1.0;  // norm scale of b
  double sc = 1.0;  // norm scale of c
};

// L_inf Ruiz equilibration; rows of SOC/RSOC/PSD slices share one factor so
// cone membership is preserved.
Scaling equilibrate(Eigen::SparseMatrix<double>& a, Vector& b, Vector& c,
                    const std::vector<ConeSpec>& cones, int iters) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  Scaling sc;
  sc.d = Vector::Ones(m);
  sc.e = Vector::Ones(n);
  Vector rn(m), cn(n);
  for (int pass = 0; pass < iters; ++pass) {
    rn.setZero();
    cn.setZero();
    for (int k = 0; k < a.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it) {
        const double v = std::abs(it.value());
        rn(it.row()) = std::max(rn(it.row()), v);
        cn(it.col()) = std::max(cn(it.col()), v);
      }
    int off = 0;
    for (const auto& cone : cones) {
      const int len = cone_rows(cone);
      if (cone.kind != ConeKind::Zero && cone.kind != ConeKind::NonNeg) {
        double mean = 0.0;
        for (int i = 0; i < len; ++i) mean += rn(off + i);
        mean /= len;
        for (int i = 0; i < len; ++i) rn(off + i) = mean;
      }
      off += len;
    }
    bool close = true;
    for (int i = 0; i < m; ++i) {
      double f = rn(i) > 1e-12 ? 1.0 / std::sqrt(rn(i)) : 1.0;
      if (std::abs(1.0 - f) > 1e-3) close = false;
      sc.d(i) *= f;
    }
    for (int j = 0; j < n; ++j) {
      double f = cn(j) > 1e-12 ? 1.0 / std::sqrt(cn(j)) : 1.0;
      if (std::abs(1.0 - f) > 1e-3) close = false;
      sc.e(j) *= f;
    }
    // rebuild scaled copy
    for (int k = 0; k < a.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
        it.valueRef() = it.value() * (rn(it.row()) > 1e-12 ? 1.0 / std::sqrt(rn(it.row())) : 1.0) *
                        (cn(it.col()) > 1e-12 ? 1.0 / std::sqrt(cn(it.col())) : 1.0);
    if (close) break;
  }
  b = sc.d.asDiagonal() * b;
  c = sc.e.asDiagonal() * c;
  sc.sb = std::max(b.norm(), 1e-6);
  sc.sc = std::max(c.norm(), 1e-6);
  b /= sc.sb;
  c /= sc.sc;
  return sc;
}

}  // namespace

ConicSolution solve(const ConicProgram& prog, const SolveSettings& settings,
                    const WarmStart* warm) {
  const int n = prog.num_vars();
  const int m = prog.num_rows();

  // Original (unscaled) data; minimization sense internally.
  Eigen::SparseMatrix<double> a0 = prog.a_sparse();
  Vector b0 = Eigen::Map<const Vector>(prog.b().data(), m);
  Vector c0 = -prog.c_dense();  // minimize -c_max
  const double bnorm0 = b0.norm(), cnorm0 = c0.norm();

  Eigen::SparseMatrix<double> a = a0;
  Vector b = b0, c = c0;
  Scaling sc = equilibrate(a, b, c, prog.cones(), settings.ruiz_iters);

  // KKT factorization of S = [[I, A^T],[A, -I]].
  Eigen::SparseMatrix<double> kkt(n + m, n + m);
  {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(a.nonZeros() + n + m);
    for (int i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
    for (int i = 0; i < m; ++i) trips.emplace_back(n + i, n + i, -1.0);
    for (int k = 0; k < a.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it) {
        trips.emplace_back(n + it.row(), it.col(), it.value());
        trips.emplace_back(it.col(), n + it.row(), it.value());
      }
    kkt.setFromTriplets(trips.begin(), trips.end());
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(kkt);
  if (ldlt.info() != Eigen::Success)
    throw NumericalBreakdown("KKT factorization failed");

  auto solve_m = [&](const Vector& wx, const Vector& wy, Vector& zx, Vector& zy) {
    // Solves zx + A^T zy = wx, -A zx + zy = wy via S [zx; zy] = [wx; -wy].
    Vector rhs(n + m);
    rhs.head(n) = wx;
    rhs.tail(m) = -wy;
    Vector z = ldlt.solve(rhs);
    zx = z.head(n);
    zy = z.tail(m);
  };

  // g = M^{-1} h with h = (c, b).
  Vector gx(n), gy(m);
  solve_m(c, b, gx, gy);
  const double hg = c.dot(gx) + b.dot(gy);

  ConeProjector proj(prog.cones());

  // u = (x, y, tau); v = (0, s, kappa).
  Vector ux = Vector::Zero(n), uy = Vector::Zero(m);
  double utau = 1.0;
  Vector vs = Vector::Zero(m);
  double vkappa = 1.0;
  if (warm && warm->x.size() == n && warm->y.size() == m && warm->s.size() == m) {
    ux = warm->x.cwiseQuotient(sc.e) / sc.sb;
    uy = warm->y.cwiseQuotient(sc.d) / sc.sc;
    vs = warm->s.cwiseProduct(sc.d) / sc.sb;
    utau = 1.0;
    vkappa = 0.0;
  }

  ConicSolution sol;
  sol.x = Vector::Zero(n);
  sol.y = Vector::Zero(m);
  sol.s = Vector::Zero(m);

  Vector wx(n), wy(m), qx(n), qy(m), tx(n), ty(m);
  double best_res = std::numeric_limits<double>::infinity();
  int best_res_iter = 0;

  auto evaluate = [&](ConicSolution& out) -> bool {
    // Unscaled candidate.
    const double tau = std::max(utau, 1e-12);
    Vector x = ux.cwiseProduct(sc.e) * (sc.sb / tau);
    Vector y = uy.cwiseProduct(sc.d) * (sc.sc / tau);
    Vector s = vs.cwiseQuotient(sc.d) * (sc.sb / tau);
    Vector pr = a0 * x + s - b0;
    Vector dr = a0.transpose() * y + c0;
    const double pobj = c0.dot(x);   // minimization objective
    const double dobj = -b0.dot(y);
    out.primal_infeas = pr.norm() / (1.0 + bnorm0);
    out.dual_infeas = dr.norm() / (1.0 + cnorm0);
    out.rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    out.objective = -pobj;        // back to maximization
    out.dual_objective = -dobj;   // b^T y in the max sense
    out.x = std::move(x);
    out.y = std::move(y);
    out.s = std::move(s);
    return out.primal_infeas <= settings.eps_prim && out.dual_infeas <= settings.eps_dual &&
           out.rel_gap <= settings.eps_gap;
  };

  int iter = 0;
  for (; iter < settings.max_iter; ++iter) {
    // linear step: (I+Q)^{-1} (u + v)
    wx = ux;
    wy = uy + vs;
    const double wtau = utau + vkappa;
    solve_m(wx, wy, qx, qy);
    const double qtau = (wtau + c.dot(qx) + b.dot(qy)) / (1.0 + hg);
    tx = qx - gx * qtau;
    ty = qy - gy * qtau;
    const double ttau = qtau;

    // over-relaxed reflection, then cone projection
    const double A = settings.alpha;
    Vector px = A * tx + (1.0 - A) * ux;
    Vector py = A * ty + (1.0 - A) * uy - vs;
    double ptau = A * ttau + (1.0 - A) * utau - vkappa;
    // x free; y in dual cone; tau >= 0
    proj.project_dual(py);
    if (ptau < 0.0) ptau = 0.0;

    // v update
    vs += py - (A * ty + (1.0 - A) * uy);
    vkappa += ptau - (A * ttau + (1.0 - A) * utau);
    ux = std::move(px);
    uy = std::move(py);
    utau = ptau;

    if (!std::isfinite(utau) || !std::isfinite(ux.sum()) || !std::isfinite(vs.sum()))
      throw NumericalBreakdown("non-finite iterate");

    if ((iter + 1) % settings.check_interval == 0) {
      if (evaluate(sol)) {
        sol.status = SolveStatus::Optimal;
        sol.iterations = iter + 1;
        return sol;
      }
      const double worst =
          std::max({sol.primal_infeas, sol.dual_infeas, sol.rel_gap});
      if (worst < best_res - settings.stall_tol) {
        best_res = worst;
        best_res_iter = iter;
      } else if (iter - best_res_iter > settings.stall_window) {
        sol.stalled = true;
        break;
      }
      if (settings.verbose && (iter + 1) % (settings.check_interval * 40) == 0)
        std::cerr << "iter " << iter + 1 << " pri " << sol.primal_infeas << " dua "
                  << sol.dual_infeas << " gap " << sol.rel_gap << "\n";
    }
  }

  evaluate(sol);
  sol.iterations = iter;

  // Certificates when tau vanished.
  if (utau <= 1e-9 && vkappa > 1e-9) {
    const double by = b.dot(uy);
    const double cx = c.dot(ux);
    if (by < -1e-12 && (a.transpose() * uy).norm() <= 1e-6 * std::abs(by)) {
      sol.status = SolveStatus::Infeasible;
      return sol;
    }
    if (cx < -1e-12) {
      Vector axs = a * ux + vs;
      if (axs.norm() <= 1e-6 * std::abs(cx)) {
        sol.status = SolveStatus::Unbounded;
        return sol;
      }
    }
  }
  const double loose = 1e3;
  if (sol.primal_infeas <= loose * settings.eps_prim && sol.dual_infeas <= loose * settings.eps_dual &&
      sol.rel_gap <= loose * settings.eps_gap)
    sol.status = SolveStatus::NearOptimal;
  else
    sol.status = SolveStatus::IterLimit;
  return sol;
}

}  // namespace ospca::conic
