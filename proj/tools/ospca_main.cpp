#include "ospca/allocations.hpp"
#include "ospca/io.hpp"
#include "ospca/rounding.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace ospca;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInternal = 4;

SymMatrix load_matrix(const std::string& spec, bool from_rows, bool standardize) {
  if (spec == "pitprops") return pitprops();
  if (spec.rfind("identity:", 0) == 0) {
    const int n = std::stoi(spec.substr(9));
    return SymMatrix(Matrix::Identity(n, n), MatrixKind::Correlation);
  }
  if (from_rows) return correlation_from_data(read_dataset_csv(spec), standardize);
  return read_matrix_csv(spec, standardize ? MatrixKind::Correlation : MatrixKind::Covariance);
}

SparsityBudget make_budget(int k, const std::vector<int>& kt) {
  if (!kt.empty()) {
    SparsityBudget b = SparsityBudget::of_components(kt);
    if (k > 0 && k != b.k_total()) throw BudgetIllPosed("--k disagrees with --kt");
    return b;
  }
  if (k <= 0) throw BudgetIllPosed("provide --k and/or --kt");
  return SparsityBudget::of_total(k);
}

relax::RelaxationKind dispatch_kind(const std::string& name, int p, bool per_component) {
  if (name != "auto") return relax::kind_from_string(name);
  if (!per_component) return relax::RelaxationKind::DisjointIneq;
  if (p <= 50) return relax::RelaxationKind::PermIneq;
  if (p <= 200) return relax::RelaxationKind::SocPermIneqWithCuts;
  return relax::RelaxationKind::SocPermIneq;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write " + out_path);
    f << j.dump(2) << "\n";
  }
}

struct CommonOpts {
  std::string data;
  bool from_rows = false;
  bool no_standardize = false;
  std::string out;
  int r = 2;
  int k = 0;
  std::vector<int> kt;
  std::string kind = "auto";
  double eps = 0.0;
  int max_iter = 0;
  bool raw = false;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_budget) {
  cmd->add_option("--data", o.data, "pitprops | identity:N | csv path")->required();
  cmd->add_flag("--from-rows", o.from_rows, "treat the csv as an n x p dataset");
  cmd->add_flag("--no-standardize", o.no_standardize,
                "dataset path: sample covariance instead of correlation");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--r", o.r, "number of components")->required();
  if (needs_budget) {
    cmd->add_option("--k", o.k, "total sparsity budget");
    cmd->add_option("--kt", o.kt, "per-component budgets")->delimiter(',');
  }
  cmd->add_option("--kind", o.kind, "basic|disjoint|disjoint-pc|perm|soc|soc-cuts|auto");
  cmd->add_option("--eps", o.eps, "solver tolerance override");
  cmd->add_option("--max-iter", o.max_iter, "solver iteration cap override");
  cmd->add_flag("--raw", o.raw, "report unnormalized objectives");
  cmd->add_flag("--timings", o.timings, "include wall-clock timings in the output");
}

conic::SolveSettings settings_for(const CommonOpts& o, int p) {
  conic::SolveSettings s = conic::SolveSettings::for_dim(p);
  if (o.eps > 0) s = s.with_eps(o.eps);
  if (o.max_iter > 0) s.max_iter = o.max_iter;
  return s;
}

int cmd_bound(const CommonOpts& o, bool enumerate) {
  SymMatrix sigma = load_matrix(o.data, o.from_rows, !o.no_standardize);
  const auto t0 = std::chrono::steady_clock::now();
  json j;
  if (enumerate) {
    if (o.k <= 0) throw BudgetIllPosed("--enumerate-allocations needs --k");
    const auto kind = dispatch_kind(o.kind == "auto" ? "perm" : o.kind, sigma.dim(), true);
    json rows = json::array();
    std::vector<int> best_alloc;
    double best = -1.0;
    for (const auto& alloc : enumerate_allocations(o.k, o.r, sigma.dim())) {
      auto res = relax::upper_bound(sigma, SparsityBudget::of_components(alloc), o.r, kind,
                                    settings_for(o, sigma.dim()));
      const double ub = o.raw ? res.raw_objective : res.upper_bound;
      rows.push_back({{"allocation", alloc}, {"upper_bound", ub}, {"cuts", res.cuts_added}});
      if (res.upper_bound > best) {
        best = res.upper_bound;
        best_alloc = alloc;
      }
    }
    j["kind"] = relax::to_string(kind);
    j["rows"] = std::move(rows);
    j["worst_case"] = {{"allocation", best_alloc},
                       {"upper_bound", o.raw ? best * sigma.trace() : best}};
  } else {
    SparsityBudget budget = make_budget(o.k, o.kt);
    const auto kind = dispatch_kind(o.kind, sigma.dim(), budget.has_per_component());
    auto res = relax::upper_bound(sigma, budget, o.r, kind, settings_for(o, sigma.dim()));
    j = io::relaxation_json(res, budget);
    if (o.raw) j["upper_bound"] = res.raw_objective;
  }
  if (o.timings)
    j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(j, o.out);
  return kExitOk;
}

int cmd_solve(const CommonOpts& o, const std::string& method, const std::string& subsolver,
              int iterations, const std::string& trace_out, const std::string& schedule) {
  SymMatrix sigma = load_matrix(o.data, o.from_rows, !o.no_standardize);
  SparsityBudget budget = make_budget(o.k, o.kt);
  const auto kind = dispatch_kind(o.kind, sigma.dim(), budget.has_per_component());
  const auto t0 = std::chrono::steady_clock::now();
  json j;

  altmin::AltMinConfig ac;
  if (budget.has_per_component()) ac.k_list = *budget.per_component;
  ac.iterations = iterations;
  ac.subsolver = rank1::policy_from_string(subsolver);
  if (schedule == "linear") ac.schedule.rule = altmin::PenaltySchedule::Rule::Linear;

  auto write_trace = [&](const altmin::AltMinTrace& trace) {
    if (trace_out.empty()) return;
    std::ofstream f(trace_out);
    if (!f) throw Error("cannot write " + trace_out);
    io::write_trace_csv(f, trace);
  };

  if (method == "alg1") {
    auto res = rounding::algorithm1(sigma, budget, o.r, kind, settings_for(o, sigma.dim()));
    j = io::component_set_json(res.solution, res.gap, relax::to_string(kind));
    j["upper_bound"] = res.relaxation.upper_bound;
  } else if (method == "alg2") {
    if (!budget.has_per_component()) throw BudgetIllPosed("alg2 needs per-component budgets");
    auto res = altmin::algorithm2(sigma, ac);
    j = io::component_set_json(res.solution, std::nullopt, "");
    j["lambda_scale"] = res.trace.lambda_scale;
    write_trace(res.trace);
  } else if (method == "alg2-fixed") {
    if (!budget.has_per_component()) throw BudgetIllPosed("alg2-fixed needs per-component budgets");
    auto res = altmin::algorithm2_fixed(sigma, ac, kind, settings_for(o, sigma.dim()));
    j = io::component_set_json(res.solution, res.gap, relax::to_string(kind));
    j["upper_bound"] = res.relaxation.upper_bound;
    j["active_set_size"] = res.active.size();
    write_trace(res.trace);
  } else if (method == "deflate") {
    if (!budget.has_per_component()) throw BudgetIllPosed("deflate needs per-component budgets");
    auto res = eval::deflation_baseline(sigma, *budget.per_component, ac.subsolver);
    j = io::component_set_json(res, std::nullopt, "");
  } else {
    throw Error("unknown method: " + method);
  }
  if (o.raw) j["objective_reported"] = "raw";
  if (o.timings)
    j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(j, o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse PCA with multiple mutually orthogonal components"};
  app.require_subcommand(1);

  CommonOpts bo;
  bool enumerate = false;
  auto* bound = app.add_subcommand("bound", "certifiable upper bounds from conic relaxations");
  add_common(bound, bo, true);
  bound->add_flag("--enumerate-allocations", enumerate,
                  "worst-case bound over all per-component splits of --k");

  CommonOpts so;
  std::string method = "alg2-fixed", subsolver = "auto", trace_out, schedule = "paper";
  int iterations = 100;
  auto* solve = app.add_subcommand("solve", "near-optimal feasible solutions");
  add_common(solve, so, true);
  solve->add_option("--method", method, "alg1|alg2|alg2-fixed|deflate")->required();
  solve->add_option("--subsolver", subsolver, "auto|exact|relax-round|greedy");
  solve->add_option("--iters", iterations, "alternating-minimization sweeps");
  solve->add_option("--trace-out", trace_out, "write per-step trace csv");
  solve->add_option("--schedule", schedule, "paper|linear penalty growth");

  // synth
  int sp = 50, sktrue = 20;
  double ssigma = 2.0, sq = 0.05;
  std::uint64_t sseed = 0;
  std::string sout, smatrix_out;
  auto* synth = app.add_subcommand("synth", "generate a spiked covariance instance");
  synth->add_option("--p", sp)->required();
  synth->add_option("--sigma", ssigma);
  synth->add_option("--ktrue", sktrue)->required();
  synth->add_option("--q", sq, "support overlap fraction");
  synth->add_option("--seed", sseed);
  synth->add_option("--out", sout, "instance json (default stdout)");
  synth->add_option("--matrix-out", smatrix_out, "matrix csv path");

  // roc
  eval::RocConfig rc;
  std::string rmethod = "alg2-fixed", rsub = "greedy", rout, rcsv, rfix_kind = "disjoint-pc";
  auto* roc = app.add_subcommand("roc", "support-recovery sweep on spiked instances");
  roc->add_option("--p", rc.p);
  roc->add_option("--sigma", rc.sigma_signal);
  roc->add_option("--ktrue", rc.k_true);
  roc->add_option("--q", rc.q)->required();
  roc->add_option("--seeds", rc.n_seeds);
  roc->add_option("--seed-base", rc.seed_base);
  roc->add_option("--k-sweep", rc.k_sweep, "per-component budgets to sweep")->delimiter(',');
  roc->add_option("--method", rmethod, "alg1|alg2-fixed|deflate");
  roc->add_option("--subsolver", rsub, "auto|exact|relax-round|greedy");
  roc->add_option("--iters", rc.iterations);
  roc->add_option("--fix-kind", rfix_kind, "relaxation used for fixing/rounding");
  roc->add_option("--fix-eps", rc.fix_eps);
  roc->add_option("--jobs", rc.jobs, "parallel seeds (results independent of this)");
  roc->add_option("--out", rout, "summary json (default stdout)");
  roc->add_option("--csv-out", rcsv, "curve csv path");

  // allocs
  CommonOpts ao;
  std::string acsv;
  int aiters = 100;
  std::string asub = "auto";
  auto* allocs = app.add_subcommand("allocs", "bound and solution for every budget split");
  add_common(allocs, ao, true);
  allocs->add_option("--iters", aiters, "alternating-minimization sweeps");
  allocs->add_option("--subsolver", asub, "auto|exact|relax-round|greedy");
  allocs->add_option("--csv-out", acsv, "per-allocation csv path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) return cmd_bound(bo, enumerate);
    if (solve->parsed()) return cmd_solve(so, method, subsolver, iterations, trace_out, schedule);
    if (synth->parsed()) {
      auto inst = generate_spiked(sp, ssigma, sktrue, sq, sseed);
      if (!smatrix_out.empty()) {
        std::ofstream f(smatrix_out);
        if (!f) throw Error("cannot write " + smatrix_out);
        write_matrix_csv(f, inst.matrix);
      }
      emit(io::spiked_json(inst, smatrix_out), sout);
      return kExitOk;
    }
    if (roc->parsed()) {
      rc.subsolver = rank1::policy_from_string(rsub);
      rc.fix_kind = relax::kind_from_string(rfix_kind);
      auto res = eval::roc_experiment(eval::roc_method_from_string(rmethod), rc);
      if (!rcsv.empty()) {
        std::ofstream f(rcsv);
        if (!f) throw Error("cannot write " + rcsv);
        io::write_roc_csv(f, res);
      }
      emit(io::roc_json(res, rc, rmethod), rout);
      return kExitOk;
    }
    if (allocs->parsed()) {
      SymMatrix sigma = load_matrix(ao.data, ao.from_rows, !ao.no_standardize);
      if (ao.k <= 0) throw BudgetIllPosed("allocs needs --k");
      const auto kind = dispatch_kind(ao.kind == "auto" ? "perm" : ao.kind, sigma.dim(), true);
      altmin::AltMinConfig ac;
      ac.iterations = aiters;
      ac.subsolver = rank1::policy_from_string(asub);
      auto study = eval::allocation_study(sigma, ao.k, ao.r, kind, ac);
      if (!acsv.empty()) {
        std::ofstream f(acsv);
        if (!f) throw Error("cannot write " + acsv);
        io::write_allocation_csv(f, study);
      }
      json j;
      j["kind"] = relax::to_string(kind);
      json rows = json::array();
      for (const auto& row : study.rows)
        rows.push_back({{"allocation", row.allocation},
                        {"upper_bound", row.upper_bound},
                        {"objective", row.objective},
                        {"violation", row.violation},
                        {"asymmetry", row.asymmetry},
                        {"gap", row.gap}});
      j["rows"] = std::move(rows);
      j["best"] = {{"allocation", study.rows[study.best_index].allocation},
                   {"objective", study.rows[study.best_index].objective},
                   {"upper_bound", study.rows[study.best_index].upper_bound}};
      if (study.symmetric_index >= 0) {
        j["symmetric"] = {{"allocation", study.rows[study.symmetric_index].allocation},
                          {"objective", study.rows[study.symmetric_index].objective},
                          {"upper_bound", study.rows[study.symmetric_index].upper_bound}};
        j["improvement_pct"] = study.improvement_pct;
      }
      emit(j, ao.out);
      return kExitOk;
    }
  } catch (const NumericalBreakdown& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
