#include "ospca/io.hpp"

#include <ostream>

namespace ospca::io {

json to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json relaxation_json(const relax::RelaxationResult& res, const SparsityBudget& budget) {
  json j;
  j["kind"] = relax::to_string(res.kind);
  j["budget"]["total"] = budget.k_total();
  if (budget.has_per_component()) j["budget"]["per_component"] = *budget.per_component;
  j["upper_bound"] = res.upper_bound;
  j["cuts_added"] = res.cuts_added;
  j["zstar"] = to_json(res.zstar);
  j["residuals"] = {{"primal", res.solver.primal_infeas},
                    {"dual", res.solver.dual_infeas},
                    {"gap", res.solver.rel_gap}};
  j["solver_status"] = conic::to_string(res.solver.status);
  j["iterations"] = res.solver.iterations;
  return j;
}

json component_set_json(const ComponentSet& cs, const std::optional<double>& gap,
                        const std::string& relaxation_kind) {
  json j;
  j["U"] = to_json(cs.U);
  j["Z"] = to_json(cs.Z);
  j["objective"] = cs.objective;
  j["variance_fraction"] = cs.variance_fraction;
  j["violation"] = cs.violation;
  if (gap) j["gap"] = *gap;
  if (!relaxation_kind.empty()) j["relaxation_kind"] = relaxation_kind;
  return j;
}

json spiked_json(const SpikedInstance& inst, const std::string& matrix_path) {
  json j;
  j["p"] = inst.p;
  j["sigma"] = inst.sigma;
  j["k_true"] = inst.k_true;
  j["q"] = inst.q;
  j["seed"] = inst.seed;
  j["supports"] = {inst.support1, inst.support2};
  j["matrix_path"] = matrix_path;
  return j;
}

json roc_json(const eval::RocResult& res, const eval::RocConfig& config,
              const std::string& method_name) {
  json j;
  j["auc"] = res.auc;
  j["method"] = method_name;
  j["config"] = {{"p", config.p},         {"sigma", config.sigma_signal},
                 {"k_true", config.k_true}, {"q", config.q},
                 {"k_sweep", config.k_sweep}, {"seeds", config.n_seeds},
                 {"iterations", config.iterations}};
  json curve = json::array();
  for (const auto& pt : res.curve)
    curve.push_back({{"k", pt.k}, {"tpr", pt.tpr}, {"fpr", pt.fpr}});
  j["curve"] = std::move(curve);
  return j;
}

void write_trace_csv(std::ostream& os, const altmin::AltMinTrace& trace) {
  os << "iteration,component,lambda,objective,violation\n";
  os.precision(17);
  for (const auto& row : trace.rows)
    os << row.iteration << ',' << row.component << ',' << row.lambda << ',' << row.objective
       << ',' << row.violation << '\n';
}

void write_roc_csv(std::ostream& os, const eval::RocResult& res) {
  os << "k,mean_fpr,mean_tpr\n";
  os.precision(17);
  for (const auto& pt : res.curve) os << pt.k << ',' << pt.fpr << ',' << pt.tpr << '\n';
}

void write_allocation_csv(std::ostream& os, const eval::AllocationStudy& study) {
  os << "allocation,upper_bound,objective,violation,asymmetry,gap\n";
  os.precision(17);
  for (const auto& row : study.rows) {
    for (size_t i = 0; i < row.allocation.size(); ++i)
      os << (i ? " " : "") << row.allocation[i];
    os << ',' << row.upper_bound << ',' << row.objective << ',' << row.violation << ','
       << row.asymmetry << ',' << row.gap << '\n';
  }
}

}  // namespace ospca::io
