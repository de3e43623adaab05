#pragma once

#include "ospca/altmin.hpp"
#include "ospca/eval.hpp"
#include "ospca/relax/solve.hpp"

#include <json.hpp>

#include <iosfwd>

namespace ospca::io {

using json = nlohmann::json;

json to_json(const Matrix& m);
json to_json(const IntMatrix& m);

json relaxation_json(const relax::RelaxationResult& res, const SparsityBudget& budget);
json component_set_json(const ComponentSet& cs, const std::optional<double>& gap,
                        const std::string& relaxation_kind);
json spiked_json(const SpikedInstance& inst, const std::string& matrix_path);
json roc_json(const eval::RocResult& res, const eval::RocConfig& config,
              const std::string& method_name);

void write_trace_csv(std::ostream& os, const altmin::AltMinTrace& trace);
void write_roc_csv(std::ostream& os, const eval::RocResult& res);
void write_allocation_csv(std::ostream& os, const eval::AllocationStudy& study);

}  // namespace ospca::io
