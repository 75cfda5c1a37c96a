#pragma once

#include <string>

#include "json.hpp"

#include "absorbing/analysis.hpp"
#include "absorbing/flowbuild.hpp"
#include "absorbing/generator.hpp"
#include "absorbing/state.hpp"

namespace absorbing {

using json = nlohmann::ordered_json;

// Complex entries serialize as [re, im]; matrices as arrays of rows.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json state_to_json(const FaithfulState& state);
FaithfulState state_from_json(const json& j);

struct LoadedGenerator {
    LindbladGenerator gen;
    FaithfulState state;
};

json generator_to_json(const LindbladGenerator& gen, const FaithfulState& state);
LoadedGenerator generator_from_json(const json& j);

json certificate_to_json(const PurityCertificate& cert);
PurityCertificate certificate_from_json(const json& j);

json model_to_json(const PureFlowModel& model);
PureFlowModel model_from_json(const json& j);

// Header t,trace_distance,gap_bound; 17 significant digits per value.
std::string report_to_csv(const ConvergenceReport& report);

json read_json_file(const std::string& path);           // SchemaViolation on bad JSON
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace absorbing
