#include "absorbing/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace absorbing {

namespace {

double number_at(const json& j, const char* what) {
    if (!j.is_number()) throw SchemaViolation(std::string("expected a number for ") + what);
    return j.get<double>();
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaViolation(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw SchemaViolation("matrix: expected a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    if (!j[0].is_array()) throw SchemaViolation("matrix: rows must be arrays");
    const int cols = static_cast<int>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw SchemaViolation("matrix: ragged rows");
        for (int k = 0; k < cols; ++k) {
            const json& z = row[k];
            if (!z.is_array() || z.size() != 2)
                throw SchemaViolation("matrix: entries must be [re, im] pairs");
            m(i, k) = cplx(number_at(z[0], "re"), number_at(z[1], "im"));
        }
    }
    return m;
}

json state_to_json(const FaithfulState& state) {
    json j;
    j["r"] = state.r;
    j["eigenvalue_list"] = state.eigenvalue_list;
    j["basis"] = matrix_to_json(state.basis);
    return j;
}

FaithfulState state_from_json(const json& j) {
    const json& jr = field(j, "r");
    if (!jr.is_number_integer()) throw SchemaViolation("state: r must be an integer");
    const int r = jr.get<int>();
    const json& jl = field(j, "eigenvalue_list");
    if (!jl.is_array() || static_cast<int>(jl.size()) != r)
        throw SchemaViolation("state: eigenvalue_list must be an array of length r");
    std::vector<double> list;
    for (const json& v : jl) list.push_back(number_at(v, "eigenvalue"));
    const ComplexMatrix basis = matrix_from_json(field(j, "basis"));
    if (basis.rows() != r || basis.cols() != r)
        throw SchemaViolation("state: basis must be r x r");
    return make_state(list, basis);
}

json generator_to_json(const LindbladGenerator& gen, const FaithfulState& state) {
    json j;
    j["r"] = gen.r;
    json kraus = json::array();
    for (const ComplexMatrix& v : gen.kraus) kraus.push_back(matrix_to_json(v));
    j["kraus"] = std::move(kraus);
    j["drift"] = matrix_to_json(gen.drift);
    j["state"] = state_to_json(state);
    return j;
}

LoadedGenerator generator_from_json(const json& j) {
    LoadedGenerator out;
    const json& jr = field(j, "r");
    if (!jr.is_number_integer()) throw SchemaViolation("generator: r must be an integer");
    out.gen.r = jr.get<int>();
    const json& jk = field(j, "kraus");
    if (!jk.is_array()) throw SchemaViolation("generator: kraus must be an array");
    for (const json& v : jk) {
        ComplexMatrix m = matrix_from_json(v);
        if (m.rows() != out.gen.r || m.cols() != out.gen.r)
            throw SchemaViolation("generator: kraus operators must be r x r");
        out.gen.kraus.push_back(std::move(m));
    }
    out.gen.drift = matrix_from_json(field(j, "drift"));
    if (out.gen.drift.rows() != out.gen.r || out.gen.drift.cols() != out.gen.r)
        throw SchemaViolation("generator: drift must be r x r");
    out.state = state_from_json(field(j, "state"));
    if (out.state.r != out.gen.r) throw SchemaViolation("generator: state dimension mismatch");
    return out;
}

json certificate_to_json(const PurityCertificate& cert) {
    json j;
    j["ergodic"] = cert.ergodic;
    j["irreducible"] = cert.irreducible;
    j["fixed_point_dim"] = cert.fixed_point_dim;
    j["commutant_dim"] = cert.commutant_dim;
    j["spectral_gap_estimate"] = cert.spectral_gap_estimate;
    j["gap_constant"] = cert.gap_constant;
    j["method_notes"] = cert.method_notes;
    return j;
}

PurityCertificate certificate_from_json(const json& j) {
    PurityCertificate cert;
    const json& je = field(j, "ergodic");
    const json& ji = field(j, "irreducible");
    if (!je.is_boolean() || !ji.is_boolean())
        throw SchemaViolation("certificate: verdicts must be booleans");
    cert.ergodic = je.get<bool>();
    cert.irreducible = ji.get<bool>();
    cert.fixed_point_dim = static_cast<int>(number_at(field(j, "fixed_point_dim"), "fixed_point_dim"));
    cert.commutant_dim = static_cast<int>(number_at(field(j, "commutant_dim"), "commutant_dim"));
    cert.spectral_gap_estimate = number_at(field(j, "spectral_gap_estimate"), "spectral_gap_estimate");
    cert.gap_constant = number_at(field(j, "gap_constant"), "gap_constant");
    const json& jn = field(j, "method_notes");
    if (!jn.is_string()) throw SchemaViolation("certificate: method_notes must be a string");
    cert.method_notes = jn.get<std::string>();
    return cert;
}

json model_to_json(const PureFlowModel& model) {
    json j = generator_to_json(model.gen, model.state);
    j["certificate"] = certificate_to_json(model.certificate);
    j["index"] = model.index;
    j["branch"] = model.branch;
    json sel = json::array();
    for (const auto& [a, b] : model.kraus_selection) sel.push_back(json::array({a, b}));
    j["kraus_selection"] = std::move(sel);
    return j;
}

PureFlowModel model_from_json(const json& j) {
    PureFlowModel model;
    LoadedGenerator lg = generator_from_json(j);
    model.gen = std::move(lg.gen);
    model.state = std::move(lg.state);
    model.certificate = certificate_from_json(field(j, "certificate"));
    const json& ji = field(j, "index");
    if (!ji.is_number_integer()) throw SchemaViolation("model: index must be an integer");
    model.index = ji.get<int>();
    const json& jb = field(j, "branch");
    if (!jb.is_string()) throw SchemaViolation("model: branch must be a string");
    model.branch = jb.get<std::string>();
    const json& js = field(j, "kraus_selection");
    if (!js.is_array()) throw SchemaViolation("model: kraus_selection must be an array");
    for (const json& p : js) {
        if (!p.is_array() || p.size() != 2)
            throw SchemaViolation("model: kraus_selection entries must be [i, j]");
        model.kraus_selection.emplace_back(static_cast<int>(number_at(p[0], "i")),
                                           static_cast<int>(number_at(p[1], "j")));
    }
    return model;
}

std::string report_to_csv(const ConvergenceReport& report) {
    std::string out = "t,trace_distance,gap_bound\n";
    for (size_t i = 0; i < report.times.size(); ++i) {
        out += format_value(report.times[i]);
        out += ',';
        out += format_value(report.distances[i]);
        out += ',';
        out += format_value(report.gap_bound[i]);
        out += '\n';
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaViolation("cannot open file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw SchemaViolation("malformed JSON in " + path);
    return j;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

} // namespace absorbing
