#include "pstcube/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pstcube::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& columns)
    : out_(out), width_(columns.size()), columns_(columns) {}

void CsvWriter::comment(const std::string& line) {
    if (header_written_)
        throw std::logic_error("CSV metadata must precede the header row");
    out_ << "# " << line << '\n';
}

void CsvWriter::write_header() {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
    header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_)
        throw std::invalid_argument("CSV row width mismatch");
    if (!header_written_) write_header();
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
}

json graph_to_json(const WeightedGraph& g) {
    json j;
    j["n"] = g.num_vertices();
    json edges = json::array();
    for (const auto& [e, w] : g.edges()) edges.push_back({e.first, e.second, w});
    j["edges"] = std::move(edges);
    if (g.labels) {
        json labels = json::array();
        for (const auto& label : *g.labels) labels.push_back(label.to_string());
        j["labels"] = std::move(labels);
    }
    return j;
}

WeightedGraph graph_from_json(const json& j) {
    WeightedGraph g(j.at("n").get<std::size_t>());
    for (const auto& e : j.at("edges"))
        g.set_weight(e.at(0).get<Vertex>(), e.at(1).get<Vertex>(), e.at(2).get<double>());
    if (j.contains("labels")) {
        std::vector<VertexLabel> labels;
        for (const auto& text : j.at("labels")) {
            const std::string s = text.get<std::string>();
            labels.push_back(VertexLabel::parse(static_cast<int>(s.size()), s));
        }
        g.labels = std::move(labels);
    }
    return g;
}

json subcube_to_json(const SubcubeSpec& spec) {
    json j;
    j["ambient_n"] = spec.ambient_n;
    j["d"] = spec.d;
    j["x"] = spec.x.to_string();
    j["y"] = spec.y.to_string();
    json fixed = json::array();
    for (const auto& [pos, bit] : spec.fixed_positions)
        fixed.push_back({{"position", pos}, {"bit", bit}});
    j["fixed_positions"] = std::move(fixed);
    j["free_positions"] = spec.free_positions;
    json verts = json::array();
    for (const auto& v : spec.vertices) verts.push_back(v.to_string());
    j["vertices"] = std::move(verts);
    return j;
}

json coupler_params_to_json(const CouplerParams& p) {
    return json{{"C_i", p.C_i},   {"C_j", p.C_j},   {"C_c", p.C_c},
                {"C_ic", p.C_ic}, {"C_jc", p.C_jc}, {"C_ij", p.C_ij},
                {"omega_i", p.omega_i}, {"omega_j", p.omega_j}, {"omega_c", p.omega_c}};
}

CouplerParams coupler_params_from_json(const json& j) {
    CouplerParams p;
    p.C_i = j.at("C_i").get<double>();
    p.C_j = j.at("C_j").get<double>();
    p.C_c = j.at("C_c").get<double>();
    p.C_ic = j.at("C_ic").get<double>();
    p.C_jc = j.at("C_jc").get<double>();
    p.C_ij = j.at("C_ij").get<double>();
    p.omega_i = j.at("omega_i").get<double>();
    p.omega_j = j.at("omega_j").get<double>();
    // omega_c is usually set per schedule; default keeps validate() happy.
    p.omega_c = j.value("omega_c", p.omega_i + 1.0);
    return p;
}

CouplerParams load_coupler_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open parameter file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("parameter file " + path + ": " + e.what());
    }
    return coupler_params_from_json(j);
}

json schedule_to_json(const Schedule& s) {
    json edges = json::array();
    for (const auto& e : s.edges)
        edges.push_back({{"i", e.i},
                         {"j", e.j},
                         {"state", e.state == EdgeState::On ? "on" : "off"},
                         {"omega_c", e.omega_c},
                         {"J", e.j_eff}});
    json j;
    j["edges"] = std::move(edges);
    j["j_on"] = s.j_on;
    j["t0_ns"] = s.t0_ns;
    j["subcube"] = subcube_to_json(s.subcube);
    j["j_on_spread"] = s.j_on_spread;
    if (s.spread_warning || !s.warning.empty()) j["warning"] = s.warning;
    return j;
}

json fidelity_report_to_json(const FidelityReport& r) {
    return json{{"u", r.u},
                {"v", r.v},
                {"t", r.time},
                {"re_amplitude", r.amplitude.real()},
                {"im_amplitude", r.amplitude.imag()},
                {"fidelity", r.fidelity}};
}

json robustness_report_to_json(const RobustnessReport& r) {
    json j;
    j["t0"] = r.t0;
    j["bound_spectral"] = r.bound_spectral;
    j["bound_frobenius"] = r.bound_frobenius;
    j["min_fidelity"] = r.min_fidelity;
    j["mean_fidelity"] = r.mean_fidelity;
    j["max_fidelity"] = r.max_fidelity;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["delta_rel"] = r.delta_rel;
    j["j_on"] = r.j_on;
    return j;
}

void write_robustness_csv(std::ostream& out, const RobustnessReport& r,
                          const std::vector<std::string>& metadata) {
    CsvWriter csv(out, {"trial", "spectral_norm", "frobenius_norm", "fidelity", "bound"});
    for (const auto& line : metadata) csv.comment(line);
    for (const TrialRecord& rec : r.records)
        csv.row({std::to_string(rec.trial), format_double(rec.spectral_norm),
                 format_double(rec.frobenius_norm), format_double(rec.fidelity),
                 format_double(rec.bound)});
}

void write_matrix_triplets(std::ostream& out, const FullHamiltonian& h) {
    for (int col = 0; col < h.matrix.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, col); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << format_double(it.value())
                << " 0\n";
}

}  // namespace pstcube::io
