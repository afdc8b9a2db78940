#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pstcube/coupler.hpp"
#include "pstcube/graph.hpp"
#include "pstcube/robustness.hpp"
#include "pstcube/spinsim.hpp"
#include "pstcube/walker.hpp"

namespace pstcube::io {

// Full-precision decimal rendering (17 significant digits, '.' separator).
std::string format_double(double v);

// CSV with a header row; '#'-prefixed metadata lines may precede it.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& columns);
    void comment(const std::string& line);  // only before the first row
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
    std::size_t width_;
    bool header_written_ = false;
    std::vector<std::string> columns_;
    void write_header();
};

nlohmann::json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j);

nlohmann::json subcube_to_json(const SubcubeSpec& spec);

nlohmann::json coupler_params_to_json(const CouplerParams& p);
CouplerParams coupler_params_from_json(const nlohmann::json& j);
CouplerParams load_coupler_params(const std::string& path);

nlohmann::json schedule_to_json(const Schedule& s);

nlohmann::json fidelity_report_to_json(const FidelityReport& r);

nlohmann::json robustness_report_to_json(const RobustnessReport& r);
void write_robustness_csv(std::ostream& out, const RobustnessReport& r,
                          const std::vector<std::string>& metadata);

// Sparse triplet dump: one "row col re im" line per stored entry, row-major
// within columns of the compressed matrix.
void write_matrix_triplets(std::ostream& out, const FullHamiltonian& h);

}  // namespace pstcube::io
