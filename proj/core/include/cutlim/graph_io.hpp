#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cutlim/graph.hpp"
#include "cutlim/homomorphism.hpp"

namespace cutlim::io {

using nlohmann::json;

// Raw content of a graph file before invariants are enforced, so that all
// problems can be reported at once.
//
//   {"alpha": [a_1, ..., a_n], "beta": [[...], ...]}
//
// "alpha" may be omitted (unit weights).
struct GraphDocument {
  std::vector<double> alpha;
  std::vector<std::vector<double>> beta;
};

GraphDocument parse_graph_document(const json& j);

/// Every violated invariant, each as one human-readable line. Asymmetry is
/// reported once, naming the entry with the largest deviation.
std::vector<std::string> diagnose(const GraphDocument& doc);

/// Throws InputError listing all diagnostics if there are any. Asymmetry up
/// to 1e-12 is accepted and averaged away.
WeightedGraph to_graph(const GraphDocument& doc);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

WeightedGraph graph_from_json(const json& j);
WeightedGraph load_graph(const std::filesystem::path& path);
json to_json(const WeightedGraph& g);

// {"k": 3, "edges": [[0,1],[1,2]]} with 0-based vertices.
SimpleGraph simple_graph_from_json(const json& j);
SimpleGraph load_simple_graph(const std::filesystem::path& path);
json to_json(const SimpleGraph& f);

// {"breaks": [...], "values": [[...]]} or {"widths": [...], "values": ...}.
// A graph document is accepted as well and converted to W_G.
StepfunctionGraphon stepfunction_from_json(const json& j);
json to_json(const StepfunctionGraphon& w);

// Bare [[...]] or an object holding the matrix under `key`.
Matrix matrix_from_json(const json& j, const std::string& key = "matrix");
std::vector<double> vector_from_json(const json& j, const std::string& key = "vector");
json to_json(const Matrix& m);

json to_json(const QuotientGraph& h);
QuotientGraph quotient_from_json(const json& j);
json to_json(const Partition& p);

}  // namespace cutlim::io
