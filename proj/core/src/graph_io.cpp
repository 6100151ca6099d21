#include "cutlim/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cutlim/errors.hpp"

namespace cutlim::io {

namespace {

std::vector<double> number_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError(what + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> number_matrix(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (const auto& r : j) rows.push_back(number_array(r, what + " row"));
  return rows;
}

}  // namespace

GraphDocument parse_graph_document(const json& j) {
  if (!j.is_object() || !j.contains("beta"))
    throw InputError("graph document must be an object with a \"beta\" matrix");
  GraphDocument doc;
  doc.beta = number_matrix(j.at("beta"), "beta");
  if (j.contains("alpha")) {
    doc.alpha = number_array(j.at("alpha"), "alpha");
  } else {
    doc.alpha.assign(doc.beta.size(), 1.0);
  }
  return doc;
}

std::vector<std::string> diagnose(const GraphDocument& doc) {
  std::vector<std::string> out;
  const std::size_t n = doc.alpha.size();
  if (n == 0) out.emplace_back("graph has no vertices");
  if (doc.beta.size() != n) {
    out.push_back("beta has " + std::to_string(doc.beta.size()) + " rows but alpha has " +
                  std::to_string(n) + " entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(doc.alpha[i] > 0.0) || !std::isfinite(doc.alpha[i]))
      out.push_back("alpha[" + std::to_string(i) + "] = " + std::to_string(doc.alpha[i]) +
                    " is not positive");
  }
  bool square = doc.beta.size() == n;
  for (std::size_t i = 0; i < doc.beta.size(); ++i) {
    if (doc.beta[i].size() != doc.beta.size()) {
      out.push_back("beta row " + std::to_string(i) + " has length " +
                    std::to_string(doc.beta[i].size()));
      square = false;
    }
  }
  if (!square) return out;

  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double b = doc.beta[i][j];
      if (!(b >= 0.0 && b <= 1.0))
        out.push_back("beta[" + std::to_string(i) + "][" + std::to_string(j) +
                      "] = " + std::to_string(b) + " outside [0,1]");
      const double d = std::abs(b - doc.beta[j][i]);
      if (j > i && d > worst) {
        worst = d;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > 1e-12) {
    std::ostringstream os;
    os << "beta is not symmetric: max asymmetry " << worst << " at entry [" << wi << "]["
       << wj << "]";
    out.push_back(os.str());
  }
  return out;
}

WeightedGraph to_graph(const GraphDocument& doc) {
  const auto problems = diagnose(doc);
  if (!problems.empty()) {
    std::string msg = "invalid graph:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InputError(msg);
  }
  return WeightedGraph(doc.alpha, Matrix::from_rows(doc.beta));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

WeightedGraph graph_from_json(const json& j) { return to_graph(parse_graph_document(j)); }

WeightedGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(read_json_file(path));
}

json to_json(const WeightedGraph& g) {
  return json{{"alpha", std::vector<double>(g.alpha().begin(), g.alpha().end())},
              {"beta", g.beta().to_rows()}};
}

SimpleGraph simple_graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k"))
    throw InputError("simple graph document must be an object with \"k\"");
  const int k = j.at("k").get<int>();
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edges must be [i,j] pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  return SimpleGraph(k, edges);
}

SimpleGraph load_simple_graph(const std::filesystem::path& path) {
  return simple_graph_from_json(read_json_file(path));
}

json to_json(const SimpleGraph& f) {
  json edges = json::array();
  for (const auto& [a, b] : f.edges()) edges.push_back({a, b});
  return json{{"k", f.k()}, {"edges", edges}};
}

StepfunctionGraphon stepfunction_from_json(const json& j) {
  if (j.is_object() && j.contains("beta")) return stepfunction(graph_from_json(j));
  if (!j.is_object() || !j.contains("values"))
    throw InputError("stepfunction document needs \"values\" and \"breaks\" or \"widths\"");
  Matrix values = Matrix::from_rows(number_matrix(j.at("values"), "values"));
  if (j.contains("breaks"))
    return StepfunctionGraphon(number_array(j.at("breaks"), "breaks"), std::move(values));
  if (j.contains("widths")) {
    const auto w = number_array(j.at("widths"), "widths");
    return StepfunctionGraphon::from_widths(w, std::move(values));
  }
  return StepfunctionGraphon::uniform(std::move(values));
}

json to_json(const StepfunctionGraphon& w) {
  return json{{"breaks", std::vector<double>(w.breaks().begin(), w.breaks().end())},
              {"values", w.values().to_rows()}};
}

Matrix matrix_from_json(const json& j, const std::string& key) {
  if (j.is_object()) {
    if (!j.contains(key)) throw InputError("expected a matrix under \"" + key + "\"");
    return Matrix::from_rows(number_matrix(j.at(key), key));
  }
  return Matrix::from_rows(number_matrix(j, key));
}

std::vector<double> vector_from_json(const json& j, const std::string& key) {
  if (j.is_object()) {
    if (!j.contains(key)) throw InputError("expected an array under \"" + key + "\"");
    return number_array(j.at(key), key);
  }
  return number_array(j, key);
}

json to_json(const Matrix& m) { return m.to_rows(); }

json to_json(const QuotientGraph& h) {
  return json{{"vweights", h.vweights}, {"eweights", h.eweights.to_rows()}};
}

QuotientGraph quotient_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vweights") || !j.contains("eweights"))
    throw InputError("quotient graph needs \"vweights\" and \"eweights\"");
  QuotientGraph h{number_array(j.at("vweights"), "vweights"),
                  Matrix::from_rows(number_matrix(j.at("eweights"), "eweights"))};
  h.validate();
  return h;
}

json to_json(const Partition& p) {
  return std::vector<int>(p.labels().begin(), p.labels().end());
}

}  // namespace cutlim::io
