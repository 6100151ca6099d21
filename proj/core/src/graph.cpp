#include "cutlim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cutlim/errors.hpp"

namespace cutlim {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_index(std::size_t v, std::size_t n, const char* what) {
  if (v >= n) {
    throw InputError(std::string(what) + ": vertex index " + std::to_string(v) +
                     " out of range [0," + std::to_string(n) + ")");
  }
}

}  // namespace

// --- WeightedGraph ---------------------------------------------------------

WeightedGraph::WeightedGraph(std::vector<double> alpha, Matrix beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  const std::size_t n = alpha_.size();
  if (n == 0) throw InputError("WeightedGraph: at least one vertex required");
  if (beta_.rows() != n || beta_.cols() != n) {
    throw InputError("WeightedGraph: beta must be " + std::to_string(n) + "x" +
                     std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(alpha_[i] > 0.0) || !std::isfinite(alpha_[i])) {
      throw InputError("WeightedGraph: alpha[" + std::to_string(i) +
                       "] must be positive and finite");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double a = beta_(i, j);
      const double b = beta_(j, i);
      if (std::abs(a - b) > kSymmetryTol) {
        throw InputError("WeightedGraph: beta is not symmetric at (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
      }
      const double m = 0.5 * (a + b);
      if (!(m >= 0.0 && m <= 1.0)) {
        throw InputError("WeightedGraph: beta(" + std::to_string(i) + "," +
                         std::to_string(j) + ") outside [0,1]");
      }
      beta_(i, j) = m;
      beta_(j, i) = m;
    }
  }
  volume_ = std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
}

WeightedGraph::WeightedGraph(Matrix beta)
    : WeightedGraph(std::vector<double>(beta.rows(), 1.0), std::move(beta)) {}

double WeightedGraph::volume(std::span<const std::size_t> vertices) const {
  double s = 0.0;
  for (std::size_t v : vertices) {
    require_index(v, size(), "volume");
    s += alpha_[v];
  }
  return s;
}

double WeightedGraph::max_alpha() const {
  return *std::max_element(alpha_.begin(), alpha_.end());
}

std::vector<double> WeightedGraph::normalized_alpha() const {
  std::vector<double> a(alpha_);
  for (double& x : a) x /= volume_;
  return a;
}

WeightedGraph WeightedGraph::with_loops(double loop) const {
  Matrix b = beta_;
  for (std::size_t i = 0; i < size(); ++i) b(i, i) = loop;
  return WeightedGraph(alpha_, std::move(b));
}

// --- Partition -------------------------------------------------------------

Partition::Partition(std::vector<int> labels, int q) : labels_(std::move(labels)), q_(q) {
  if (q < 1) throw InputError("Partition: q must be at least 1");
  std::vector<char> seen(static_cast<std::size_t>(q), 0);
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    const int l = labels_[v];
    if (l < 0 || l >= q) {
      throw InputError("Partition: label " + std::to_string(l) + " of vertex " +
                       std::to_string(v) + " outside [0," + std::to_string(q) + ")");
    }
    seen[static_cast<std::size_t>(l)] = 1;
  }
  for (int i = 0; i < q; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      throw InputError("Partition: cluster " + std::to_string(i) + " is empty");
    }
  }
}

Partition Partition::single_cluster(std::size_t n) {
  return Partition(std::vector<int>(n, 0), 1);
}

std::vector<std::vector<std::size_t>> Partition::members() const {
  std::vector<std::vector<std::size_t>> m(static_cast<std::size_t>(q_));
  for (std::size_t v = 0; v < labels_.size(); ++v)
    m[static_cast<std::size_t>(labels_[v])].push_back(v);
  return m;
}

Partition Partition::canonical() const {
  std::vector<int> map(static_cast<std::size_t>(q_), -1);
  std::vector<int> out(labels_.size());
  int next = 0;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    int& m = map[static_cast<std::size_t>(labels_[v])];
    if (m < 0) m = next++;
    out[v] = m;
  }
  return Partition(std::move(out), q_);
}

std::string Partition::label_string() const {
  std::ostringstream os;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (q_ > 10 && v > 0) os << ',';
    os << labels_[v];
  }
  return os.str();
}

// --- QuotientGraph ---------------------------------------------------------

void QuotientGraph::validate() const {
  const std::size_t q = vweights.size();
  if (q == 0) throw InputError("QuotientGraph: no vertices");
  if (eweights.rows() != q || eweights.cols() != q)
    throw InputError("QuotientGraph: eweights shape mismatch");
  const double total = std::accumulate(vweights.begin(), vweights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw InputError("QuotientGraph: vertex weights do not sum to 1");
  if (eweights.max_asymmetry() > 1e-12)
    throw InputError("QuotientGraph: eweights not symmetric");
}

// --- StepfunctionGraphon ---------------------------------------------------

StepfunctionGraphon::StepfunctionGraphon(std::vector<double> breaks, Matrix values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.size() < 2) throw InputError("StepfunctionGraphon: need at least one step");
  const std::size_t m = breaks_.size() - 1;
  if (values_.rows() != m || values_.cols() != m)
    throw InputError("StepfunctionGraphon: values must be m x m for m steps");
  if (std::abs(breaks_.front()) > 1e-12 || std::abs(breaks_.back() - 1.0) > 1e-12)
    throw InputError("StepfunctionGraphon: breaks must start at 0 and end at 1");
  breaks_.front() = 0.0;
  breaks_.back() = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(breaks_[i + 1] > breaks_[i]))
      throw InputError("StepfunctionGraphon: step widths must be positive");
  }
  if (values_.max_asymmetry() > 1e-12)
    throw InputError("StepfunctionGraphon: values not symmetric");
}

StepfunctionGraphon StepfunctionGraphon::from_widths(std::span<const double> widths,
                                                     Matrix values) {
  const double total = std::accumulate(widths.begin(), widths.end(), 0.0);
  std::vector<double> breaks(widths.size() + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0.0)) throw InputError("StepfunctionGraphon: widths must be positive");
    acc += widths[i];
    breaks[i + 1] = acc / total;
  }
  breaks.back() = 1.0;
  return StepfunctionGraphon(std::move(breaks), std::move(values));
}

StepfunctionGraphon StepfunctionGraphon::uniform(Matrix values) {
  std::vector<double> widths(values.rows(), 1.0);
  return from_widths(widths, std::move(values));
}

std::vector<double> StepfunctionGraphon::widths() const {
  std::vector<double> w(steps());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = breaks_[i + 1] - breaks_[i];
  return w;
}

std::size_t StepfunctionGraphon::step_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("StepfunctionGraphon: point outside [0,1]");
  auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, x);
  return static_cast<std::size_t>(it - (breaks_.begin() + 1));
}

double StepfunctionGraphon::operator()(double x, double y) const {
  return values_(step_of(x), step_of(y));
}

// --- operations ------------------------------------------------------------

double weighted_cut(const WeightedGraph& g, std::span<const std::size_t> s,
                    std::span<const std::size_t> t) {
  const std::size_t n = g.size();
  double total = 0.0;
  for (std::size_t a : s) {
    require_index(a, n, "weighted_cut");
    double row = 0.0;
    for (std::size_t b : t) {
      require_index(b, n, "weighted_cut");
      row += g.alpha(b) * g.beta(a, b);
    }
    total += g.alpha(a) * row;
  }
  return total;
}

Matrix cluster_cuts(const WeightedGraph& g, const Partition& p) {
  if (p.size() != g.size())
    throw InputError("partition size " + std::to_string(p.size()) +
                     " does not match graph size " + std::to_string(g.size()));
  const auto q = static_cast<std::size_t>(p.clusters());
  const std::size_t n = g.size();
  Matrix e(q, q);
  for (std::size_t a = 0; a < n; ++a) {
    const auto la = static_cast<std::size_t>(p[a]);
    for (std::size_t b = 0; b < n; ++b) {
      e(la, static_cast<std::size_t>(p[b])) += g.alpha(a) * g.alpha(b) * g.beta(a, b);
    }
  }
  return e;
}

QuotientGraph quotient(const WeightedGraph& g, const Partition& p) {
  const Matrix e = cluster_cuts(g, p);
  const auto q = static_cast<std::size_t>(p.clusters());
  std::vector<double> mass(q, 0.0);
  for (std::size_t v = 0; v < g.size(); ++v) mass[static_cast<std::size_t>(p[v])] += g.alpha(v);

  QuotientGraph h;
  h.vweights.resize(q);
  h.eweights = Matrix(q, q);
  for (std::size_t i = 0; i < q; ++i) h.vweights[i] = mass[i] / g.volume();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) h.eweights(i, j) = e(i, j) / (mass[i] * mass[j]);
  // e is symmetric up to summation order; make it exact.
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      const double m = 0.5 * (h.eweights(i, j) + h.eweights(j, i));
      h.eweights(i, j) = m;
      h.eweights(j, i) = m;
    }
  return h;
}

WeightedGraph blow_up(const Matrix& pattern, std::span<const std::size_t> sizes) {
  const std::size_t q = sizes.size();
  if (q == 0 || pattern.rows() != q || pattern.cols() != q)
    throw InputError("blow_up: pattern must be q x q with q = number of sizes");
  for (std::size_t i = 0; i < q; ++i) {
    if (sizes[i] == 0) throw InputError("blow_up: block sizes must be positive");
  }
  for (double p : pattern.data()) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("blow_up: pattern entries must lie in [0,1]");
  }
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<std::size_t> block(n);
  for (std::size_t i = 0, v = 0; i < q; ++i)
    for (std::size_t k = 0; k < sizes[i]; ++k) block[v++] = i;
  Matrix beta(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) beta(a, b) = pattern(block[a], block[b]);
  return WeightedGraph(std::move(beta));
}

Partition blow_up_partition(std::span<const std::size_t> sizes) {
  std::vector<int> labels;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    labels.insert(labels.end(), sizes[i], static_cast<int>(i));
  return Partition(std::move(labels), static_cast<int>(sizes.size()));
}

StepfunctionGraphon stepfunction(const WeightedGraph& g) {
  return StepfunctionGraphon::from_widths(g.alpha(), g.beta());
}

WeightedGraph as_graph(const QuotientGraph& h) {
  return WeightedGraph(h.vweights, h.eweights);
}

}  // namespace cutlim
