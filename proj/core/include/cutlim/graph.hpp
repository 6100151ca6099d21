#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cutlim/linalg.hpp"

namespace cutlim {

/// Vertex- and edge-weighted graph on [n].
///
/// Vertex weights are positive and stored unnormalized; every density
/// routine divides by the volume itself. Edge weights form a symmetric matrix
/// with entries in [0,1], diagonal included (loop weights, default 0). Loops
/// only matter through non-injective maps and through e_G(S,T) with
/// overlapping S and T.
class WeightedGraph {
 public:
  /// Rejects asymmetry above 1e-12 and symmetrizes smaller deviations by
  /// averaging. Throws InputError on any other violated invariant.
  WeightedGraph(std::vector<double> alpha, Matrix beta);

  /// Unit vertex weights.
  explicit WeightedGraph(Matrix beta);

  std::size_t size() const { return alpha_.size(); }
  std::span<const double> alpha() const { return alpha_; }
  double alpha(std::size_t i) const { return alpha_[i]; }
  const Matrix& beta() const { return beta_; }
  double beta(std::size_t i, std::size_t j) const { return beta_(i, j); }

  double volume() const { return volume_; }
  double volume(std::span<const std::size_t> vertices) const;
  double max_alpha() const;

  /// Normalized vertex weights alpha_i / alpha_G.
  std::vector<double> normalized_alpha() const;

  /// Copy with every loop weight beta_ii replaced by `loop`.
  WeightedGraph with_loops(double loop) const;

 private:
  std::vector<double> alpha_;
  Matrix beta_;
  double volume_ = 0.0;
};

/// Surjective labeling [n] -> [q] (labels are 0-based).
class Partition {
 public:
  /// Throws InputError if a label is out of range or a cluster is empty.
  Partition(std::vector<int> labels, int q);

  /// Every vertex in cluster 0.
  static Partition single_cluster(std::size_t n);

  int clusters() const { return q_; }
  std::size_t size() const { return labels_.size(); }
  std::span<const int> labels() const { return labels_; }
  int operator[](std::size_t v) const { return labels_[v]; }

  std::vector<std::vector<std::size_t>> members() const;

  /// Relabeled so that clusters appear in order of first occurrence
  /// (a restricted growth string).
  Partition canonical() const;

  /// Labels joined without separators when q <= 10, comma separated otherwise.
  std::string label_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  int q_ = 0;
};

/// Factor graph G/P: q vertices with volumes summing to 1 and edge weights
/// equal to the pairwise cut densities.
struct QuotientGraph {
  std::vector<double> vweights;
  Matrix eweights;

  int q() const { return static_cast<int>(vweights.size()); }
  /// Throws InputError unless weights sum to 1 (1e-12) and eweights is symmetric.
  void validate() const;
};

/// Piecewise-constant symmetric function on [0,1]^2. Values are unrestricted
/// reals so that signed noise graphons fit as well.
class StepfunctionGraphon {
 public:
  /// breaks: 0 = b_0 < ... < b_m = 1; values: symmetric m x m.
  StepfunctionGraphon(std::vector<double> breaks, Matrix values);

  static StepfunctionGraphon from_widths(std::span<const double> widths, Matrix values);
  /// m equal steps.
  static StepfunctionGraphon uniform(Matrix values);

  std::size_t steps() const { return values_.rows(); }
  std::span<const double> breaks() const { return breaks_; }
  std::vector<double> widths() const;
  const Matrix& values() const { return values_; }

  /// Index of the step containing x in [0,1]; x = 1 maps to the last step.
  std::size_t step_of(double x) const;
  double operator()(double x, double y) const;

 private:
  std::vector<double> breaks_;
  Matrix values_;
};

/// e_G(S,T) = sum over s in S, t in T of alpha_s alpha_t beta_st. S and T may
/// overlap; repeated indices are counted as given.
double weighted_cut(const WeightedGraph& g, std::span<const std::size_t> s,
                    std::span<const std::size_t> t);

/// Matrix of e_G(V_i, V_j) for all cluster pairs.
Matrix cluster_cuts(const WeightedGraph& g, const Partition& p);

QuotientGraph quotient(const WeightedGraph& g, const Partition& p);

/// Block-constant graph with unit vertex weights; block (i,j) has size
/// sizes[i] x sizes[j] and value pattern(i,j), diagonal included.
WeightedGraph blow_up(const Matrix& pattern, std::span<const std::size_t> sizes);

/// The planted partition of blow_up(pattern, sizes).
Partition blow_up_partition(std::span<const std::size_t> sizes);

/// W_G: intervals of length alpha_i / alpha_G carrying beta.
StepfunctionGraphon stepfunction(const WeightedGraph& g);

/// Quotient graph seen as a weighted graph on q vertices.
WeightedGraph as_graph(const QuotientGraph& h);

}  // namespace cutlim
