#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cutlim/graph.hpp"
#include "cutlim/limits.hpp"

namespace cutlim {

/// Labeled simple graph on [k] (0-based), k <= 64.
///
/// Edges are stored as a bitset over vertex pairs in colexicographic order:
/// pair (i,j), i < j, has index j(j-1)/2 + i. Pairs among the first m
/// vertices therefore occupy the low C(m,2) bits; for k <= 11 the whole edge
/// set fits in mask().
class SimpleGraph {
 public:
  static constexpr int kMaxVertices = 64;

  SimpleGraph(int k, const std::vector<std::pair<int, int>>& edges);
  static SimpleGraph from_mask(int k, std::uint64_t mask);
  static SimpleGraph empty(int k) { return from_mask(k, 0); }
  static SimpleGraph complete(int k);

  static int pair_count(int k) { return k * (k - 1) / 2; }
  static int pair_index(int i, int j);

  int k() const { return k_; }
  /// Edge bitmask; requires C(k,2) <= 64.
  std::uint64_t mask() const;
  bool has_edge(int i, int j) const;
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  /// Same vertex set with one more edge.
  SimpleGraph with_edge(int i, int j) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  void set_pair(int p);

  int k_ = 0;
  std::vector<std::uint64_t> words_;
};

/// t(F,G): weighted fraction of all maps V(F) -> V(G) that preserve edges.
double hom_density(const SimpleGraph& f, const WeightedGraph& g, const Limits& limits = {});

/// t_inj(F,G): the same over injective maps, normalized by k! e_k(alpha).
double inj_density(const SimpleGraph& f, const WeightedGraph& g, const Limits& limits = {});

/// t_ind(F,G): injective maps weighted by prod_{E(F)} beta prod_{non-edges} (1 - beta).
double ind_density(const SimpleGraph& f, const WeightedGraph& g, const Limits& limits = {});

/// k-th elementary symmetric polynomial of `values`.
double elementary_symmetric(std::span<const double> values, int k);

/// Law of xi(k,G) over labeled simple graphs on [k]; probability[mask].
struct GraphDistribution {
  int k = 0;
  std::vector<double> probability;

  SimpleGraph graph(std::size_t mask) const {
    return SimpleGraph::from_mask(k, static_cast<std::uint64_t>(mask));
  }
  double operator()(const SimpleGraph& f) const { return probability[f.mask()]; }
};

GraphDistribution sample_distribution(int k, const WeightedGraph& g,
                                      const Limits& limits = {});

}  // namespace cutlim
