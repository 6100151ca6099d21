#pragma once

#include <cstddef>
#include <vector>

namespace cutlim {

/// Successive shortest paths with node potentials on a small network with
/// real capacities and (possibly negative) real costs. The network must not
/// contain negative cycles.
class MinCostFlow {
 public:
  static constexpr double kInfinite = 1e300;

  explicit MinCostFlow(std::size_t nodes);

  /// Returns the arc id.
  std::size_t add_arc(std::size_t from, std::size_t to, double capacity, double cost);

  /// Sends `amount` units from source to sink at minimum cost. Throws
  /// InfeasibleError if the network cannot carry that much (up to `eps`).
  double solve(std::size_t source, std::size_t sink, double amount, double eps = 1e-12);

  double flow(std::size_t arc) const { return arcs_[arc].flow; }
  double cost() const;
  std::size_t augmentations() const { return augmentations_; }

  /// Shortest distances in the final residual network from a virtual root
  /// joined to every node at zero cost. Reduced costs of all residual arcs
  /// are nonnegative with respect to these values.
  std::vector<double> residual_distances() const;

 private:
  struct Arc {
    std::size_t from;
    std::size_t to;
    double capacity;
    double cost;
    double flow = 0.0;
  };

  // Residual edge e: arc e/2, forward if e is even.
  double residual(std::size_t e) const;
  double residual_cost(std::size_t e) const;
  std::size_t head(std::size_t e) const;
  std::size_t tail(std::size_t e) const;
  std::vector<double> bellman_ford(bool residual_only) const;

  std::size_t nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;  // residual edges leaving each node
  std::size_t augmentations_ = 0;
  double eps_ = 1e-12;
};

}  // namespace cutlim
