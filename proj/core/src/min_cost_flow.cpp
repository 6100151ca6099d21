#include "cutlim/min_cost_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "cutlim/errors.hpp"

namespace cutlim {

namespace {
constexpr double kUnreached = std::numeric_limits<double>::infinity();
}

MinCostFlow::MinCostFlow(std::size_t nodes) : nodes_(nodes), out_(nodes) {}

std::size_t MinCostFlow::add_arc(std::size_t from, std::size_t to, double capacity, double cost) {
  if (from >= nodes_ || to >= nodes_) throw InputError("MinCostFlow: node out of range");
  arcs_.push_back({from, to, capacity, cost});
  const std::size_t id = arcs_.size() - 1;
  out_[from].push_back(2 * id);
  out_[to].push_back(2 * id + 1);
  return id;
}

double MinCostFlow::residual(std::size_t e) const {
  const Arc& a = arcs_[e / 2];
  return e % 2 == 0 ? a.capacity - a.flow : a.flow;
}

double MinCostFlow::residual_cost(std::size_t e) const {
  const Arc& a = arcs_[e / 2];
  return e % 2 == 0 ? a.cost : -a.cost;
}

std::size_t MinCostFlow::head(std::size_t e) const {
  const Arc& a = arcs_[e / 2];
  return e % 2 == 0 ? a.to : a.from;
}

std::size_t MinCostFlow::tail(std::size_t e) const {
  const Arc& a = arcs_[e / 2];
  return e % 2 == 0 ? a.from : a.to;
}

std::vector<double> MinCostFlow::bellman_ford(bool residual_only) const {
  std::vector<double> d(nodes_, 0.0);
  for (std::size_t round = 0; round < nodes_; ++round) {
    bool changed = false;
    for (std::size_t e = 0; e < 2 * arcs_.size(); ++e) {
      if (residual_only ? residual(e) <= eps_ : e % 2 == 1) continue;
      const double cand = d[tail(e)] + residual_cost(e);
      if (cand < d[head(e)] - 1e-15 * std::max(1.0, std::abs(cand))) {
        d[head(e)] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

double MinCostFlow::solve(std::size_t source, std::size_t sink, double amount, double eps) {
  eps_ = eps;
  std::vector<double> potential = bellman_ford(false);
  double sent = 0.0;
  std::vector<double> dist(nodes_);
  std::vector<std::size_t> via(nodes_);
  using Item = std::pair<double, std::size_t>;
  while (amount - sent > eps) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(via.begin(), via.end(), std::numeric_limits<std::size_t>::max());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (std::size_t e : out_[v]) {
        if (residual(e) <= eps) continue;
        const std::size_t w = head(e);
        const double reduced = std::max(0.0, residual_cost(e) + potential[v] - potential[w]);
        if (d + reduced < dist[w]) {
          dist[w] = d + reduced;
          via[w] = e;
          heap.emplace(dist[w], w);
        }
      }
    }
    if (dist[sink] == kUnreached) {
      throw InfeasibleError("min-cost flow: network carries only " + std::to_string(sent) +
                            " of the required " + std::to_string(amount));
    }
    for (std::size_t v = 0; v < nodes_; ++v)
      if (dist[v] != kUnreached) potential[v] += dist[v];

    double push = amount - sent;
    for (std::size_t v = sink; v != source; v = tail(via[v])) push = std::min(push, residual(via[v]));
    for (std::size_t v = sink; v != source; v = tail(via[v])) {
      const std::size_t e = via[v];
      arcs_[e / 2].flow += e % 2 == 0 ? push : -push;
    }
    sent += push;
    ++augmentations_;
  }
  return sent;
}

double MinCostFlow::cost() const {
  double c = 0.0;
  for (const Arc& a : arcs_) c += a.flow * a.cost;
  return c;
}

std::vector<double> MinCostFlow::residual_distances() const { return bellman_ford(true); }

}  // namespace cutlim
