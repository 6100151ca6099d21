#include "cutlim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cutlim/errors.hpp"
#include "cutlim/parallel.hpp"

namespace cutlim {

namespace {

template <class Probability>
SimpleGraph join_pairs(int k, SeededRng& rng, Probability&& p) {
  std::vector<std::pair<int, int>> edges;
  for (int b = 1; b < k; ++b)
    for (int a = 0; a < b; ++a)
      if (rng.bernoulli(p(a, b))) edges.emplace_back(a, b);
  return SimpleGraph(k, edges);
}

}  // namespace

SimpleGraph sample_graph(const WeightedGraph& g, int k, SeededRng& rng) {
  if (k < 1) throw InputError("sample size k must be at least 1");
  std::vector<double> cdf(g.size());
  std::partial_sum(g.alpha().begin(), g.alpha().end(), cdf.begin());
  for (double& x : cdf) x /= g.volume();
  std::vector<std::size_t> draw(static_cast<std::size_t>(k));
  for (auto& v : draw) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    v = std::min(static_cast<std::size_t>(it - cdf.begin()), g.size() - 1);
  }
  return join_pairs(k, rng, [&](int a, int b) {
    return g.beta(draw[static_cast<std::size_t>(a)], draw[static_cast<std::size_t>(b)]);
  });
}

SimpleGraph sample_graphon(const StepfunctionGraphon& w, int k, SeededRng& rng) {
  if (k < 1) throw InputError("sample size k must be at least 1");
  for (double v : w.values().data())
    if (v < 0.0 || v > 1.0)
      throw DomainError("sample_graphon needs values in [0,1]; found " + std::to_string(v));
  std::vector<double> x(static_cast<std::size_t>(k));
  for (double& v : x) v = rng.uniform();
  return join_pairs(k, rng, [&](int a, int b) {
    return w(x[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(b)]);
  });
}

WeightedGraph as_weighted(const SimpleGraph& f) {
  const auto k = static_cast<std::size_t>(f.k());
  Matrix beta(k, k);
  for (const auto& [a, b] : f.edges()) {
    beta(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = 1.0;
    beta(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = 1.0;
  }
  return WeightedGraph(std::move(beta));
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

TestabilityReport testability_experiment(const WeightedGraph& g, int k,
                                         const DensityParameter& parameter, int reps,
                                         std::uint64_t master_seed, const Limits& limits) {
  if (reps < 1) throw InputError("reps must be at least 1");
  TestabilityReport r;
  r.f_graph = parameter.evaluate(g, limits);
  r.f_sample.assign(static_cast<std::size_t>(reps), 0.0);
  parallel_for(r.f_sample.size(), [&](std::size_t rep) {
    SeededRng rng(master_seed, rep);
    r.f_sample[rep] = parameter.evaluate(as_weighted(sample_graph(g, k, rng)), limits);
  });
  r.deviation.resize(r.f_sample.size());
  for (std::size_t i = 0; i < r.f_sample.size(); ++i)
    r.deviation[i] = std::abs(r.f_graph - r.f_sample[i]);
  double sum = 0.0;
  for (double d : r.deviation) {
    sum += d;
    r.max = std::max(r.max, d);
  }
  r.mean = sum / static_cast<double>(r.deviation.size());
  r.q50 = quantile(r.deviation, 0.5);
  r.q90 = quantile(r.deviation, 0.9);
  r.q95 = quantile(r.deviation, 0.95);
  r.q99 = quantile(r.deviation, 0.99);
  return r;
}

}  // namespace cutlim
