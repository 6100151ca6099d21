#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cutlim/cut_densities.hpp"
#include "cutlim/graph.hpp"
#include "cutlim/homomorphism.hpp"
#include "cutlim/limits.hpp"
#include "cutlim/rng.hpp"

namespace cutlim {

/// xi(k,G): k vertices drawn with replacement with probabilities
/// alpha_i / alpha_G, then each pair (a,b) joined with probability
/// beta of the drawn vertices (the loop weight when both draws coincide).
/// Draw order: k vertex draws, then one draw per pair in colex order.
SimpleGraph sample_graph(const WeightedGraph& g, int k, SeededRng& rng);

/// xi(k,W): k uniform points, pairs joined with probability W(X_a, X_b).
/// Throws DomainError if W takes values outside [0,1].
SimpleGraph sample_graphon(const StepfunctionGraphon& w, int k, SeededRng& rng);

/// Unit vertex weights, loops 0.
WeightedGraph as_weighted(const SimpleGraph& f);

/// Linear interpolation between order statistics (position p (n-1)).
double quantile(std::vector<double> values, double p);

struct TestabilityReport {
  double f_graph = 0.0;
  std::vector<double> f_sample;   // indexed by repetition
  std::vector<double> deviation;  // |f(G) - f(sample)|
  double mean = 0.0;
  double max = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
  double q95 = 0.0;
  double q99 = 0.0;
};

/// Repetition r samples xi(k,G) from SeededRng(master_seed, r).
TestabilityReport testability_experiment(const WeightedGraph& g, int k,
                                         const DensityParameter& parameter, int reps,
                                         std::uint64_t master_seed, const Limits& limits = {});

}  // namespace cutlim
