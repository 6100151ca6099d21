#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cutlim/errors.hpp"
#include "cutlim/homomorphism.hpp"
#include "cutlim/sampling.hpp"
#include "oracles.hpp"

using namespace cutlim;

namespace {

constexpr int kDraws = 100000;

WeightedGraph single_edge() { return WeightedGraph(Matrix{{0, 1}, {1, 0}}); }

std::vector<double> histogram_graph(const WeightedGraph& g, int k, std::uint64_t seed) {
  std::vector<double> h(std::size_t{1} << SimpleGraph::pair_count(k), 0.0);
  SeededRng rng(seed);
  for (int i = 0; i < kDraws; ++i) h[sample_graph(g, k, rng).mask()] += 1.0;
  return h;
}

std::vector<double> histogram_graphon(const StepfunctionGraphon& w, int k, std::uint64_t seed) {
  std::vector<double> h(std::size_t{1} << SimpleGraph::pair_count(k), 0.0);
  SeededRng rng(seed);
  for (int i = 0; i < kDraws; ++i) h[sample_graphon(w, k, rng).mask()] += 1.0;
  return h;
}

// Pearson statistic against expected probabilities; cells with zero
// expectation must be empty.
double chi_square(const std::vector<double>& counts, const std::vector<double>& p, double total,
                  int& cells) {
  double s = 0.0;
  cells = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) {
      EXPECT_EQ(counts[i], 0.0);
      continue;
    }
    const double e = p[i] * total;
    s += (counts[i] - e) * (counts[i] - e) / e;
    ++cells;
  }
  return s;
}

// Upper 0.001 quantiles of chi-square with 1..7 degrees of freedom.
double chi_square_critical(int df) {
  static const double q[] = {0, 10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322};
  return q[df];
}

WeightedGraph test_graph() {
  return WeightedGraph({1.0, 2.0, 0.5, 1.5},
                       Matrix{{0.2, 0.9, 0.1, 0.5}, {0.9, 0.0, 0.7, 0.3}, {0.1, 0.7, 1.0, 0.4}, {0.5, 0.3, 0.4, 0.6}});
}

}  // namespace

TEST(SampleGraph, TrivialCases) {
  SeededRng rng(1);
  Matrix ones(5, 5, 1.0);
  for (std::size_t i = 0; i < 5; ++i) ones(i, i) = 0.0;
  const WeightedGraph full(ones);
  const WeightedGraph none(Matrix(5, 5, 0.0));
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(sample_graph(none, 4, rng).edge_count(), 0);
  }
  EXPECT_EQ(sample_graph(full, 1, rng), SimpleGraph::empty(1));
}

TEST(SampleGraph, CompleteWhenDrawsAreDistinct) {
  // Loops 0, off-diagonal 1: the pair is joined exactly when the draws differ.
  Matrix ones(2, 2, 1.0);
  ones(0, 0) = ones(1, 1) = 0.0;
  SeededRng rng(2);
  int complete = 0;
  for (int i = 0; i < kDraws; ++i) complete += sample_graph(WeightedGraph(ones), 2, rng).edge_count();
  const double p = 0.5;
  EXPECT_NEAR(complete / double(kDraws), p, 4.0 * std::sqrt(p * (1 - p) / kDraws));
}

TEST(SampleGraph, SingleEdgeLaw) {
  const auto h = histogram_graph(single_edge(), 2, 3);
  const double p = 0.5;
  EXPECT_NEAR(h[1] / kDraws, p, 3.0 * std::sqrt(p * (1 - p) / kDraws));
}

TEST(SampleGraph, Deterministic) {
  const auto g = test_graph();
  SeededRng a(9, 4), b(9, 4);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_graph(g, 6, a), sample_graph(g, 6, b));
}

TEST(SampleGraph, EdgeFrequencyMatchesBeta) {
  // k = 2: P(edge) = sum_ij w_i w_j beta_ij.
  const auto g = test_graph();
  const auto w = g.normalized_alpha();
  double p = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) p += w[i] * w[j] * g.beta(i, j);
  const auto h = histogram_graph(g, 2, 4);
  EXPECT_NEAR(h[1] / kDraws, p, 4.0 * std::sqrt(p * (1 - p) / kDraws));
}

TEST(SampleGraph, VertexDrawFrequencies) {
  // Only vertex v carries a loop, so an edge on k = 2 means both draws hit v.
  const std::vector<double> alpha{1.0, 3.0, 2.0, 4.0};
  for (std::size_t v = 0; v < alpha.size(); ++v) {
    Matrix b(4, 4, 0.0);
    b(v, v) = 1.0;
    const WeightedGraph g(alpha, b);
    const double w = alpha[v] / 10.0;
    const double p = w * w;
    const auto h = histogram_graph(g, 2, 10 + v);
    EXPECT_NEAR(h[1] / kDraws, p, 4.0 * std::sqrt(p * (1 - p) / kDraws)) << "vertex " << v;
  }
}

TEST(SampleGraph, ChiSquareAgainstExactLaw) {
  const auto g = test_graph();
  const auto law = sample_distribution(3, g);
  int cells = 0;
  const double s = chi_square(histogram_graph(g, 3, 5), law.probability, kDraws, cells);
  EXPECT_LT(s, chi_square_critical(cells - 1));
}

TEST(SampleGraphon, ChiSquareAgainstGraphSampler) {
  const auto g = test_graph();
  const auto law = sample_distribution(3, g);
  const auto hw = histogram_graphon(stepfunction(g), 3, 6);
  int cells = 0;
  const double sw = chi_square(hw, law.probability, kDraws, cells);
  EXPECT_LT(sw, chi_square_critical(cells - 1));
  // Two-sample homogeneity test between the samplers.
  const auto hg = histogram_graph(g, 3, 7);
  double s = 0.0;
  int df = -1;
  for (std::size_t i = 0; i < hg.size(); ++i) {
    const double tot = hg[i] + hw[i];
    if (tot == 0.0) continue;
    const double e = tot / 2.0;
    s += (hg[i] - e) * (hg[i] - e) / e + (hw[i] - e) * (hw[i] - e) / e;
    ++df;
  }
  EXPECT_LT(s, chi_square_critical(df));
  double tv = 0.0;
  for (std::size_t i = 0; i < hg.size(); ++i) tv += std::abs(hg[i] - hw[i]) / kDraws;
  EXPECT_LT(tv / 2.0, 0.01);
}

TEST(SampleGraphon, ConstantIsErdosRenyi) {
  const auto w = StepfunctionGraphon::uniform(Matrix{{0.3}});
  SeededRng rng(8);
  double edges = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) edges += sample_graphon(w, 6, rng).edge_count();
  const double mean = 0.3 * 15;
  EXPECT_NEAR(edges / reps, mean, 4.0 * std::sqrt(15 * 0.3 * 0.7 / reps));
}

TEST(SampleGraphon, TrivialAndErrors) {
  SeededRng rng(9);
  EXPECT_EQ(sample_graphon(StepfunctionGraphon::uniform(Matrix{{1.0}}), 1, rng), SimpleGraph::empty(1));
  EXPECT_THROW(sample_graphon(StepfunctionGraphon::uniform(Matrix{{1.5}}), 3, rng), DomainError);
  EXPECT_THROW(sample_graphon(StepfunctionGraphon::uniform(Matrix{{-0.1}}), 3, rng), DomainError);
}

TEST(Quantile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(quantile({3, 1, 2, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({3, 1, 2, 4}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile({3, 1, 2, 4}, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile({0, 10}, 0.95), 9.5);
}

TEST(Testability, ConstantParameterGivesZeroDeviation) {
  std::mt19937_64 gen(31);
  const auto g = oracle::random_graph(gen, 8);
  const auto r = testability_experiment(g, 5, DensityParameter::parse("f1"), 50, 3);
  for (double d : r.deviation) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(r.max, 0.0);
}

TEST(Testability, TwoBlockZeroCrossDensity) {
  const int k = 6;
  const std::vector<std::size_t> sizes{5, 5};
  const auto g = blow_up(Matrix{{1, 0}, {0, 1}}, sizes);
  const int reps = 400;
  const auto r = testability_experiment(g, k, DensityParameter::parse("f2c", 1.0 / k), reps, 4);
  EXPECT_EQ(r.f_graph, 0.0);
  int zero = 0;
  for (int i = 0; i < reps; ++i) {
    // Samples from one block only are cliques (positive density); every other
    // sample splits into two cliques along its blocks.
    const auto& d = r.deviation[static_cast<std::size_t>(i)];
    EXPECT_TRUE(d == 0.0 || d >= 1.0 / (k * k) - 1e-15) << d;
    zero += d == 0.0;
  }
  const double p = 1.0 - 2.0 * std::pow(0.5, k);
  EXPECT_NEAR(zero / double(reps), p, 4.0 * std::sqrt(p * (1 - p) / reps));
}

TEST(Testability, DeterministicAndSummaryConsistent) {
  std::mt19937_64 gen(32);
  const auto g = oracle::random_graph(gen, 10, false, false);
  const auto param = DensityParameter::parse("f2c", 0.25);
  const auto a = testability_experiment(g, 6, param, 60, 17);
  const auto b = testability_experiment(g, 6, param, 60, 17);
  EXPECT_EQ(a.f_sample, b.f_sample);
  EXPECT_DOUBLE_EQ(a.f_graph, param.evaluate(g));
  double s = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < a.deviation.size(); ++i) {
    EXPECT_DOUBLE_EQ(a.deviation[i], std::abs(a.f_graph - a.f_sample[i]));
    s += a.deviation[i];
    mx = std::max(mx, a.deviation[i]);
  }
  EXPECT_NEAR(a.mean, s / 60.0, 1e-15);
  EXPECT_EQ(a.max, mx);
  EXPECT_LE(a.q50, a.q90);
  EXPECT_LE(a.q90, a.q95);
  EXPECT_LE(a.q95, a.q99);
  EXPECT_LE(a.q99, a.max);
  // Repetition r is a pure function of (seed, r).
  SeededRng rng(17, 5);
  const auto f5 = as_weighted(sample_graph(g, 6, rng));
  EXPECT_DOUBLE_EQ(a.f_sample[5], param.evaluate(f5));
}

TEST(Testability, GuardNamesLimit) {
  std::mt19937_64 gen(33);
  const auto g = oracle::random_graph(gen, 40);
  try {
    (void)testability_experiment(g, 4, DensityParameter::parse("f3"), 2, 1);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_FALSE(e.guard().empty());
  }
}
