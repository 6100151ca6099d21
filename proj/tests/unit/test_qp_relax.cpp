#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cutlim/cut_densities.hpp"
#include "cutlim/errors.hpp"
#include "cutlim/min_cost_flow.hpp"
#include "cutlim/parallel.hpp"
#include "cutlim/qp_relax.hpp"
#include "oracles.hpp"

using namespace cutlim;

namespace {

// Random point of the polytope: a convex combination of oracle vertices.
Matrix random_point(const QPProblem& p, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(static_cast<std::size_t>(p.q), p.n);
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    Matrix g(static_cast<std::size_t>(p.q), p.n);
    for (double& v : g.data()) v = u(gen) - 0.5;
    const double w = u(gen) + 0.1;
    const auto s = lp_oracle(p, g).x;
    for (std::size_t i = 0; i < x.data().size(); ++i) x.data()[i] += w * s.data()[i];
    total += w;
  }
  for (double& v : x.data()) v /= total;
  return x;
}

double lp_value(const Matrix& g, const Matrix& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.data().size(); ++i) s += g.data()[i] * x.data()[i];
  return s;
}

WeightedGraph two_cliques() {
  return WeightedGraph(Matrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

}  // namespace

TEST(MinCostFlow, TransportationByHand) {
  // Two sources with supply 1, two sinks with demand 1; crossing is cheaper.
  MinCostFlow f(6);
  f.add_arc(0, 1, 1, 0);
  f.add_arc(0, 2, 1, 0);
  const auto a13 = f.add_arc(1, 3, 1, 5);
  const auto a14 = f.add_arc(1, 4, 1, 1);
  const auto a23 = f.add_arc(2, 3, 1, 2);
  f.add_arc(2, 4, 1, 4);
  f.add_arc(3, 5, 1, 0);
  f.add_arc(4, 5, 1, 0);
  EXPECT_DOUBLE_EQ(f.solve(0, 5, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(f.cost(), 3.0);
  EXPECT_DOUBLE_EQ(f.flow(a14), 1.0);
  EXPECT_DOUBLE_EQ(f.flow(a23), 1.0);
  EXPECT_DOUBLE_EQ(f.flow(a13), 0.0);
  // Reduced costs of residual arcs are nonnegative at optimality.
  const auto d = f.residual_distances();
  EXPECT_LE(d[3] - d[1], 5.0 + 1e-12);
  MinCostFlow g(2);
  g.add_arc(0, 1, 0.5, 1.0);
  EXPECT_THROW(g.solve(0, 1, 1.0), InfeasibleError);
}

TEST(Objective, WorkedExamples) {
  std::mt19937_64 gen(81);
  const auto g = oracle::random_graph(gen, 5);
  const QPProblem p(g, 3, 0.0);
  Matrix single(3, 5);
  for (std::size_t j = 0; j < 5; ++j) single(1, j) = p.alpha[j];
  EXPECT_EQ(objective(p, single), 0.0);
  const Partition part({0, 1, 2, 0, 1}, 3);
  EXPECT_NEAR(objective(p, indicator(p, part)), cut_density(g, part), 1e-14);
  const QPProblem zero(std::vector<double>(4, 1.0), Matrix(4, 4), 2, 0.25);
  EXPECT_EQ(objective(zero, random_point(zero, gen)), 0.0);
  EXPECT_THROW(objective(p, Matrix(2, 5)), InputError);
}

TEST(Objective, MatchesKroneckerForm) {
  std::mt19937_64 gen(82);
  for (int q = 2; q <= 4; ++q) {
    const auto g = oracle::random_graph(gen, 5, false, true);
    const QPProblem p(g, q, 0.0);
    const auto x = random_point(p, gen);
    Matrix a(static_cast<std::size_t>(q), static_cast<std::size_t>(q), 1.0);
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) = 0.0;
    const auto k = kronecker(a, p.B);
    const auto kx = multiply(k, x.data());
    double half = 0.0;
    for (std::size_t i = 0; i < kx.size(); ++i) half += 0.5 * x.data()[i] * kx[i];
    EXPECT_NEAR(objective(p, x), half, 1e-14);
  }
}

TEST(Gradient, WorkedExamples) {
  std::mt19937_64 gen(83);
  const auto g = oracle::random_graph(gen, 4, false, true);
  const QPProblem p(g, 2, 0.0);
  Matrix x(2, 4);
  for (std::size_t j = 0; j < 4; ++j) x(0, j) = p.alpha[j];
  const auto grad = gradient(p, x);
  const auto bx = multiply(p.B, x.row(0));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(grad(0, j), 0.0);
    EXPECT_NEAR(grad(1, j), bx[j], 1e-15);
  }
  const QPProblem zero(std::vector<double>(3, 1.0), Matrix(3, 3), 2, 0.0);
  const auto gz = gradient(zero, random_point(zero, gen));
  for (double v : gz.data()) EXPECT_EQ(v, 0.0);
}

TEST(Gradient, CentralFiniteDifferences) {
  std::mt19937_64 gen(84);
  double worst = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 3 + static_cast<std::size_t>(inst % 6);
    const int q = 2 + inst % 2;
    const QPProblem p(oracle::random_graph(gen, n, inst % 2 == 0, true), q, 0.0);
    for (int pt = 0; pt < 10; ++pt) {
      const auto x = random_point(p, gen);
      const auto grad = gradient(p, x);
      const double h = 1e-6;
      for (std::size_t k = 0; k < x.data().size(); ++k) {
        Matrix up = x, down = x;
        up.data()[k] += h;
        down.data()[k] -= h;
        const double fd = (objective(p, up) - objective(p, down)) / (2 * h);
        worst = std::max(worst, std::abs(fd - grad.data()[k]));
      }
    }
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(LpOracle, WorkedExamples) {
  const QPProblem p({0.5, 0.5}, Matrix(2, 2), 2, 0.0);
  const auto s = lp_oracle(p, Matrix{{0, 1}, {1, 0}});
  EXPECT_EQ(s.x, (Matrix{{0.5, 0}, {0, 0.5}}));
  EXPECT_DOUBLE_EQ(s.cost, 0.0);
  const QPProblem flat(std::vector<double>(4, 1.0), Matrix(4, 4), 3, 0.0);
  const auto z = lp_oracle(flat, Matrix(3, 4));
  EXPECT_LT(infeasibility(flat, z.x), 1e-12);
  const QPProblem bad(std::vector<double>(4, 1.0), Matrix(4, 4), 3, 0.4);
  EXPECT_THROW(lp_oracle(bad, Matrix(3, 4)), InfeasibleError);
}

TEST(LpOracle, MatchesBasisEnumerationAndSlackness) {
  std::mt19937_64 gen(85);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rep % 4);
    const int q = 2 + rep % 2;
    const double c = (rep % 3) * 0.5 / q;
    const QPProblem p(oracle::random_graph(gen, n), q, c);
    Matrix g(static_cast<std::size_t>(q), n);
    for (double& v : g.data()) v = u(gen);
    const auto s = lp_oracle(p, g);
    EXPECT_LT(infeasibility(p, s.x), 1e-12);
    EXPECT_NEAR(s.cost, lp_value(g, s.x), 1e-12);
    EXPECT_NEAR(s.cost, oracle::lp_brute(g, p.alpha, c), 1e-10);
    EXPECT_LT(s.slackness_residual, 1e-9);
    // The duals certify optimality: u_j + v_i <= g_ij, v >= 0, and strong duality.
    double dual = 0.0;
    for (std::size_t j = 0; j < n; ++j) dual += s.u[j] * p.alpha[j];
    for (int i = 0; i < q; ++i) {
      EXPECT_GE(s.v[static_cast<std::size_t>(i)], -1e-12);
      dual += s.v[static_cast<std::size_t>(i)] * c;
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_LE(s.u[j] + s.v[static_cast<std::size_t>(i)], g(static_cast<std::size_t>(i), j) + 1e-9);
    }
    EXPECT_NEAR(dual, s.cost, 1e-9);
  }
}

TEST(Solve, WorkedExamples) {
  const QPProblem p(two_cliques(), 2, 0.4);
  const auto r = solve(p, SolveOptions{}, SeededRng(1));
  EXPECT_NEAR(r.report.objective, 0.0, 1e-12);
  const auto rounded = round_to_partition(p, r.x);
  EXPECT_EQ(rounded.partition.canonical().label_string(), "0011");
  EXPECT_EQ(rounded.value, 0.0);

  const QPProblem zero(std::vector<double>(4, 1.0), Matrix(4, 4), 2, 0.25);
  const auto z = solve(zero, SolveOptions{}, SeededRng(2));
  EXPECT_EQ(z.report.objective, 0.0);
  for (const auto& s : z.report.starts) EXPECT_EQ(s.initial, 0.0);

  const QPProblem bad(std::vector<double>(4, 1.0), Matrix(4, 4), 3, 0.4);
  EXPECT_THROW(solve(bad, SolveOptions{}, SeededRng(1)), InfeasibleError);
}

TEST(Solve, RelaxationOrderingAndCertificates) {
  std::mt19937_64 gen(86);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t n = 4 + static_cast<std::size_t>(rep % 5);
    const int q = 2 + rep % 2;
    const double c = 0.8 / q;
    const auto g = oracle::random_graph(gen, n, rep % 2 == 0);
    const QPProblem p(g, q, c);
    SolveOptions o;
    o.check_line_search = true;
    const auto r = solve(p, o, SeededRng(static_cast<std::uint64_t>(rep)));
    double exact = 0.0;
    try {
      exact = min_cut_density(g, q, BalanceSpec::c_balanced(c)).value;
    } catch (const InfeasibleError&) {
      // The polytope is non-empty, only its integral points are missing.
      EXPECT_THROW(round_to_partition(p, r.x), InfeasibleError);
      continue;
    }
    EXPECT_LE(r.report.objective, exact + 1e-9);
    EXPECT_LT(r.report.max_infeasibility, 1e-9);
    EXPECT_LT(infeasibility(p, r.x), 1e-9);
    EXPECT_LT(r.report.line_search_violation, 1e-12);
    EXPECT_LT(r.report.max_slackness_residual, 1e-9);
    EXPECT_GE(r.report.fw_gap, -1e-9);
    EXPECT_NEAR(objective(p, r.x), r.report.objective, 1e-12);
    EXPECT_EQ(r.report.starts.size(), 16u);
    const auto rounded = round_to_partition(p, r.x);
    EXPECT_GE(rounded.value, r.report.objective - 1e-9);
    EXPECT_NEAR(rounded.value, cut_density(g, rounded.partition), 1e-14);
    const auto m = oracle::masses(g, std::vector<int>(rounded.partition.labels().begin(), rounded.partition.labels().end()), q);
    for (double x : m) EXPECT_GE(x, c - 1e-12);
  }
}

TEST(Solve, DeterministicAcrossWorkerCounts) {
  std::mt19937_64 gen(87);
  const QPProblem p(oracle::random_graph(gen, 9), 3, 0.2);
  set_worker_count(1);
  const auto a = solve(p, SolveOptions{}, SeededRng(5));
  set_worker_count(4);
  const auto b = solve(p, SolveOptions{}, SeededRng(5));
  set_worker_count(0);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.report.objective, b.report.objective);
  EXPECT_EQ(a.report.best_start, b.report.best_start);
}

TEST(Round, IndicatorRoundTripAndRepair) {
  std::mt19937_64 gen(88);
  const auto g = oracle::random_graph(gen, 6);
  const QPProblem p(g, 3, 0.1);
  const Partition part({2, 0, 1, 1, 0, 2}, 3);
  const auto r = round_to_partition(p, indicator(p, part));
  EXPECT_EQ(r.partition, part);
  EXPECT_EQ(r.repair_moves, 0);
  // Everything in cluster 0 forces repairs into clusters 1 and 2.
  const QPProblem unit(std::vector<double>(6, 1.0), oracle::random_graph(gen, 6, true).beta(), 3, 1.0 / 3.0);
  const auto fixed = round_to_partition(unit, indicator(unit, Partition({0, 0, 0, 0, 1, 2}, 3)));
  const auto m = oracle::masses(unit.graph(), std::vector<int>(fixed.partition.labels().begin(), fixed.partition.labels().end()), 3);
  for (double x : m) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(fixed.repair_moves, 2);
}

TEST(Round, PlantedSplitRecovered) {
  const std::vector<std::size_t> sizes{4, 5};
  const auto g = blow_up(Matrix{{0.9, 0.0}, {0.0, 0.8}}, sizes);
  const QPProblem p(g, 2, 0.3);
  const auto r = solve(p, SolveOptions{}, SeededRng(3));
  EXPECT_NEAR(r.report.objective, 0.0, 1e-12);
  const auto rounded = round_to_partition(p, r.x);
  EXPECT_EQ(rounded.partition.canonical(), min_cut_density(g, 2, BalanceSpec::c_balanced(0.3)).partition);
  EXPECT_EQ(rounded.partition.canonical().label_string(), "000011111");
}

TEST(LocalSearch, NeverWorsens) {
  std::mt19937_64 gen(89);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = oracle::random_graph(gen, 8);
    const QPProblem p(g, 2, 0.25);
    const Partition start({0, 1, 0, 1, 0, 1, 0, 1}, 2);
    try {
      const auto better = local_search(p, start);
      EXPECT_LE(cut_density(g, better), cut_density(g, start) + 1e-15);
    } catch (const InfeasibleError&) {
    }
  }
}

TEST(Kronecker, WorkedExamples) {
  const QPProblem p({0.5, 0.5}, Matrix{{0, 1}, {1, 0}}, 2, 0.0);
  const auto r = kronecker_spectrum_check(p);
  ASSERT_TRUE(r.direct_checked);
  const std::vector<double> expected{1, 1, -1, -1};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(r.predicted[i], expected[i], 1e-12);
    EXPECT_NEAR(r.direct[i], expected[i], 1e-12);
  }
  EXPECT_TRUE(r.indefinite);
}

TEST(Kronecker, PredictedMatchesIndependentEigensolve) {
  std::mt19937_64 gen(90);
  for (int q = 2; q <= 3; ++q)
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto g = oracle::random_graph(gen, n, false, true);
      const QPProblem p(g, q, 0.0);
      const auto r = kronecker_spectrum_check(p);
      Matrix a(static_cast<std::size_t>(q), static_cast<std::size_t>(q), 1.0);
      for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) = 0.0;
      const auto ref = oracle::eigenvalues(kronecker(a, p.B));
      ASSERT_EQ(r.predicted.size(), ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_NEAR(r.predicted[i], ref[i], 1e-8);
        EXPECT_NEAR(r.direct[i], ref[i], 1e-8);
      }
      EXPECT_LT(r.max_deviation, 1e-8);
      EXPECT_EQ(r.indefinite, r.b_eigenvalues.front() > 0.0);
    }
}
