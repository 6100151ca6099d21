#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cutlim/cut_metrics.hpp"
#include "cutlim/errors.hpp"
#include "cutlim/linalg.hpp"
#include "oracles.hpp"

using namespace cutlim;

namespace {

std::vector<double> equal_widths(std::size_t m) { return std::vector<double>(m, 1.0 / static_cast<double>(m)); }

StepfunctionGraphon graphon(const Matrix& v, const std::vector<double>& widths) {
  return StepfunctionGraphon::from_widths(widths, v);
}

Matrix scaled(const Matrix& a, double s) {
  Matrix r = a;
  for (auto& x : r.data()) x *= s;
  return r;
}

Matrix sum(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += b.data()[i];
  return r;
}

double integral(const StepfunctionGraphon& w, const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
  const auto widths = w.widths();
  double x = 0.0;
  for (auto i : s)
    for (auto j : t) x += widths[i] * widths[j] * w.values()(i, j);
  return x;
}

QuotientGraph random_quotient(std::mt19937_64& gen, int q) {
  const auto widths = oracle::random_widths(gen, static_cast<std::size_t>(q));
  return QuotientGraph{widths, oracle::random_symmetric(gen, static_cast<std::size_t>(q), 0.0, 1.0)};
}

WeightedGraph cycle4() { return WeightedGraph(Matrix{{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}}); }

WeightedGraph complete(std::size_t n) {
  Matrix b(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) b(i, i) = 0.0;
  return WeightedGraph(b);
}

}  // namespace

TEST(CutNormExact, WorkedExamples) {
  EXPECT_EQ(cutnorm_exact(StepfunctionGraphon::uniform(Matrix(3, 3, 0.0))).value, 0.0);
  EXPECT_DOUBLE_EQ(cutnorm_exact(StepfunctionGraphon::uniform(Matrix{{-0.7}})).value, 0.7);
  const auto r = cutnorm_exact(StepfunctionGraphon::uniform(Matrix{{1, -1}, {-1, 1}}));
  EXPECT_DOUBLE_EQ(r.value, 0.25);
  EXPECT_DOUBLE_EQ(r.value, oracle::cutnorm_brute(Matrix{{1, -1}, {-1, 1}}, equal_widths(2)));
  EXPECT_TRUE(r.exact);
}

TEST(CutNormExact, MatchesFullEnumerationAndCertificate) {
  std::mt19937_64 gen(41);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep % 8);
    const auto v = oracle::random_symmetric(gen, m, -1.0, 1.0);
    const auto widths = oracle::random_widths(gen, m);
    const auto w = graphon(v, widths);
    const auto r = cutnorm_exact(w);
    EXPECT_NEAR(r.value, oracle::cutnorm_brute(v, widths), 1e-12);
    EXPECT_NEAR(std::abs(integral(w, r.s, r.t)), r.value, 1e-12);
  }
}

TEST(CutNormExact, OptimalSetsAreUnionsOfSteps) {
  // Splitting every step in two does not change the value.
  std::mt19937_64 gen(42);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 2 + static_cast<std::size_t>(rep % 5);
    const auto v = oracle::random_symmetric(gen, m, -1.0, 1.0);
    const auto widths = oracle::random_widths(gen, m);
    Matrix fine(2 * m, 2 * m);
    std::vector<double> fw(2 * m);
    for (std::size_t i = 0; i < 2 * m; ++i) {
      fw[i] = widths[i / 2] * (i % 2 == 0 ? 0.3 : 0.7);
      for (std::size_t j = 0; j < 2 * m; ++j) fine(i, j) = v(i / 2, j / 2);
    }
    EXPECT_NEAR(cutnorm_exact(graphon(fine, fw)).value, cutnorm_exact(graphon(v, widths)).value, 1e-12);
  }
}

TEST(CutNormExact, IsANorm) {
  std::mt19937_64 gen(43);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t m = 2 + static_cast<std::size_t>(rep % 7);
    const auto widths = oracle::random_widths(gen, m);
    const auto a = oracle::random_symmetric(gen, m, -1.0, 1.0);
    const auto b = oracle::random_symmetric(gen, m, -1.0, 1.0);
    const double na = cutnorm_exact(graphon(a, widths)).value;
    const double nb = cutnorm_exact(graphon(b, widths)).value;
    EXPECT_LE(cutnorm_exact(graphon(sum(a, b), widths)).value, na + nb + 1e-12);
    for (double s : {-2.5, -1.0, 0.0, 0.3, 4.0})
      EXPECT_NEAR(cutnorm_exact(graphon(scaled(a, s), widths)).value, std::abs(s) * na, 1e-12);
  }
}

TEST(CutNormExact, Guard) {
  Limits l;
  l.cutnorm_max_steps = 4;
  try {
    (void)cutnorm_exact(StepfunctionGraphon::uniform(Matrix(5, 5, 1.0)), l);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("heuristic"), std::string::npos);
  }
}

TEST(CutNormExact, InnerClosedFormMatchesFullEnumeration) {
  // For each S, max over T of |sum| equals max(sum of positive column sums,
  // -sum of negative ones); checked against all 2^m choices of T.
  std::mt19937_64 gen(44);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep % 8);
    const auto v = oracle::random_symmetric(gen, m, -1.0, 1.0);
    const auto widths = oracle::random_widths(gen, m);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
      std::vector<double> col(m, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        if ((s >> i) & 1U)
          for (std::size_t j = 0; j < m; ++j) col[j] += widths[i] * widths[j] * v(i, j);
      double pos = 0.0, neg = 0.0;
      for (double c : col) (c > 0 ? pos : neg) += c;
      const double closed = std::max(pos, -neg);
      double brute = 0.0;
      for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
        double x = 0.0;
        for (std::size_t j = 0; j < m; ++j)
          if ((t >> j) & 1U) x += col[j];
        brute = std::max(brute, std::abs(x));
      }
      ASSERT_NEAR(closed, brute, 1e-12);
    }
    // The library value is the max of the closed form over S.
    EXPECT_NEAR(cutnorm_exact(graphon(v, widths)).value, oracle::cutnorm_brute(v, widths), 1e-12);
  }
}

TEST(CutNormExact, OneSidedFactorSixBound) {
  std::mt19937_64 gen(45);
  for (std::size_t n = 2; n <= 16; ++n)
    for (int rep = 0; rep < 4; ++rep) {
      const auto v = oracle::random_signs(gen, n);
      const auto w = StepfunctionGraphon::uniform(v);
      const double full = cutnorm_exact(w).value;
      const double one = cutnorm_one_sided(w);
      // Independent one-sided value.
      double ref = 0.0;
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
        double x = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (((u >> i) & 1U) && !((u >> j) & 1U)) x += v(i, j);
        ref = std::max(ref, std::abs(x) / static_cast<double>(n * n));
      }
      EXPECT_NEAR(one, ref, 1e-12);
      EXPECT_LE(full, 6.0 * one + 1e-12) << "n=" << n;
    }
}

TEST(CutNormExact, SpectralDomination) {
  std::mt19937_64 gen(46);
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto g = oracle::random_graph(gen, n, true, true);
    const auto ev = oracle::eigenvalues(g.beta());
    const double rho = std::max(std::abs(ev.front()), std::abs(ev.back()));
    EXPECT_LE(cutnorm_exact(stepfunction(g)).value, rho / static_cast<double>(n) + 1e-9);
    const auto s = oracle::random_signs(gen, n);
    const auto es = oracle::eigenvalues(s);
    EXPECT_LE(cutnorm_exact(StepfunctionGraphon::uniform(s)).value,
              std::max(std::abs(es.front()), std::abs(es.back())) / static_cast<double>(n) + 1e-9);
  }
}

TEST(CutNormHeuristic, WorkedExamples) {
  const SeededRng rng(1);
  EXPECT_EQ(cutnorm_heuristic(StepfunctionGraphon::uniform(Matrix(4, 4, 0.0)), 8, rng).value, 0.0);
  std::mt19937_64 gen(47);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t m = 3 + static_cast<std::size_t>(rep);
    const auto widths = oracle::random_widths(gen, m);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> x(m);
    for (auto& e : x) e = u(gen);
    Matrix v(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) v(i, j) = x[i] * x[j];
    const auto w = graphon(v, widths);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) total += widths[i] * widths[j] * v(i, j);
    const auto r = cutnorm_heuristic(w, 1, rng);
    EXPECT_NEAR(r.value, total, 1e-12);
    EXPECT_EQ(r.s.size(), m);
    EXPECT_EQ(r.t.size(), m);
  }
}

TEST(CutNormHeuristic, MatchesExactOnMostSignInstances) {
  std::mt19937_64 gen(48);
  int hits = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 8 + static_cast<std::size_t>(rep % 13);
    const auto w = StepfunctionGraphon::uniform(oracle::random_signs(gen, m));
    const double exact = cutnorm_exact(w).value;
    const auto h = cutnorm_heuristic(w, 32, SeededRng(7, static_cast<std::uint64_t>(rep)));
    ASSERT_LE(h.value, exact + 1e-12);
    EXPECT_NEAR(std::abs(integral(w, h.s, h.t)), h.value, 1e-12);
    EXPECT_FALSE(h.exact);
    hits += h.value >= exact - 1e-12;
  }
  EXPECT_GE(hits, 95);
}

TEST(CutNormHeuristic, Deterministic) {
  std::mt19937_64 gen(49);
  const auto w = StepfunctionGraphon::uniform(oracle::random_symmetric(gen, 30, -1.0, 1.0));
  const auto a = cutnorm_heuristic(w, 16, SeededRng(3));
  const auto b = cutnorm_heuristic(w, 16, SeededRng(3));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.s, b.s);
}

TEST(CutNorm, DispatchesOnGuard) {
  std::mt19937_64 gen(50);
  const auto w = StepfunctionGraphon::uniform(oracle::random_symmetric(gen, 8, -1.0, 1.0));
  EXPECT_TRUE(cutnorm(w, 4, SeededRng(1)).exact);
  Limits l;
  l.cutnorm_max_steps = 5;
  EXPECT_FALSE(cutnorm(w, 4, SeededRng(1), l).exact);
}

TEST(CutDistance, WorkedExamples) {
  std::mt19937_64 gen(51);
  const auto g = oracle::random_graph(gen, 6, true);
  EXPECT_EQ(cut_distance_perm(g, g).value, 0.0);
  // Relabel g by a fixed permutation.
  const std::vector<std::size_t> pi{3, 0, 5, 1, 4, 2};
  Matrix b(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) b(pi[i], pi[j]) = g.beta(i, j);
  EXPECT_NEAR(cut_distance_perm(g, WeightedGraph(b)).value, 0.0, 1e-15);
}

TEST(CutDistance, CycleVersusCompleteMatchesPermutationOracle) {
  const auto c4 = cycle4();
  const auto k4 = complete(4);
  std::vector<std::size_t> perm{0, 1, 2, 3};
  double best = 1e300;
  int count = 0;
  do {
    Matrix d(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) d(i, j) = c4.beta(i, j) - k4.beta(perm[i], perm[j]);
    best = std::min(best, oracle::cutnorm_brute(d, equal_widths(4)));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const auto r = cut_distance_perm(c4, k4);
  EXPECT_NEAR(r.value, best, 1e-15);
  EXPECT_EQ(r.permutations_tried, static_cast<std::size_t>(count));
}

TEST(CutDistance, RandomPairsMatchOracleAndCertificate) {
  std::mt19937_64 gen(52);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t n = 3 + static_cast<std::size_t>(rep % 3);
    const auto g1 = oracle::random_graph(gen, n, true, true);
    const auto g2 = oracle::random_graph(gen, n, true, true);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      Matrix d(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d(i, j) = g1.beta(i, j) - g2.beta(perm[i], perm[j]);
      best = std::min(best, oracle::cutnorm_brute(d, equal_widths(n)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto r = cut_distance_perm(g1, g2);
    EXPECT_NEAR(r.value, best, 1e-12);
    EXPECT_NEAR(cutnorm_exact(difference(g1, g2, r.permutation)).value, r.value, 1e-15);
    // Symmetric in its arguments.
    EXPECT_NEAR(cut_distance_perm(g2, g1).value, r.value, 1e-12);
  }
}

TEST(CutDistance, Errors) {
  EXPECT_THROW(cut_distance_perm(complete(3), complete(4)), InputError);
  const WeightedGraph a({1.0, 2.0}, Matrix(2, 2));
  const WeightedGraph b({1.0, 3.0}, Matrix(2, 2));
  EXPECT_THROW(cut_distance_perm(a, b), InputError);
  EXPECT_THROW(cut_distance_perm(complete(9), complete(9)), InputError);
}

TEST(D1Distance, WorkedExamples) {
  std::mt19937_64 gen(53);
  const auto h = random_quotient(gen, 3);
  EXPECT_EQ(d1_distance(h, h), 0.0);
  EXPECT_DOUBLE_EQ(d1_distance(QuotientGraph{{1.0}, Matrix{{0.2}}}, QuotientGraph{{1.0}, Matrix{{0.9}}}), 0.7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_quotient(gen, 2);
    const auto b = random_quotient(gen, 2);
    double ref = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      ref += std::abs(a.vweights[i] - b.vweights[i]);
      for (std::size_t j = 0; j < 2; ++j)
        ref += std::abs(a.vweights[i] * a.vweights[j] * a.eweights(i, j) -
                        b.vweights[i] * b.vweights[j] * b.eweights(i, j));
    }
    EXPECT_NEAR(d1_distance(a, b), ref, 1e-15);
    EXPECT_DOUBLE_EQ(d1_distance(a, b), d1_distance(b, a));
    EXPECT_GT(d1_distance(a, b), 0.0);
  }
  EXPECT_THROW(d1_distance(random_quotient(gen, 2), random_quotient(gen, 3)), InputError);
}

TEST(Hausdorff, WorkedExamples) {
  std::mt19937_64 gen(54);
  const auto h1 = random_quotient(gen, 2);
  const auto h2 = random_quotient(gen, 2);
  EXPECT_DOUBLE_EQ(hausdorff_distance(QuotientSet{2, {h1}}, QuotientSet{2, {h2}}), d1_distance(h1, h2));
  EXPECT_THROW(hausdorff_distance(QuotientSet{2, {}}, QuotientSet{2, {h1}}), InputError);
  EXPECT_THROW(hausdorff_distance(QuotientSet{2, {h1}}, QuotientSet{3, {random_quotient(gen, 3)}}), InputError);
}

TEST(Hausdorff, MetricPropertiesAgainstPairTable) {
  std::mt19937_64 gen(55);
  auto make = [&] {
    QuotientSet s{2, {}};
    for (int i = 0; i < 5; ++i) s.items.push_back(random_quotient(gen, 2));
    return s;
  };
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = make();
    const auto b = make();
    const auto c = make();
    auto directed = [](const QuotientSet& x, const QuotientSet& y) {
      double sup = 0.0;
      for (const auto& h : x.items) {
        double inf = 1e300;
        for (const auto& k : y.items) inf = std::min(inf, d1_distance(h, k));
        sup = std::max(sup, inf);
      }
      return sup;
    };
    const double ab = hausdorff_distance(a, b);
    EXPECT_DOUBLE_EQ(ab, std::max(directed(a, b), directed(b, a)));
    EXPECT_DOUBLE_EQ(ab, hausdorff_distance(b, a));
    EXPECT_EQ(hausdorff_distance(a, a), 0.0);
    EXPECT_LE(hausdorff_distance(a, c), ab + hausdorff_distance(b, c) + 1e-12);
  }
}

TEST(QuotientSet, WorkedExamples) {
  const WeightedGraph p3(Matrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  const auto one = quotient_set(p3, 1, BalanceSpec::unrestricted());
  ASSERT_EQ(one.items.size(), 1u);
  EXPECT_DOUBLE_EQ(one.items[0].vweights[0], 1.0);
  EXPECT_THROW(quotient_set(p3, 2, BalanceSpec::c_balanced(0.4)), InfeasibleError);
  const auto bal = quotient_set(cycle4(), 2, BalanceSpec::c_balanced(0.5));
  EXPECT_EQ(bal.items.size(), 6u);
  for (const auto& h : bal.items) {
    EXPECT_DOUBLE_EQ(h.vweights[0], 0.5);
    EXPECT_DOUBLE_EQ(h.vweights[1], 0.5);
  }
  EXPECT_EQ(quotient_set(p3, 2, BalanceSpec::unrestricted()).items.size(), 6u);
}

TEST(QuotientSet, MatchesLabelingOracle) {
  std::mt19937_64 gen(56);
  const auto g = oracle::random_graph(gen, 6);
  const auto set = quotient_set(g, 3, BalanceSpec::c_balanced(0.2));
  std::size_t expected = 0;
  oracle::for_each_labeling(6, 3, [&](const std::vector<int>& l) {
    const auto m = oracle::masses(g, l, 3);
    if (*std::min_element(m.begin(), m.end()) >= 0.2 - 1e-12) ++expected;
  });
  EXPECT_EQ(set.items.size(), expected);
  EXPECT_EQ(hausdorff_distance(set, quotient_set(g, 3, BalanceSpec::c_balanced(0.2))), 0.0);
}
