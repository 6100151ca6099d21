#include "cutlim/cut_metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "cutlim/errors.hpp"
#include "cutlim/parallel.hpp"

namespace cutlim {

namespace {

constexpr std::size_t kChunkBits = 10;

std::vector<std::size_t> bits_of(std::uint64_t mask, std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m; ++i)
    if ((mask >> i) & 1U) out.push_back(i);
  return out;
}

// Best T for fixed column sums: steps with positive (or negative) sums.
double best_t(std::span<const double> col, bool& positive) {
  double pos = 0.0;
  double neg = 0.0;
  for (double c : col) {
    if (c > 0.0) pos += c;
    else neg -= c;
  }
  positive = pos >= neg;
  return positive ? pos : neg;
}

struct ChunkBest {
  double value = -1.0;
  std::uint64_t s = 0;
  bool positive = true;
};

}  // namespace

Matrix cell_masses(const StepfunctionGraphon& w) {
  const auto widths = w.widths();
  const std::size_t m = w.steps();
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = widths[i] * widths[j] * w.values()(i, j);
  return out;
}

CutNormResult cutnorm_exact(const StepfunctionGraphon& w, const Limits& limits) {
  const std::size_t m = w.steps();
  if (limits.enforce && m > static_cast<std::size_t>(limits.cutnorm_max_steps)) {
    throw ResourceError("cutnorm_max_steps",
                        "exact cut-norm needs 2^" + std::to_string(m) +
                            " subsets; guard cutnorm_max_steps = " +
                            std::to_string(limits.cutnorm_max_steps) +
                            " (use the heuristic or lift guards)");
  }
  const Matrix mass = cell_masses(w);
  const std::size_t chunk_bits = std::min(kChunkBits, m);
  const std::uint64_t chunk = std::uint64_t{1} << chunk_bits;
  const std::uint64_t total = std::uint64_t{1} << m;
  const std::size_t chunks = static_cast<std::size_t>(total / chunk);

  std::vector<ChunkBest> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> col(m, 0.0);
    const std::uint64_t first = static_cast<std::uint64_t>(c) * chunk;
    std::uint64_t s = first ^ (first >> 1);
    for (std::size_t i = 0; i < m; ++i)
      if ((s >> i) & 1U)
        for (std::size_t j = 0; j < m; ++j) col[j] += mass(i, j);
    ChunkBest& best = partial[c];
    for (std::uint64_t idx = first; idx < first + chunk; ++idx) {
      if (idx != first) {
        const auto flip = static_cast<std::size_t>(std::countr_zero(idx));
        const double sign = ((s >> flip) & 1U) ? -1.0 : 1.0;
        s ^= std::uint64_t{1} << flip;
        for (std::size_t j = 0; j < m; ++j) col[j] += sign * mass(flip, j);
      }
      bool positive = true;
      const double v = best_t(col, positive);
      if (v > best.value) best = {v, s, positive};
    }
  });

  ChunkBest best;
  for (const auto& b : partial)
    if (b.value > best.value) best = b;

  // Recompute the certificate's value from scratch.
  CutNormResult r;
  r.exact = true;
  r.s = bits_of(best.s, m);
  std::vector<double> col(m, 0.0);
  for (std::size_t i : r.s)
    for (std::size_t j = 0; j < m; ++j) col[j] += mass(i, j);
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (best.positive ? col[j] > 0.0 : col[j] < 0.0) {
      r.t.push_back(j);
      sum += col[j];
    }
  }
  r.value = std::abs(sum);
  if (r.t.empty()) r.s.clear();
  return r;
}

CutNormResult cutnorm_heuristic(const StepfunctionGraphon& w, int restarts,
                                const SeededRng& rng) {
  const std::size_t m = w.steps();
  const Matrix mass = cell_masses(w);
  restarts = std::max(restarts, 1);

  auto sums = [&](const std::vector<char>& set, std::vector<double>& out) {
    out.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (set[i])
        for (std::size_t j = 0; j < m; ++j) out[j] += mass(i, j);
  };

  std::vector<CutNormResult> partial(static_cast<std::size_t>(restarts));
  parallel_for(partial.size(), [&](std::size_t r) {
    std::vector<char> start(m, 1);
    if (r > 0) {
      SeededRng local = rng.derive(r);
      for (auto& b : start) b = local.bernoulli(0.5) ? 1 : 0;
    }
    CutNormResult best;
    for (double sign : {1.0, -1.0}) {
      std::vector<char> s = start;
      std::vector<double> col;
      double value = -std::numeric_limits<double>::infinity();
      for (int iter = 0; iter < 1000; ++iter) {
        sums(s, col);
        std::vector<char> t(m, 0);
        double vt = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          t[j] = sign * col[j] > 0.0;
          if (t[j]) vt += sign * col[j];
        }
        if (!(vt > value)) break;
        value = vt;
        sums(t, col);  // mass is symmetric, so these are row sums over T
        for (std::size_t i = 0; i < m; ++i) s[i] = sign * col[i] > 0.0;
      }
      // Final pair: current s with its best t.
      sums(s, col);
      CutNormResult cand;
      double v = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (sign * col[j] > 0.0) {
          cand.t.push_back(j);
          v += sign * col[j];
        }
      }
      for (std::size_t i = 0; i < m; ++i)
        if (s[i]) cand.s.push_back(i);
      if (cand.t.empty()) cand.s.clear();
      cand.value = v;
      if (cand.value > best.value) best = std::move(cand);
    }
    partial[r] = std::move(best);
  });

  CutNormResult best;
  for (auto& p : partial)
    if (p.value > best.value) best = std::move(p);
  best.exact = false;
  return best;
}

CutNormResult cutnorm(const StepfunctionGraphon& w, int restarts, const SeededRng& rng,
                      const Limits& limits) {
  if (!limits.enforce || w.steps() <= static_cast<std::size_t>(limits.cutnorm_max_steps))
    return cutnorm_exact(w, limits);
  return cutnorm_heuristic(w, restarts, rng);
}

double cutnorm_one_sided(const StepfunctionGraphon& w, const Limits& limits) {
  const std::size_t m = w.steps();
  check_guard(limits, "cutnorm_max_steps", static_cast<double>(m), limits.cutnorm_max_steps);
  const Matrix mass = cell_masses(w);
  const std::uint64_t total = std::uint64_t{1} << m;
  double best = 0.0;
  for (std::uint64_t u = 0; u < total; ++u) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!((u >> i) & 1U)) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!((u >> j) & 1U)) sum += mass(i, j);
    }
    best = std::max(best, std::abs(sum));
  }
  return best;
}

StepfunctionGraphon difference(const WeightedGraph& g1, const WeightedGraph& g2,
                               const std::vector<std::size_t>& perm) {
  const std::size_t n = g1.size();
  if (g2.size() != n || perm.size() != n) throw InputError("difference needs graphs of equal size");
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v(i, j) = g1.beta(i, j) - g2.beta(perm[i], perm[j]);
  const auto a = g1.normalized_alpha();
  return StepfunctionGraphon::from_widths(a, std::move(v));
}

CutDistanceResult cut_distance_perm(const WeightedGraph& g1, const WeightedGraph& g2,
                                    const Limits& limits) {
  const std::size_t n = g1.size();
  if (g2.size() != n)
    throw InputError("cut_distance_perm needs equal vertex counts (" + std::to_string(n) +
                     " vs " + std::to_string(g2.size()) + ")");
  if (limits.enforce && n > static_cast<std::size_t>(limits.cut_distance_max_n))
    throw InputError("cut_distance_perm enumerates n! permutations; n = " + std::to_string(n) +
                     " exceeds guard cut_distance_max_n = " +
                     std::to_string(limits.cut_distance_max_n));
  std::vector<double> w1(g1.alpha().begin(), g1.alpha().end());
  std::vector<double> w2(g2.alpha().begin(), g2.alpha().end());
  std::sort(w1.begin(), w1.end());
  std::sort(w2.begin(), w2.end());
  if (w1 != w2) throw InputError("cut_distance_perm needs equal multisets of vertex weights");

  // Split by the image of vertex 0 so every task enumerates a fixed range.
  std::vector<CutDistanceResult> partial(n);
  parallel_for(n, [&](std::size_t first) {
    CutDistanceResult& best = partial[first];
    best.value = std::numeric_limits<double>::infinity();
    if (g1.alpha(0) != g2.alpha(first)) return;
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < n; ++v)
      if (v != first) rest.push_back(v);
    do {
      std::vector<std::size_t> perm{first};
      perm.insert(perm.end(), rest.begin(), rest.end());
      bool ok = true;
      for (std::size_t v = 1; v < n && ok; ++v) ok = g1.alpha(v) == g2.alpha(perm[v]);
      if (!ok) continue;
      ++best.permutations_tried;
      const double value = cutnorm_exact(difference(g1, g2, perm), Limits::unlimited()).value;
      if (value < best.value) {
        best.value = value;
        best.permutation = std::move(perm);
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  });
  CutDistanceResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (auto& p : partial) {
    best.permutations_tried += p.permutations_tried;
    if (p.value < best.value) {
      best.value = p.value;
      best.permutation = std::move(p.permutation);
    }
  }
  return best;
}

double d1_distance(const QuotientGraph& h1, const QuotientGraph& h2) {
  if (h1.q() != h2.q())
    throw InputError("d1_distance needs equal q (" + std::to_string(h1.q()) + " vs " +
                     std::to_string(h2.q()) + ")");
  const auto q = static_cast<std::size_t>(h1.q());
  double sum = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      sum += std::abs(h1.vweights[i] * h1.vweights[j] * h1.eweights(i, j) -
                      h2.vweights[i] * h2.vweights[j] * h2.eweights(i, j));
    }
    sum += std::abs(h1.vweights[i] - h2.vweights[i]);
  }
  return sum;
}

QuotientSet quotient_set(const WeightedGraph& g, int q, const BalanceSpec& balance,
                         const Limits& limits) {
  QuotientSet set;
  set.q = q;
  const auto qs = static_cast<std::size_t>(q);
  for_each_partition(g, q, balance, LabelMode::Labeled,
                     [&](std::span<const int>, const PartitionStats& s) {
                       QuotientGraph h;
                       h.vweights = s.mass;
                       h.eweights = Matrix(qs, qs);
                       for (std::size_t i = 0; i < qs; ++i)
                         for (std::size_t j = 0; j < qs; ++j)
                           h.eweights(i, j) = s.cut(i, j) / (s.mass[i] * s.mass[j]);
                       set.items.push_back(std::move(h));
                     },
                     limits);
  if (set.items.empty()) {
    throw InfeasibleError("no admissible " + std::to_string(q) + "-partition under balance " +
                          balance.to_string() + " (empty feasible set)");
  }
  return set;
}

double hausdorff_distance(const QuotientSet& a, const QuotientSet& b) {
  if (a.items.empty() || b.items.empty()) throw InputError("hausdorff_distance needs non-empty sets");
  if (a.q != b.q) throw InputError("hausdorff_distance needs equal q");
  Matrix d(a.items.size(), b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i)
    for (std::size_t j = 0; j < b.items.size(); ++j) d(i, j) = d1_distance(a.items[i], b.items[j]);
  double ab = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d.cols(); ++j) m = std::min(m, d(i, j));
    ab = std::max(ab, m);
  }
  double ba = 0.0;
  for (std::size_t j = 0; j < d.cols(); ++j) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.rows(); ++i) m = std::min(m, d(i, j));
    ba = std::max(ba, m);
  }
  return std::max(ab, ba);
}

}  // namespace cutlim
