#include "cutlim/qp_relax.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "cutlim/errors.hpp"
#include "cutlim/linalg.hpp"
#include "cutlim/min_cost_flow.hpp"
#include "cutlim/parallel.hpp"
#include "cutlim/partition_search.hpp"

namespace cutlim {

namespace {

constexpr double kMassTol = 1e-12;

void check_shape(const QPProblem& p, const Matrix& x) {
  if (x.rows() != static_cast<std::size_t>(p.q) || x.cols() != p.n)
    throw InputError("point must be " + std::to_string(p.q) + " x " + std::to_string(p.n) +
                     ", got " + std::to_string(x.rows()) + " x " + std::to_string(x.cols()));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inner(const Matrix& a, const Matrix& b) { return dot(a.data(), b.data()); }

}  // namespace

QPProblem::QPProblem(const WeightedGraph& g, int q_, double c_)
    : QPProblem(g.normalized_alpha(), g.beta(), q_, c_) {}

QPProblem::QPProblem(std::vector<double> alpha_, Matrix b, int q_, double c_)
    : q(q_), n(alpha_.size()), alpha(std::move(alpha_)), B(std::move(b)), c(c_) {
  if (q < 1) throw InputError("q must be at least 1");
  if (B.rows() != n || B.cols() != n) throw InputError("B must be n x n");
  const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  if (!(total > 0.0)) throw InputError("vertex weights must have positive sum");
  for (double& a : alpha) {
    if (!(a > 0.0)) throw InputError("vertex weights must be positive");
    a /= total;
  }
  if (B.max_asymmetry() > 1e-12) throw InputError("B must be symmetric");
  for (double v : B.data())
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("B entries must lie in [0,1]");
  if (c < 0.0) throw InputError("c must be nonnegative");
}

double objective(const QPProblem& p, const FeasiblePoint& x) {
  check_shape(p, x);
  const auto q = static_cast<std::size_t>(p.q);
  double sum = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    const auto y = multiply(p.B, x.row(i));
    for (std::size_t k = i + 1; k < q; ++k) sum += dot(x.row(k), y);
  }
  return sum;
}

Matrix gradient(const QPProblem& p, const FeasiblePoint& x) {
  check_shape(p, x);
  const auto q = static_cast<std::size_t>(p.q);
  std::vector<double> s(p.n, 0.0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < p.n; ++j) s[j] += x(i, j);
  Matrix g(q, p.n);
  std::vector<double> rest(p.n);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < p.n; ++j) rest[j] = s[j] - x(i, j);
    const auto y = multiply(p.B, rest);
    std::copy(y.begin(), y.end(), g.row(i).begin());
  }
  return g;
}

double infeasibility(const QPProblem& p, const FeasiblePoint& x) {
  check_shape(p, x);
  double worst = 0.0;
  for (std::size_t j = 0; j < p.n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) col += x(i, j);
    worst = std::max(worst, std::abs(col - p.alpha[j]));
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p.n; ++j) {
      row += x(i, j);
      worst = std::max(worst, -x(i, j));
    }
    worst = std::max(worst, p.c - row);
  }
  return worst;
}

FeasiblePoint indicator(const QPProblem& p, const Partition& partition) {
  if (partition.size() != p.n) throw InputError("partition size does not match the problem");
  Matrix x(static_cast<std::size_t>(p.q), p.n);
  for (std::size_t j = 0; j < p.n; ++j) x(static_cast<std::size_t>(partition[j]), j) = p.alpha[j];
  return x;
}

LpSolution lp_oracle(const QPProblem& p, const Matrix& g) {
  check_shape(p, g);
  const auto q = static_cast<std::size_t>(p.q);
  const double spare = 1.0 - static_cast<double>(q) * p.c;
  if (spare < -1e-12)
    throw InfeasibleError("c-balanced polytope is empty: q*c = " +
                          std::to_string(static_cast<double>(q) * p.c) + " > 1");
  // Nodes: 0 source, 1 spare, 2..q+1 clusters, then vertices, then sink.
  const std::size_t source = 0;
  const std::size_t spare_node = 1;
  auto cluster = [](std::size_t i) { return 2 + i; };
  auto vertex = [&](std::size_t j) { return 2 + q + j; };
  const std::size_t sink = 2 + q + p.n;
  MinCostFlow flow(sink + 1);
  flow.add_arc(source, spare_node, std::max(0.0, spare), 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    flow.add_arc(source, cluster(i), p.c, 0.0);
    flow.add_arc(spare_node, cluster(i), MinCostFlow::kInfinite, 0.0);
  }
  Matrix arc(q, p.n);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      arc(i, j) = static_cast<double>(flow.add_arc(cluster(i), vertex(j), MinCostFlow::kInfinite, g(i, j)));
  for (std::size_t j = 0; j < p.n; ++j) flow.add_arc(vertex(j), sink, p.alpha[j], 0.0);
  flow.solve(source, sink, 1.0, 1e-13);

  LpSolution s;
  s.x = Matrix(q, p.n);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      s.x(i, j) = std::max(0.0, flow.flow(static_cast<std::size_t>(arc(i, j))));
  // Column sums exactly alpha: put rounding residue on the largest entry.
  for (std::size_t j = 0; j < p.n; ++j) {
    double col = 0.0;
    std::size_t big = 0;
    for (std::size_t i = 0; i < q; ++i) {
      col += s.x(i, j);
      if (s.x(i, j) > s.x(big, j)) big = i;
    }
    s.x(big, j) += p.alpha[j] - col;
  }
  s.cost = inner(g, s.x);

  const auto d = flow.residual_distances();
  const double pivot = d[spare_node];
  s.u.resize(p.n);
  s.v.resize(q);
  for (std::size_t j = 0; j < p.n; ++j) s.u[j] = d[vertex(j)] - pivot;
  for (std::size_t i = 0; i < q; ++i) s.v[i] = pivot - d[cluster(i)];
  double residual = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p.n; ++j) {
      const double reduced = g(i, j) - s.u[j] - s.v[i];
      residual = std::max({residual, -reduced, std::abs(s.x(i, j) * reduced)});
      row += s.x(i, j);
    }
    residual = std::max({residual, -s.v[i], std::abs(s.v[i] * (row - p.c))});
  }
  s.slackness_residual = residual;
  return s;
}

// --- discrete helpers ------------------------------------------------------

namespace {

bool balanced(const QPProblem& p, const std::vector<double>& mass) {
  return std::all_of(mass.begin(), mass.end(),
                     [&](double m) { return m > 0.0 && m >= p.c - kMassTol; });
}

std::vector<double> masses(const QPProblem& p, const std::vector<int>& labels) {
  std::vector<double> m(static_cast<std::size_t>(p.q), 0.0);
  for (std::size_t j = 0; j < p.n; ++j) m[static_cast<std::size_t>(labels[j])] += p.alpha[j];
  return m;
}

// conn(v, i) = sum over u != v in cluster i of alpha_u B_uv.
Matrix connections(const QPProblem& p, const std::vector<int>& labels) {
  Matrix conn(p.n, static_cast<std::size_t>(p.q));
  for (std::size_t v = 0; v < p.n; ++v)
    for (std::size_t u = 0; u < p.n; ++u)
      if (u != v) conn(v, static_cast<std::size_t>(labels[u])) += p.alpha[u] * p.B(u, v);
  return conn;
}

// Change of the cut density when v moves to cluster `to`.
double move_delta(const QPProblem& p, const Matrix& conn, const std::vector<int>& labels,
                  std::size_t v, std::size_t to) {
  const auto from = static_cast<std::size_t>(labels[v]);
  return p.alpha[v] * (conn(v, from) - conn(v, to));
}

}  // namespace

// Fallback when single moves get stuck on unequal weights: the c-balanced
// labeling closest to `labels` in Hamming distance, ties by cut density.
std::vector<int> nearest_balanced(const QPProblem& p, const std::vector<int>& start) {
  std::vector<int> labels;
  double best = std::numeric_limits<double>::infinity();
  try {
    for_each_partition(p.graph(), p.q, BalanceSpec::c_balanced(p.c), LabelMode::Labeled,
                       [&](std::span<const int> l, const PartitionStats& st) {
                         int moved = 0;
                         for (std::size_t v = 0; v < l.size(); ++v) moved += l[v] != start[v];
                         double cut = 0.0;
                         for (std::size_t i = 0; i < st.cut.rows(); ++i)
                           for (std::size_t k = i + 1; k < st.cut.rows(); ++k) cut += st.cut(i, k);
                         // The cut density is at most 1/2, so distance dominates.
                         const double score = moved + cut;
                         if (score < best) {
                           best = score;
                           labels.assign(l.begin(), l.end());
                         }
                       });
  } catch (const ResourceError&) {
    throw InfeasibleError("rounding cannot repair c-balance (c = " + std::to_string(p.c) +
                          ") by single moves and the exact repair exceeds the partition guard");
  }
  if (labels.empty())
    throw InfeasibleError("rounding cannot repair c-balance (c = " + std::to_string(p.c) +
                          "): no c-balanced partition exists");
  return labels;
}

RoundResult round_to_partition(const QPProblem& p, const FeasiblePoint& x) {
  check_shape(p, x);
  const auto q = static_cast<std::size_t>(p.q);
  if (p.n < q) throw InfeasibleError("cannot form " + std::to_string(q) + " non-empty clusters");
  std::vector<int> labels(p.n, 0);
  for (std::size_t j = 0; j < p.n; ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < q; ++i)
      if (x(i, j) > x(best, j)) best = i;
    labels[j] = static_cast<int>(best);
  }
  RoundResult r;
  const std::vector<int> argmax = labels;
  auto mass = masses(p, labels);
  std::vector<std::size_t> count(q, 0);
  for (int l : labels) ++count[static_cast<std::size_t>(l)];
  while (!balanced(p, mass)) {
    // Lightest deficient cluster receives a vertex.
    std::size_t target = q;
    for (std::size_t i = 0; i < q; ++i) {
      const bool deficient = count[i] == 0 || mass[i] < p.c - kMassTol;
      if (deficient && (target == q || mass[i] < mass[target])) target = i;
    }
    const Matrix conn = connections(p, labels);
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = p.n;
    for (std::size_t v = 0; v < p.n; ++v) {
      const auto from = static_cast<std::size_t>(labels[v]);
      if (from == target || count[from] <= 1) continue;
      if (mass[from] - p.alpha[v] < p.c - kMassTol) continue;
      const double delta = move_delta(p, conn, labels, v, target);
      if (delta < best) {
        best = delta;
        pick = v;
      }
    }
    if (pick == p.n) {
      labels = nearest_balanced(p, argmax);
      r.repair_moves = 0;
      for (std::size_t v = 0; v < p.n; ++v) r.repair_moves += labels[v] != argmax[v];
      break;
    }
    const auto from = static_cast<std::size_t>(labels[pick]);
    mass[from] -= p.alpha[pick];
    mass[target] += p.alpha[pick];
    --count[from];
    ++count[target];
    labels[pick] = static_cast<int>(target);
    ++r.repair_moves;
  }
  r.partition = Partition(labels, p.q);
  r.value = objective(p, indicator(p, r.partition));
  return r;
}

Partition local_search(const QPProblem& p, Partition start) {
  const auto q = static_cast<std::size_t>(p.q);
  std::vector<int> labels(start.labels().begin(), start.labels().end());
  auto mass = masses(p, labels);
  std::vector<std::size_t> count(q, 0);
  for (int l : labels) ++count[static_cast<std::size_t>(l)];
  for (std::size_t pass = 0; pass < 10 * p.n + 10; ++pass) {
    const Matrix conn = connections(p, labels);
    double best = -1e-15;
    std::size_t pick = p.n;
    std::size_t dest = q;
    for (std::size_t v = 0; v < p.n; ++v) {
      const auto from = static_cast<std::size_t>(labels[v]);
      if (count[from] <= 1 || mass[from] - p.alpha[v] < p.c - kMassTol) continue;
      for (std::size_t to = 0; to < q; ++to) {
        if (to == from) continue;
        const double delta = move_delta(p, conn, labels, v, to);
        if (delta < best) {
          best = delta;
          pick = v;
          dest = to;
        }
      }
    }
    if (pick == p.n) break;
    const auto from = static_cast<std::size_t>(labels[pick]);
    mass[from] -= p.alpha[pick];
    mass[dest] += p.alpha[pick];
    --count[from];
    ++count[dest];
    labels[pick] = static_cast<int>(dest);
  }
  return Partition(labels, p.q);
}

// --- Frank-Wolfe -----------------------------------------------------------

namespace {

struct Run {
  Matrix x;
  double objective = 0.0;
  int iterations = 0;
  double gap = std::numeric_limits<double>::infinity();
  double kkt = 0.0;
  bool converged = false;
  double infeasibility = 0.0;
  double line_search = 0.0;
  double slackness = 0.0;
};

// Conditional gradient with away steps. The starting point must be a vertex
// of the polytope; x is kept as a convex combination of oracle vertices.
void frank_wolfe(const QPProblem& p, const SolveOptions& o, Run& run) {
  struct Atom {
    Matrix v;
    double w;
  };
  std::vector<Atom> active{{run.x, 1.0}};
  double f = objective(p, run.x);
  run.infeasibility = std::max(run.infeasibility, infeasibility(p, run.x));
  for (int it = 0; it < o.max_iters; ++it) {
    const Matrix g = gradient(p, run.x);
    const LpSolution lp = lp_oracle(p, g);
    run.slackness = std::max(run.slackness, lp.slackness_residual);
    const double gx = inner(g, run.x);
    run.gap = gx - lp.cost;
    // KKT residual of the current point against the oracle's duals.
    double kkt = 0.0;
    for (std::size_t i = 0; i < run.x.rows(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < p.n; ++j) {
        kkt = std::max(kkt, run.x(i, j) * (g(i, j) - lp.u[j] - lp.v[i]));
        row += run.x(i, j);
      }
      kkt = std::max(kkt, lp.v[i] * (row - p.c));
    }
    run.kkt = kkt;
    if (run.gap < o.tol) {
      run.converged = true;
      break;
    }
    std::size_t away = 0;
    double away_value = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double val = inner(g, active[a].v);
      if (val > away_value) {
        away_value = val;
        away = a;
      }
    }
    const bool fw_step = run.gap >= away_value - gx || active.size() == 1;
    Matrix d = fw_step ? lp.x : run.x;
    const Matrix& base = fw_step ? run.x : active[away].v;
    for (std::size_t k = 0; k < d.data().size(); ++k) d.data()[k] -= base.data()[k];
    const double max_step =
        fw_step ? 1.0 : active[away].w / std::max(1e-300, 1.0 - active[away].w);
    // f(x + t d) = f + t <g,d> + t^2 f(d).
    const double slope = inner(g, d);
    const double curvature = objective(p, d);
    double step = max_step;
    if (curvature > 0.0) step = std::min(max_step, -slope / (2.0 * curvature));
    step = std::max(step, 0.0);
    if (o.check_line_search) {
      auto at = [&](double t) {
        Matrix y = run.x;
        for (std::size_t k = 0; k < y.data().size(); ++k) y.data()[k] += t * d.data()[k];
        return objective(p, y);
      };
      double grid = std::numeric_limits<double>::infinity();
      for (int k = 0; k <= 100; ++k) grid = std::min(grid, at(max_step * k / 100.0));
      run.line_search = std::max(run.line_search, at(step) - grid);
    }
    if (fw_step) {
      for (auto& a : active) a.w *= 1.0 - step;
      auto same = std::find_if(active.begin(), active.end(), [&](const Atom& a) { return a.v == lp.x; });
      if (same == active.end()) {
        active.push_back({lp.x, step});
      } else {
        same->w += step;
      }
      if (step >= 1.0) active = {{lp.x, 1.0}};
    } else {
      for (auto& a : active) a.w *= 1.0 + step;
      active[away].w -= step;
      if (step >= max_step) active.erase(active.begin() + static_cast<std::ptrdiff_t>(away));
    }
    std::erase_if(active, [](const Atom& a) { return a.w <= 0.0; });
    for (std::size_t k = 0; k < d.data().size(); ++k) {
      double& v = run.x.data()[k];
      v += step * d.data()[k];
      if (v < 0.0 && v > -1e-12) v = 0.0;
    }
    f = objective(p, run.x);
    ++run.iterations;
    run.infeasibility = std::max(run.infeasibility, infeasibility(p, run.x));
  }
  run.objective = f;
}

}  // namespace

SolveResult solve(const QPProblem& p, const SolveOptions& o, const SeededRng& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = static_cast<std::size_t>(p.q);
  if (static_cast<double>(q) * p.c > 1.0 + 1e-12)
    throw InfeasibleError("c-balanced polytope is empty: q*c = " +
                          std::to_string(static_cast<double>(q) * p.c) + " > 1");
  const int starts = std::max(1, o.starts);
  const int vertex_starts = (starts + 1) / 2;

  std::vector<Run> runs(static_cast<std::size_t>(starts));
  std::vector<StartReport> reports(runs.size());
  parallel_for(runs.size(), [&](std::size_t s) {
    SeededRng local = rng.derive(s);
    StartReport& rep = reports[s];
    rep.start = static_cast<int>(s);
    Matrix cost(q, p.n);
    if (static_cast<int>(s) < vertex_starts) {
      rep.kind = "vertex";
      for (double& v : cost.data()) v = local.uniform();
    } else {
      rep.kind = "indicator";
      for (std::size_t j = 0; j < p.n; ++j) {
        const auto i = static_cast<std::size_t>(local.below(q));
        for (std::size_t k = 0; k < q; ++k) cost(k, j) = 0.1 * local.uniform() - (k == i ? 1.0 : 0.0);
      }
    }
    Run& run = runs[s];
    run.x = lp_oracle(p, cost).x;
    rep.initial = objective(p, run.x);
    run.infeasibility = infeasibility(p, run.x);
    frank_wolfe(p, o, run);
    const bool can_round = p.n >= q;
    for (int round = 0; o.polish && can_round && round < 100; ++round) {
      // No discrete c-balanced partition: keep the continuous point.
      std::optional<Partition> rounded;
      try {
        rounded = round_to_partition(p, run.x).partition;
      } catch (const InfeasibleError&) {
        break;
      }
      Partition part = local_search(p, std::move(*rounded));
      Matrix candidate = indicator(p, part);
      if (!(objective(p, candidate) < run.objective)) break;
      Run next;
      next.x = std::move(candidate);
      next.infeasibility = run.infeasibility;
      next.line_search = run.line_search;
      next.slackness = run.slackness;
      frank_wolfe(p, o, next);
      next.iterations += run.iterations;
      run = std::move(next);
      ++rep.restarts;
    }
    rep.objective = run.objective;
    rep.iterations = run.iterations;
    rep.fw_gap = run.gap;
    rep.kkt_residual = run.kkt;
    rep.converged = run.converged;
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < runs.size(); ++s)
    if (runs[s].objective < runs[best].objective) best = s;
  SolveResult result;
  result.x = runs[best].x;
  SolveReport& r = result.report;
  r.objective = runs[best].objective;
  r.iterations = runs[best].iterations;
  r.fw_gap = runs[best].gap;
  r.kkt_residual = runs[best].kkt;
  r.converged = runs[best].converged;
  r.best_start = static_cast<int>(best);
  for (const auto& run : runs) {
    r.max_infeasibility = std::max(r.max_infeasibility, run.infeasibility);
    r.line_search_violation = std::max(r.line_search_violation, run.line_search);
    r.max_slackness_residual = std::max(r.max_slackness_residual, run.slackness);
  }
  r.starts = std::move(reports);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

KroneckerReport kronecker_spectrum_check(const QPProblem& p, const Limits& limits) {
  check_guard(limits, "eigen_max_n", static_cast<double>(p.n), limits.eigen_max_n);
  const auto q = static_cast<std::size_t>(p.q);
  KroneckerReport r;
  r.b_eigenvalues = jacobi_eigen(p.B, false).values;
  for (double l : r.b_eigenvalues) {
    r.predicted.push_back(static_cast<double>(q - 1) * l);
    for (std::size_t k = 0; k + 1 < q; ++k) r.predicted.push_back(-l);
  }
  std::sort(r.predicted.begin(), r.predicted.end(), std::greater<>());
  if (q * p.n <= static_cast<std::size_t>(limits.kronecker_direct_max) || !limits.enforce) {
    Matrix a(q, q, 1.0);
    for (std::size_t i = 0; i < q; ++i) a(i, i) = 0.0;
    r.direct = jacobi_eigen(kronecker(a, p.B), false, 1e-14).values;
    r.direct_checked = true;
    for (std::size_t k = 0; k < r.direct.size(); ++k)
      r.max_deviation = std::max(r.max_deviation, std::abs(r.direct[k] - r.predicted[k]));
  }
  r.indefinite = q >= 2 && !r.b_eigenvalues.empty() && r.b_eigenvalues.front() > 0.0;
  return r;
}

}  // namespace cutlim
