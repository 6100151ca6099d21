#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutlim/graph.hpp"
#include "cutlim/limits.hpp"
#include "cutlim/rng.hpp"

namespace cutlim {

/// Continuous relaxation of the minimum c-balanced q-way cut density:
///
///   minimize  sum_{i<i'} x_i^T B x_i'  (= 1/2 x^T (A (x) B) x, A = J - I)
///   over      x >= 0 (q x n), column sums alpha_j, row sums >= c.
///
/// Row i of x is the share of each vertex interval given to cluster i.
struct QPProblem {
  /// Normalizes the vertex weights of `g`; B is the edge-weight matrix.
  QPProblem(const WeightedGraph& g, int q, double c);
  QPProblem(std::vector<double> alpha, Matrix b, int q, double c);

  int q = 1;
  std::size_t n = 0;
  std::vector<double> alpha;
  Matrix B;
  double c = 0.0;

  WeightedGraph graph() const { return WeightedGraph(alpha, B); }
};

/// q x n point; see QPProblem.
using FeasiblePoint = Matrix;

double objective(const QPProblem& p, const FeasiblePoint& x);
/// Row i is B (sum_{i' != i} x_i').
Matrix gradient(const QPProblem& p, const FeasiblePoint& x);

/// Largest violation of the constraints (column sums, row sums, signs).
double infeasibility(const QPProblem& p, const FeasiblePoint& x);

/// x_ij = alpha_j if vertex j is in cluster i.
FeasiblePoint indicator(const QPProblem& p, const Partition& partition);

struct LpSolution {
  FeasiblePoint x;
  double cost = 0.0;
  std::vector<double> u;  // column duals (free)
  std::vector<double> v;  // row duals (>= 0)
  /// max of |x_ij (g_ij - u_j - v_i)|, |v_i (row_i - c)| and dual infeasibility.
  double slackness_residual = 0.0;
};

/// Exact minimizer of <g, s> over the feasible polytope via min-cost flow:
/// source -> cluster i (capacity c), source -> spare node (capacity 1 - qc),
/// spare -> every cluster, cluster i -> vertex j (cost g_ij), vertex j ->
/// sink (capacity alpha_j). Duals come from residual shortest distances.
/// Throws InfeasibleError if qc > 1.
LpSolution lp_oracle(const QPProblem& p, const Matrix& g);

struct SolveOptions {
  int starts = 16;
  int max_iters = 5000;
  double tol = 1e-7;
  /// Round each converged point, improve it by single-vertex moves, and
  /// restart from the improved indicator while that lowers the objective.
  bool polish = true;
  /// Compare every line-search step with a 101-point grid.
  bool check_line_search = false;
};

struct StartReport {
  int start = 0;
  std::string kind;  // "vertex" or "indicator"
  double initial = 0.0;
  double objective = 0.0;
  int iterations = 0;
  int restarts = 0;  // polishing restarts
  double fw_gap = 0.0;
  double kkt_residual = 0.0;
  bool converged = false;
};

struct SolveReport {
  double objective = 0.0;
  int iterations = 0;
  double fw_gap = 0.0;
  double kkt_residual = 0.0;
  double wall_seconds = 0.0;
  bool converged = false;
  int best_start = 0;
  double max_infeasibility = 0.0;      // over all iterates of all starts
  double line_search_violation = 0.0;  // only with check_line_search
  double max_slackness_residual = 0.0; // over all oracle calls
  std::vector<StartReport> starts;
};

struct SolveResult {
  FeasiblePoint x;
  SolveReport report;
};

/// Multistart conditional gradient with away steps and exact line search.
/// The first half of the starts are polytope vertices for random costs, the
/// rest vertices close to random partition indicators; start s draws from
/// rng.derive(s).
/// Reduction is by (objective, start index).
SolveResult solve(const QPProblem& p, const SolveOptions& options, const SeededRng& rng);

struct RoundResult {
  Partition partition = Partition::single_cluster(1);
  double value = 0.0;
  int repair_moves = 0;
};

/// Argmax rounding (ties to the lowest cluster), then greedy repair of empty
/// or light clusters by the cheapest single-vertex moves. If single moves get
/// stuck (unequal weights), falls back to the c-balanced labeling nearest in
/// Hamming distance, found by enumeration under the partition guard. The
/// value is the cut density of the result. Throws InfeasibleError if no
/// repair exists.
RoundResult round_to_partition(const QPProblem& p, const FeasiblePoint& x);

/// Improves a c-balanced partition by best single-vertex moves until none
/// lowers the cut density.
Partition local_search(const QPProblem& p, Partition start);

struct KroneckerReport {
  std::vector<double> b_eigenvalues;  // descending
  std::vector<double> predicted;      // descending
  std::vector<double> direct;         // descending; empty if not computed
  double max_deviation = 0.0;
  bool direct_checked = false;
  bool indefinite = false;
};

KroneckerReport kronecker_spectrum_check(const QPProblem& p, const Limits& limits = {});

}  // namespace cutlim
