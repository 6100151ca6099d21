#pragma once

#include <cstddef>
#include <vector>

#include "cutlim/graph.hpp"
#include "cutlim/limits.hpp"
#include "cutlim/partition_search.hpp"
#include "cutlim/rng.hpp"

namespace cutlim {

/// Cut-norm value with a certificate: sup |integral over S x T| attained at
/// S, T given as sets of step indices.
struct CutNormResult {
  double value = 0.0;
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;
  bool exact = false;
};

/// Exact cut-norm of a stepfunction. The optimal sets are unions of whole
/// steps: for a fixed S the objective is linear in the measure taken from
/// each step of T, so an extreme point is optimal (and symmetrically for S).
/// Enumerates S over all 2^m step subsets; for each S the best T is the set of
/// steps with positive (or negative) weighted column sum.
CutNormResult cutnorm_exact(const StepfunctionGraphon& w, const Limits& limits = {});

/// Lower bound by alternating maximization from `restarts` starting sets.
/// Restart 0 starts from all steps; restart r > 0 from a random subset drawn
/// from rng.derive(r).
CutNormResult cutnorm_heuristic(const StepfunctionGraphon& w, int restarts,
                                const SeededRng& rng);

/// Uses the exact routine when m fits the guard, the heuristic otherwise.
CutNormResult cutnorm(const StepfunctionGraphon& w, int restarts, const SeededRng& rng,
                      const Limits& limits = {});

/// max over U of |integral over U x U^c|, with U a union of steps.
double cutnorm_one_sided(const StepfunctionGraphon& w, const Limits& limits = {});

/// Weighted cell masses w_i w_j v_ij of a stepfunction.
Matrix cell_masses(const StepfunctionGraphon& w);

/// Stepfunction of the difference W_G1 - W_G2 under the vertex relabeling
/// v -> perm[v] of G2. Both graphs must have identical vertex weights after
/// relabeling.
StepfunctionGraphon difference(const WeightedGraph& g1, const WeightedGraph& g2,
                               const std::vector<std::size_t>& perm);

struct CutDistanceResult {
  double value = 0.0;
  std::vector<std::size_t> permutation;  // G2 vertex placed at position v of G1
  std::size_t permutations_tried = 0;
};

/// min over vertex permutations of G2 (preserving vertex weights) of the exact
/// cut-norm of W_G1 - W_G2. An upper bound on the cut distance, which also
/// allows measure-preserving maps that split vertices. Size and weight
/// mismatches, and n above the guard, throw InputError.
CutDistanceResult cut_distance_perm(const WeightedGraph& g1, const WeightedGraph& g2,
                                    const Limits& limits = {});

/// Sum over i,j of |a_i a_j b_ij - a'_i a'_j b'_ij| plus sum over i of |a_i - a'_i|.
double d1_distance(const QuotientGraph& h1, const QuotientGraph& h2);

/// Multiset of q-quotients of G, one per admissible labeled partition.
struct QuotientSet {
  int q = 0;
  std::vector<QuotientGraph> items;
};

/// Throws InfeasibleError when no partition is admissible.
QuotientSet quotient_set(const WeightedGraph& g, int q, const BalanceSpec& balance,
                         const Limits& limits = {});

double hausdorff_distance(const QuotientSet& a, const QuotientSet& b);

}  // namespace cutlim
