#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cutlim/graph.hpp"
#include "cutlim/limits.hpp"

namespace cutlim {

/// Admissible partition class: P_q, P_q^c or P_q^a.
struct BalanceSpec {
  enum class Kind { Unrestricted, CBalanced, ABalanced };

  Kind kind = Kind::Unrestricted;
  double c = 0.0;
  std::vector<double> a;

  static BalanceSpec unrestricted() { return {}; }
  static BalanceSpec c_balanced(double c) { return {Kind::CBalanced, c, {}}; }
  static BalanceSpec a_balanced(std::vector<double> a) {
    return {Kind::ABalanced, 0.0, std::move(a)};
  }

  /// Parses "none", "c:0.25" or "a:0.5,0.5".
  static BalanceSpec parse(const std::string& text);
  std::string to_string() const;

  /// Throws InputError unless c in (0, 1/q] resp. a is a positive
  /// probability vector of length q.
  void validate(int q) const;

  /// True when relabeling clusters maps admissible partitions to admissible ones.
  bool label_symmetric() const;

  /// Cluster masses are normalized (sum to 1). `a_tolerance` is
  /// alpha_max / alpha_G. Boundaries are admissible up to 1e-12.
  bool admits(std::span<const double> mass, double a_tolerance) const;
};

/// Normalized cluster statistics: mass[i] = alpha_{V_i} / alpha_G and
/// cut(i,j) = e_G(V_i,V_j) / alpha_G^2 (diagonal includes loop terms).
struct PartitionStats {
  std::vector<double> mass;
  Matrix cut;
};

PartitionStats partition_stats(const WeightedGraph& g, const Partition& p);

enum class LabelMode {
  Canonical,  // restricted growth strings: one representative per set partition
  Labeled,    // every surjective labeling
};

using PartitionScore = std::function<double(const PartitionStats&)>;

struct SearchResult {
  double value = 0.0;
  std::vector<int> labels;
  std::uint64_t admissible = 0;  // saturates at 2^64 - 1
  bool compressed = false;       // twin-class enumeration was used
};

/// Minimum of `score` over admissible q-partitions.
///
/// Exhaustive depth-first enumeration in lexicographic label order with
/// incremental maintenance of cluster masses and cuts. Ties go to the
/// lexicographically smallest label string. When q^n exceeds the partition
/// guard but the graph has few classes of interchangeable vertices (blow-ups),
/// the search runs over per-class cluster counts instead and builds the
/// representative partition from the counts.
///
/// Throws InfeasibleError when no admissible partition exists and
/// ResourceError when both enumerations exceed the guard.
SearchResult minimize_partitions(const WeightedGraph& g, int q, const BalanceSpec& balance,
                                 LabelMode mode, const PartitionScore& score,
                                 const Limits& limits = {});

/// Visits every admissible partition in lexicographic order (no compression).
void for_each_partition(
    const WeightedGraph& g, int q, const BalanceSpec& balance, LabelMode mode,
    const std::function<void(std::span<const int>, const PartitionStats&)>& visit,
    const Limits& limits = {});

/// Vertices grouped into classes of twins: equal weight, equal loop, equal
/// weights to every other vertex.
struct TwinClass {
  std::vector<std::size_t> members;
  double weight = 0.0;  // normalized weight of one member
  double loop = 0.0;
  double mutual = 0.0;  // edge weight between two members
};

std::vector<TwinClass> twin_classes(const WeightedGraph& g);

}  // namespace cutlim
