#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutlim/graph.hpp"
#include "cutlim/limits.hpp"
#include "cutlim/partition_search.hpp"

namespace cutlim {

/// Coupling matrix J (symmetric q x q) and magnetic field h (length q).
struct EnergySpec {
  Matrix J;
  std::vector<double> h;

  /// J_ii = 0, J_ij = -1/2, h = 0: the energy whose ground state is f_q.
  static EnergySpec cut_coupling(int q);

  int q() const { return static_cast<int>(h.size()); }
  /// Throws InputError on shape mismatch or asymmetric J.
  void validate(int q) const;
  /// Equal diagonal, equal off-diagonal and constant field.
  bool label_symmetric() const;
};

struct DensityResult {
  double value = 0.0;
  Partition partition = Partition::single_cluster(1);
  std::uint64_t feasible_count = 0;  // set partitions (canonical search) or labelings
  bool canonical = true;
  bool compressed = false;
};

/// (1/alpha_G^2) sum_{i<j} e_G(V_i, V_j) at a given partition.
double cut_density(const WeightedGraph& g, const Partition& p);
/// sum_{i<j} e_G(V_i, V_j) / (alpha_{V_i} alpha_{V_j}) at a given partition.
double weighted_cut_density(const WeightedGraph& g, const Partition& p);

/// f_q, f_q^c or f_q^a depending on `balance`.
DensityResult min_cut_density(const WeightedGraph& g, int q, const BalanceSpec& balance,
                              const Limits& limits = {});

/// mu_q, mu_q^c or mu_q^a depending on `balance`.
DensityResult min_weighted_cut_density(const WeightedGraph& g, int q, const BalanceSpec& balance,
                                       const Limits& limits = {});

/// -max_P (sum_i alpha_i(G/P) h_i + sum_ij alpha_i alpha_j beta_ij(G/P) J_ij) over P_q.
DensityResult ground_state_energy(const WeightedGraph& g, int q, const EnergySpec& spec,
                                  const Limits& limits = {});

/// The same maximum over a-balanced partitions (field ignored).
DensityResult microcanonical_energy(const WeightedGraph& g, int q, const Matrix& J,
                                    const std::vector<double>& a, const Limits& limits = {});

/// (q-1) eps + C(q-1,2) eps^2 with eps = alpha_max / alpha_G.
double fq_upper_bound(const WeightedGraph& g, int q);

/// A named density functional with its arguments, e.g. f_2^{c=0.25}.
struct DensityParameter {
  enum class Functional { Cut, WeightedCut };

  Functional functional = Functional::Cut;
  int q = 1;
  BalanceSpec balance;

  /// Names of the form f<q>, f<q>c, f<q>a, mu<q>, mu<q>c, mu<q>a. The c and a
  /// suffixes take their argument from `c` resp. `a`.
  static DensityParameter parse(const std::string& name, double c = 0.0,
                                const std::vector<double>& a = {});
  std::string name() const;
  double evaluate(const WeightedGraph& g, const Limits& limits = {}) const;
};

}  // namespace cutlim
