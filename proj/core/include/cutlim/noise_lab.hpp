#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutlim/graph.hpp"
#include "cutlim/limits.hpp"
#include "cutlim/rng.hpp"

namespace cutlim {

/// Distribution of the independent entries of a Wigner noise matrix. Every
/// entry has zero mean and |w| <= K.
struct NoiseSpec {
  enum class Distribution { Uniform, Rademacher, TruncatedGaussian };

  Distribution distribution = Distribution::Uniform;
  double K = 0.0;
  double sigma = 0.0;  // TruncatedGaussian: N(0, sigma^2) clamped to [-K, K]
  std::uint64_t seed = 0;

  /// "uniform", "rademacher" or "gaussian".
  static Distribution parse_distribution(const std::string& name);
  static std::string name(Distribution d);

  void validate() const;
  double draw(SeededRng& rng) const;
};

/// Symmetric n x n noise, diagonal included, drawn from
/// SeededRng(spec.seed, stream) over the upper triangle in row-major order.
Matrix gen_wigner(std::size_t n, const NoiseSpec& spec, std::uint64_t stream = 0);

/// Blown-up pattern plus Wigner noise (or independent 0/1 entries with the
/// block probabilities in Bernoulli mode).
struct NoisySequenceSpec {
  Matrix pattern;
  std::vector<double> ratios;
  NoiseSpec noise;
  bool bernoulli = false;

  int q() const { return static_cast<int>(ratios.size()); }
  /// Throws ConstraintError when K > min(min p, 1 - max p) outside Bernoulli
  /// mode; InputError on malformed data.
  void validate() const;
};

/// Block sizes round(r_i n) corrected by largest remainders to sum to n.
/// Ties in the remainder go to the lower block index.
std::vector<std::size_t> block_sizes(const std::vector<double>& ratios, std::size_t n);

/// Unit vertex weights; noise drawn from stream `stream`.
WeightedGraph noisy_graph(const NoisySequenceSpec& spec, std::size_t n, std::uint64_t stream = 0);

/// The limit graph H: vertex weights r_i, edge weights p_ij.
QuotientGraph limit_factor_graph(const NoisySequenceSpec& spec);

/// Stream used for the (n, seed) cell of the sweeps.
std::uint64_t sweep_stream(std::size_t n, std::uint64_t seed);

struct DecayRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double cutnorm = 0.0;         // of the noise graphon scaled by 1/K
  bool exact = true;
  double spectral_bound = 0.0;  // ||W/K||_2 / n
};

/// One row per (n, seed) in that order. Exact cut-norm while n fits the
/// cut-norm guard, alternating heuristic with `restarts` otherwise.
std::vector<DecayRow> cutnorm_decay_experiment(const NoiseSpec& spec,
                                               const std::vector<std::size_t>& ns, int seeds,
                                               int restarts = 32, const Limits& limits = {});

struct SpectralRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> top;  // q + 1 largest eigenvalues, descending
  double q_variance = 0.0;
};

/// sum over clusters of squared distances of the rows of X to their
/// cluster mean.
double q_variance(const Matrix& x, const Partition& p);

/// Eigenvalues of the noisy matrices and the q-variance of their top-q
/// eigenvector rows under the planted partition.
std::vector<SpectralRow> spectral_experiment(const NoisySequenceSpec& spec,
                                             const std::vector<std::size_t>& ns, int seeds,
                                             const Limits& limits = {});

}  // namespace cutlim
