#include "cutlim/noise_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cutlim/cut_metrics.hpp"
#include "cutlim/errors.hpp"
#include "cutlim/parallel.hpp"

namespace cutlim {

NoiseSpec::Distribution NoiseSpec::parse_distribution(const std::string& name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "rademacher") return Distribution::Rademacher;
  if (name == "gaussian" || name == "truncated-gaussian") return Distribution::TruncatedGaussian;
  throw InputError("unknown noise distribution '" + name +
                   "' (expected uniform, rademacher or gaussian)");
}

std::string NoiseSpec::name(Distribution d) {
  switch (d) {
    case Distribution::Uniform:
      return "uniform";
    case Distribution::Rademacher:
      return "rademacher";
    case Distribution::TruncatedGaussian:
      return "gaussian";
  }
  return "uniform";
}

void NoiseSpec::validate() const {
  if (!(K >= 0.0)) throw InputError("noise bound K must be nonnegative");
  if (distribution == Distribution::TruncatedGaussian && !(sigma >= 0.0))
    throw InputError("noise sigma must be nonnegative");
}

double NoiseSpec::draw(SeededRng& rng) const {
  switch (distribution) {
    case Distribution::Uniform:
      return rng.uniform(-K, K);
    case Distribution::Rademacher:
      return rng.bernoulli(0.5) ? K : -K;
    case Distribution::TruncatedGaussian:
      return std::clamp(sigma * rng.normal(), -K, K);
  }
  return 0.0;
}

Matrix gen_wigner(std::size_t n, const NoiseSpec& spec, std::uint64_t stream) {
  spec.validate();
  SeededRng rng(spec.seed, stream);
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = spec.draw(rng);
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return w;
}

void NoisySequenceSpec::validate() const {
  const std::size_t q = ratios.size();
  if (q == 0) throw InputError("ratios must not be empty");
  if (pattern.rows() != q || pattern.cols() != q)
    throw InputError("pattern must be " + std::to_string(q) + " x " + std::to_string(q) +
                     " to match the ratios");
  if (pattern.max_asymmetry() > 1e-12) throw InputError("pattern must be symmetric");
  double total = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0)) throw InputError("ratios must be positive");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("ratios must sum to 1");
  double lo = 1.0;
  double hi = 0.0;
  for (double p : pattern.data()) {
    if (p < 0.0 || p > 1.0) throw InputError("pattern entries must lie in [0,1]");
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  noise.validate();
  const double bound = std::min(lo, 1.0 - hi);
  if (!bernoulli && noise.K > bound + 1e-12) {
    throw ConstraintError("noise bound K = " + std::to_string(noise.K) +
                          " exceeds min(min p, 1 - max p) = " + std::to_string(bound) +
                          "; entries of the noisy matrix would leave [0,1]");
  }
}

std::vector<std::size_t> block_sizes(const std::vector<double>& ratios, std::size_t n) {
  const std::size_t q = ratios.size();
  std::vector<std::size_t> sizes(q);
  std::vector<double> remainder(q);
  std::size_t used = 0;
  for (std::size_t i = 0; i < q; ++i) {
    const double exact = ratios[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(std::floor(exact));
    remainder[i] = exact - static_cast<double>(sizes[i]);
    used += sizes[i];
  }
  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; used < n; ++k, ++used) ++sizes[order[k % q]];
  return sizes;
}

WeightedGraph noisy_graph(const NoisySequenceSpec& spec, std::size_t n, std::uint64_t stream) {
  spec.validate();
  const auto sizes = block_sizes(spec.ratios, n);
  for (std::size_t s : sizes)
    if (s == 0)
      throw InputError("n = " + std::to_string(n) + " leaves an empty block for these ratios");
  const Matrix base = blow_up(spec.pattern, sizes).beta();
  Matrix beta(n, n);
  if (spec.bernoulli) {
    SeededRng rng(spec.noise.seed, stream);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double v = rng.bernoulli(base(i, j)) ? 1.0 : 0.0;
        beta(i, j) = v;
        beta(j, i) = v;
      }
  } else {
    const Matrix w = gen_wigner(n, spec.noise, stream);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        beta(i, j) = std::clamp(base(i, j) + w(i, j), 0.0, 1.0);
  }
  return WeightedGraph(std::move(beta));
}

QuotientGraph limit_factor_graph(const NoisySequenceSpec& spec) {
  spec.validate();
  return {spec.ratios, spec.pattern};
}

std::uint64_t sweep_stream(std::size_t n, std::uint64_t seed) {
  return (static_cast<std::uint64_t>(n) << 32) ^ seed;
}

std::vector<DecayRow> cutnorm_decay_experiment(const NoiseSpec& spec,
                                               const std::vector<std::size_t>& ns, int seeds,
                                               int restarts, const Limits& limits) {
  spec.validate();
  const auto per_n = static_cast<std::size_t>(std::max(seeds, 0));
  std::vector<DecayRow> rows(ns.size() * per_n);
  parallel_for(rows.size(), [&](std::size_t t) {
    DecayRow& row = rows[t];
    row.n = ns[t / per_n];
    row.seed = t % per_n;
    check_guard(limits, "eigen_max_n", static_cast<double>(row.n), limits.eigen_max_n);
    Matrix w = gen_wigner(row.n, spec, sweep_stream(row.n, row.seed));
    if (spec.K > 0.0)
      for (double& v : w.data()) v /= spec.K;
    row.spectral_bound = spectral_norm_symmetric(w) / static_cast<double>(row.n);
    const auto graphon = StepfunctionGraphon::uniform(std::move(w));
    const auto r = cutnorm(graphon, restarts, SeededRng(spec.seed, sweep_stream(row.n, row.seed)),
                           limits);
    row.cutnorm = r.value;
    row.exact = r.exact;
  });
  return rows;
}

double q_variance(const Matrix& x, const Partition& p) {
  if (x.rows() != p.size()) throw InputError("q_variance: row count does not match the partition");
  double total = 0.0;
  for (const auto& members : p.members()) {
    std::vector<double> mean(x.cols(), 0.0);
    for (std::size_t v : members)
      for (std::size_t k = 0; k < x.cols(); ++k) mean[k] += x(v, k);
    for (double& m : mean) m /= static_cast<double>(members.size());
    for (std::size_t v : members)
      for (std::size_t k = 0; k < x.cols(); ++k) total += (x(v, k) - mean[k]) * (x(v, k) - mean[k]);
  }
  return total;
}

std::vector<SpectralRow> spectral_experiment(const NoisySequenceSpec& spec,
                                             const std::vector<std::size_t>& ns, int seeds,
                                             const Limits& limits) {
  spec.validate();
  const auto q = static_cast<std::size_t>(spec.q());
  const auto per_n = static_cast<std::size_t>(std::max(seeds, 0));
  for (std::size_t n : ns)
    check_guard(limits, "eigen_max_n", static_cast<double>(n), limits.eigen_max_n);
  std::vector<SpectralRow> rows(ns.size() * per_n);
  parallel_for(rows.size(), [&](std::size_t t) {
    SpectralRow& row = rows[t];
    row.n = ns[t / per_n];
    row.seed = t % per_n;
    const auto g = noisy_graph(spec, row.n, sweep_stream(row.n, row.seed));
    const auto eig = jacobi_eigen(g.beta(), true);
    const std::size_t keep = std::min(q + 1, row.n);
    row.top.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(keep));
    Matrix x(row.n, q);
    for (std::size_t v = 0; v < row.n; ++v)
      for (std::size_t k = 0; k < q && k < row.n; ++k) x(v, k) = eig.vectors(v, k);
    row.q_variance = q_variance(x, blow_up_partition(block_sizes(spec.ratios, row.n)));
  });
  return rows;
}

}  // namespace cutlim
