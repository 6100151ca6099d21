#include "cutlim/homomorphism.hpp"

#include <bit>
#include <cmath>

#include "cutlim/errors.hpp"
#include "cutlim/parallel.hpp"

namespace cutlim {

// --- SimpleGraph -----------------------------------------------------------

int SimpleGraph::pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

namespace {
void check_order(int k) {
  if (k < 0 || k > SimpleGraph::kMaxVertices)
    throw InputError("SimpleGraph: k must lie in [0," + std::to_string(SimpleGraph::kMaxVertices) + "]");
}
std::size_t word_count(int k) {
  return (static_cast<std::size_t>(SimpleGraph::pair_count(k)) + 63) / 64;
}
}  // namespace

SimpleGraph::SimpleGraph(int k, const std::vector<std::pair<int, int>>& edges) : k_(k) {
  check_order(k);
  words_.assign(word_count(k), 0);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= k || b >= k)
      throw InputError("SimpleGraph: edge endpoint out of range");
    if (a == b) throw InputError("SimpleGraph: loops are not allowed");
    if (has_edge(a, b)) throw InputError("SimpleGraph: duplicate edge");
    set_pair(pair_index(a, b));
  }
}

SimpleGraph SimpleGraph::from_mask(int k, std::uint64_t mask) {
  check_order(k);
  const int m = pair_count(k);
  if (m < 64 && (mask >> m) != 0) throw InputError("SimpleGraph: mask has bits beyond C(k,2)");
  SimpleGraph f(k, {});
  if (!f.words_.empty()) f.words_[0] = mask;
  return f;
}

SimpleGraph SimpleGraph::complete(int k) {
  SimpleGraph f(k, {});
  for (int p = 0; p < pair_count(k); ++p) f.set_pair(p);
  return f;
}

std::uint64_t SimpleGraph::mask() const {
  if (pair_count(k_) > 64)
    throw InputError("SimpleGraph::mask: k = " + std::to_string(k_) + " has more than 64 pairs");
  return words_.empty() ? 0 : words_[0];
}

void SimpleGraph::set_pair(int p) {
  words_[static_cast<std::size_t>(p) / 64] |= std::uint64_t{1} << (p % 64);
}

bool SimpleGraph::has_edge(int i, int j) const {
  if (i == j) return false;
  const int p = pair_index(i, j);
  return (words_[static_cast<std::size_t>(p) / 64] >> (p % 64)) & 1U;
}

int SimpleGraph::edge_count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < k_; ++j)
    for (int i = 0; i < j; ++i)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

SimpleGraph SimpleGraph::with_edge(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= k_ || j >= k_)
    throw InputError("SimpleGraph::with_edge: invalid pair");
  SimpleGraph f = *this;
  f.set_pair(pair_index(i, j));
  return f;
}

// --- densities -------------------------------------------------------------

double elementary_symmetric(std::span<const double> values, int k) {
  if (k < 0) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double v : values)
    for (int j = k; j >= 1; --j) e[static_cast<std::size_t>(j)] += v * e[static_cast<std::size_t>(j - 1)];
  return e[static_cast<std::size_t>(k)];
}

namespace {

enum class MapKind { All, Injective, Induced };

void check_hom_guards(int k, std::size_t n, const Limits& limits) {
  check_guard(limits, "hom_max_k", k, limits.hom_max_k);
  check_guard(limits, "hom_max_n", static_cast<double>(n), limits.hom_max_n);
  check_guard(limits, "hom_max_maps", std::pow(static_cast<double>(n), k), limits.hom_max_maps);
}

// Sum over maps Phi of prod a_Phi(i) times the edge factor, enumerated in
// row-major order over [n]^k. Vertex 0's image is split into independent
// tasks whose partial sums are added in image order.
class MapSummer {
 public:
  MapSummer(const SimpleGraph& f, const WeightedGraph& g, MapKind kind)
      : f_(f), beta_(g.beta()), a_(g.normalized_alpha()), kind_(kind), k_(f.k()), n_(g.size()) {}

  double run() const {
    if (k_ == 0) return 1.0;
    std::vector<double> partial(n_, 0.0);
    parallel_for(n_, [&](std::size_t v0) {
      std::vector<std::size_t> image(static_cast<std::size_t>(k_));
      image[0] = v0;
      partial[v0] = a_[v0] * descend(1, image);
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
  }

 private:
  double descend(int depth, std::vector<std::size_t>& image) const {
    if (depth == k_) return 1.0;
    double sum = 0.0;
    const auto d = static_cast<std::size_t>(depth);
    for (std::size_t v = 0; v < n_; ++v) {
      if (kind_ != MapKind::All) {
        bool used = false;
        for (std::size_t u = 0; u < d; ++u) used = used || image[u] == v;
        if (used) continue;
      }
      double factor = a_[v];
      for (int u = 0; u < depth && factor != 0.0; ++u) {
        const double b = beta_(image[static_cast<std::size_t>(u)], v);
        if (f_.has_edge(u, depth)) {
          factor *= b;
        } else if (kind_ == MapKind::Induced) {
          factor *= 1.0 - b;
        }
      }
      if (factor == 0.0) continue;
      image[d] = v;
      sum += factor * descend(depth + 1, image);
    }
    return sum;
  }

  const SimpleGraph& f_;
  const Matrix& beta_;
  std::vector<double> a_;
  MapKind kind_;
  int k_;
  std::size_t n_;
};

double injective_density(const SimpleGraph& f, const WeightedGraph& g, MapKind kind,
                         const Limits& limits) {
  const int k = f.k();
  if (static_cast<std::size_t>(k) > g.size())
    throw InputError("injective densities need k <= n (k = " + std::to_string(k) +
                     ", n = " + std::to_string(g.size()) + ")");
  check_hom_guards(k, g.size(), limits);
  const auto a = g.normalized_alpha();
  double denom = elementary_symmetric(a, k);
  for (int i = 2; i <= k; ++i) denom *= i;
  return MapSummer(f, g, kind).run() / denom;
}

}  // namespace

double hom_density(const SimpleGraph& f, const WeightedGraph& g, const Limits& limits) {
  if (f.k() < 1) throw InputError("hom_density: F needs at least one vertex");
  check_hom_guards(f.k(), g.size(), limits);
  return MapSummer(f, g, MapKind::All).run();
}

double inj_density(const SimpleGraph& f, const WeightedGraph& g, const Limits& limits) {
  return injective_density(f, g, MapKind::Injective, limits);
}

double ind_density(const SimpleGraph& f, const WeightedGraph& g, const Limits& limits) {
  return injective_density(f, g, MapKind::Induced, limits);
}

GraphDistribution sample_distribution(int k, const WeightedGraph& g, const Limits& limits) {
  if (k < 1) throw InputError("sample_distribution: k must be at least 1");
  check_guard(limits, "sample_distribution_max_k", k, limits.sample_distribution_max_k);
  const std::size_t n = g.size();
  const int m = SimpleGraph::pair_count(k);
  check_guard(limits, "sample_distribution_max_work",
              std::pow(static_cast<double>(n), k) * std::ldexp(1.0, m),
              limits.sample_distribution_max_work);

  const auto a = g.normalized_alpha();
  const Matrix& beta = g.beta();

  // Depth-first over maps; level d holds the law of the edges among the first
  // d sampled vertices, weighted by the probability of the drawn prefix.
  // Pairs (u,d), u < d, are exactly bits C(d,2) .. C(d+1,2)-1.
  std::vector<std::vector<double>> level(static_cast<std::size_t>(k) + 1);
  std::vector<std::size_t> image(static_cast<std::size_t>(k));
  GraphDistribution out{k, std::vector<double>(std::size_t{1} << m, 0.0)};

  auto descend = [&](auto&& self, int d) -> void {
    const auto& prev = level[static_cast<std::size_t>(d)];
    if (d == k) {
      for (std::size_t s = 0; s < prev.size(); ++s) out.probability[s] += prev[s];
      return;
    }
    const std::size_t low = prev.size();
    auto& next = level[static_cast<std::size_t>(d) + 1];
    for (std::size_t v = 0; v < n; ++v) {
      image[static_cast<std::size_t>(d)] = v;
      next.assign(low << d, 0.0);
      // Edge states of the d new pairs; probability of each state pattern.
      std::vector<double> fresh(std::size_t{1} << d, a[v]);
      for (int u = 0; u < d; ++u) {
        const double p = beta(image[static_cast<std::size_t>(u)], v);
        for (std::size_t s = 0; s < fresh.size(); ++s)
          fresh[s] *= ((s >> u) & 1U) ? p : 1.0 - p;
      }
      for (std::size_t hi = 0; hi < fresh.size(); ++hi) {
        if (fresh[hi] == 0.0) continue;
        for (std::size_t lo = 0; lo < low; ++lo) next[(hi * low) | lo] = prev[lo] * fresh[hi];
      }
      self(self, d + 1);
    }
  };
  level[0] = {1.0};
  descend(descend, 0);
  return out;
}

}  // namespace cutlim
