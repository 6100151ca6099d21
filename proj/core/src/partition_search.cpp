#include "cutlim/partition_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cutlim/errors.hpp"
#include "cutlim/parallel.hpp"

namespace cutlim {

namespace {
constexpr double kMassTol = 1e-12;

// Scores within this relative distance count as ties, so the argmin does not
// depend on rounding (e.g. under rescaled vertex weights).
bool improves(double value, double best) {
  if (std::isinf(best)) return value < best;
  return value < best - 1e-12 * std::max(1.0, std::abs(best));
}

bool ties(double value, double best) {
  return !improves(value, best) && !improves(best, value);
}
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

// --- BalanceSpec -----------------------------------------------------------

BalanceSpec BalanceSpec::parse(const std::string& text) {
  if (text.empty() || text == "none" || text == "unrestricted") return unrestricted();
  auto fail = [&] {
    return InputError("cannot parse balance '" + text + "' (expected none, c:<c> or a:<a1,...>)");
  };
  if (text.size() < 3 || text[1] != ':') throw fail();
  const std::string body = text.substr(2);
  try {
    if (text[0] == 'c') return c_balanced(std::stod(body));
    if (text[0] == 'a') {
      std::vector<double> a;
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) a.push_back(std::stod(item));
      return a_balanced(std::move(a));
    }
  } catch (const std::logic_error&) {
    throw fail();
  }
  throw fail();
}

std::string BalanceSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::Unrestricted:
      return "none";
    case Kind::CBalanced:
      os << "c:" << c;
      return os.str();
    case Kind::ABalanced:
      os << "a:";
      for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
      return os.str();
  }
  return "none";
}

void BalanceSpec::validate(int q) const {
  if (q < 1) throw InputError("q must be at least 1");
  if (kind == Kind::CBalanced) {
    if (!(c > 0.0)) throw InputError("c-balance requires c > 0");
    if (c * q > 1.0 + 1e-12)
      throw InputError("c-balance requires c <= 1/q (c = " + std::to_string(c) +
                       ", q = " + std::to_string(q) + ")");
  } else if (kind == Kind::ABalanced) {
    if (a.size() != static_cast<std::size_t>(q))
      throw InputError("a-balance vector has length " + std::to_string(a.size()) +
                       " but q = " + std::to_string(q));
    double s = 0.0;
    for (double x : a) {
      if (!(x > 0.0)) throw InputError("a-balance entries must be positive");
      s += x;
    }
    if (std::abs(s - 1.0) > 1e-9) throw InputError("a-balance entries must sum to 1");
  }
}

bool BalanceSpec::label_symmetric() const {
  if (kind != Kind::ABalanced) return true;
  return std::all_of(a.begin(), a.end(), [&](double x) { return x == a.front(); });
}

bool BalanceSpec::admits(std::span<const double> mass, double a_tolerance) const {
  switch (kind) {
    case Kind::Unrestricted:
      return true;
    case Kind::CBalanced:
      return std::all_of(mass.begin(), mass.end(),
                         [&](double m) { return m >= c - kMassTol; });
    case Kind::ABalanced:
      for (std::size_t i = 0; i < mass.size(); ++i)
        if (std::abs(mass[i] - a[i]) > a_tolerance + kMassTol) return false;
      return true;
  }
  return false;
}

// --- statistics ------------------------------------------------------------

PartitionStats partition_stats(const WeightedGraph& g, const Partition& p) {
  PartitionStats s;
  const auto q = static_cast<std::size_t>(p.clusters());
  s.mass.assign(q, 0.0);
  for (std::size_t v = 0; v < g.size(); ++v) s.mass[static_cast<std::size_t>(p[v])] += g.alpha(v);
  for (double& m : s.mass) m /= g.volume();
  s.cut = cluster_cuts(g, p);
  const double vol2 = g.volume() * g.volume();
  for (double& x : s.cut.data()) x /= vol2;
  return s;
}

// --- exhaustive enumeration ------------------------------------------------

namespace {

struct Candidate {
  double value = kInf;
  std::vector<int> labels;
  std::uint64_t admissible = 0;
};

void add_saturating(std::uint64_t& acc, std::uint64_t x) {
  acc = (acc > std::numeric_limits<std::uint64_t>::max() - x)
            ? std::numeric_limits<std::uint64_t>::max()
            : acc + x;
}

// Depth-first search over label strings with incremental cluster statistics.
class Enumerator {
 public:
  Enumerator(const WeightedGraph& g, int q, const BalanceSpec& balance, LabelMode mode)
      : n_(g.size()),
        q_(static_cast<std::size_t>(q)),
        a_(g.normalized_alpha()),
        beta_(g.beta()),
        balance_(balance),
        mode_(mode),
        a_tol_(g.max_alpha() / g.volume()),
        suffix_(n_ + 1, 0.0),
        labels_(n_, 0),
        count_(q_, 0),
        stats_(n_ + 1) {
    for (std::size_t v = n_; v-- > 0;) suffix_[v] = suffix_[v + 1] + a_[v];
    for (auto& s : stats_) {
      s.mass.assign(q_, 0.0);
      s.cut = Matrix(q_, q_);
    }
  }

  // Label prefixes of length `depth` that survive pruning, in lexicographic order.
  std::vector<std::vector<int>> prefixes(std::size_t depth) {
    std::vector<std::vector<int>> out;
    depth = std::min(depth, n_);
    walk(0, depth, [&](std::size_t) {
      out.emplace_back(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(depth));
    });
    return out;
  }

  // Replays `prefix` then enumerates all completions.
  template <class Leaf>
  void run_from(const std::vector<int>& prefix, Leaf&& leaf) {
    for (std::size_t v = 0; v < prefix.size(); ++v) assign(v, prefix[v]);
    walk(prefix.size(), n_, [&](std::size_t) {
      if (balance_.admits(stats_[n_].mass, a_tol_)) leaf(labels_, stats_[n_]);
    });
    for (std::size_t v = prefix.size(); v-- > 0;) unassign(v);
  }

 private:
  void assign(std::size_t v, int label) {
    const auto i = static_cast<std::size_t>(label);
    // Weight from v to each cluster among already placed vertices.
    std::vector<double>& s = scratch_;
    s.assign(q_, 0.0);
    for (std::size_t u = 0; u < v; ++u) s[static_cast<std::size_t>(labels_[u])] += a_[u] * beta_(u, v);

    const PartitionStats& prev = stats_[v];
    PartitionStats& next = stats_[v + 1];
    next.mass = prev.mass;
    std::copy(prev.cut.data().begin(), prev.cut.data().end(), next.cut.data().begin());
    const double av = a_[v];
    next.mass[i] += av;
    for (std::size_t j = 0; j < q_; ++j) {
      if (j == i) continue;
      const double d = av * s[j];
      next.cut(i, j) += d;
      next.cut(j, i) += d;
    }
    next.cut(i, i) += 2.0 * av * s[i] + av * av * beta_(v, v);
    labels_[v] = label;
    if (count_[i]++ == 0) ++used_;
  }

  void unassign(std::size_t v) {
    const auto i = static_cast<std::size_t>(labels_[v]);
    if (--count_[i] == 0) --used_;
  }

  bool viable(std::size_t placed) const {
    const std::size_t left = n_ - placed;
    if (q_ - used_ > left) return false;
    const auto& mass = stats_[placed].mass;
    const double room = suffix_[placed] + kMassTol;
    switch (balance_.kind) {
      case BalanceSpec::Kind::Unrestricted:
        return true;
      case BalanceSpec::Kind::CBalanced: {
        double need = 0.0;
        for (double m : mass) need += std::max(0.0, balance_.c - kMassTol - m);
        return need <= room;
      }
      case BalanceSpec::Kind::ABalanced: {
        double need = 0.0;
        for (std::size_t i = 0; i < q_; ++i) {
          if (mass[i] > balance_.a[i] + a_tol_ + kMassTol) return false;
          need += std::max(0.0, balance_.a[i] - a_tol_ - kMassTol - mass[i]);
        }
        return need <= room;
      }
    }
    return true;
  }

  template <class Visit>
  void walk(std::size_t v, std::size_t stop, Visit&& visit) {
    if (v == stop) {
      visit(v);
      return;
    }
    int top = static_cast<int>(q_) - 1;
    if (mode_ == LabelMode::Canonical) {
      int max_used = -1;
      for (std::size_t u = 0; u < v; ++u) max_used = std::max(max_used, labels_[u]);
      top = std::min(top, max_used + 1);
    }
    for (int label = 0; label <= top; ++label) {
      assign(v, label);
      if (viable(v + 1)) walk(v + 1, stop, visit);
      unassign(v);
    }
  }

  std::size_t n_;
  std::size_t q_;
  std::vector<double> a_;
  const Matrix& beta_;
  const BalanceSpec& balance_;
  LabelMode mode_;
  double a_tol_;
  std::vector<double> suffix_;
  std::vector<int> labels_;
  std::vector<std::size_t> count_;
  std::size_t used_ = 0;
  std::vector<PartitionStats> stats_;
  std::vector<double> scratch_;
};

std::size_t prefix_depth(std::size_t n, std::size_t q) {
  std::size_t depth = 0;
  double tasks = 1.0;
  while (depth < n && tasks < 256.0) {
    tasks *= static_cast<double>(q);
    ++depth;
  }
  return q == 1 ? 0 : depth;
}

SearchResult exhaustive_minimum(const WeightedGraph& g, int q, const BalanceSpec& balance,
                                LabelMode mode, const PartitionScore& score) {
  // Task split is fixed by (n, q) alone so results do not depend on the
  // number of workers.
  const auto pre = Enumerator(g, q, balance, mode).prefixes(prefix_depth(g.size(), static_cast<std::size_t>(q)));
  std::vector<Candidate> partial(pre.size());
  parallel_for(pre.size(), [&](std::size_t t) {
    Enumerator e(g, q, balance, mode);
    Candidate& best = partial[t];
    e.run_from(pre[t], [&](const std::vector<int>& labels, const PartitionStats& s) {
      ++best.admissible;
      const double value = score(s);
      if (improves(value, best.value)) {
        best.value = value;
        best.labels = labels;
      }
    });
  });
  Candidate best;
  std::uint64_t total = 0;
  for (auto& c : partial) {
    add_saturating(total, c.admissible);
    if (c.admissible > 0 && improves(c.value, best.value)) best = std::move(c);
  }
  if (total == 0) {
    throw InfeasibleError("no admissible " + std::to_string(q) + "-partition under balance " +
                          balance.to_string() + " (empty feasible set)");
  }
  return {best.value, std::move(best.labels), total, false};
}

// --- twin-class enumeration ------------------------------------------------

class CountEnumerator {
 public:
  CountEnumerator(const WeightedGraph& g, std::vector<TwinClass> classes, int q,
                  const BalanceSpec& balance, LabelMode mode, const PartitionScore& score)
      : n_(g.size()),
        classes_(std::move(classes)),
        q_(static_cast<std::size_t>(q)),
        balance_(balance),
        mode_(mode),
        score_(score),
        a_tol_(g.max_alpha() / g.volume()) {
    const std::size_t c = classes_.size();
    between_ = Matrix(c, c);
    for (std::size_t x = 0; x < c; ++x)
      for (std::size_t y = 0; y < c; ++y)
        between_(x, y) = x == y ? classes_[x].mutual
                                : g.beta(classes_[x].members.front(), classes_[y].members.front());
    suffix_.assign(c + 1, 0.0);
    for (std::size_t x = c; x-- > 0;)
      suffix_[x] = suffix_[x + 1] + classes_[x].weight * static_cast<double>(classes_[x].members.size());
    counts_.assign(c, std::vector<std::size_t>(q_, 0));
    levels_.resize(c + 1);
    for (auto& s : levels_) {
      s.mass.assign(q_, 0.0);
      s.cut = Matrix(q_, q_);
    }
    log_factorial_.assign(n_ + 1, 0.0);
    for (std::size_t k = 1; k <= n_; ++k)
      log_factorial_[k] = log_factorial_[k - 1] + std::log(static_cast<double>(k));
  }

  SearchResult run() {
    descend(0, 0.0);
    if (admissible_ == 0.0) {
      throw InfeasibleError("no admissible " + std::to_string(q_) +
                            "-partition under balance " + balance_.to_string() +
                            " (empty feasible set)");
    }
    double count = admissible_;
    if (mode_ == LabelMode::Canonical) count = std::round(count / std::tgamma(static_cast<double>(q_) + 1.0));
    const double cap = 18446744073709551615.0;
    SearchResult r{best_value_, best_labels_,
                   count >= cap ? std::numeric_limits<std::uint64_t>::max()
                                : static_cast<std::uint64_t>(count),
                   true};
    return r;
  }

 private:
  void descend(std::size_t cls, double log_ways) {
    if (cls == classes_.size()) {
      leaf(log_ways);
      return;
    }
    std::vector<std::size_t>& x = counts_[cls];
    compositions(cls, 0, classes_[cls].members.size(), x, log_ways);
  }

  void compositions(std::size_t cls, std::size_t part, std::size_t left,
                    std::vector<std::size_t>& x, double log_ways) {
    if (part + 1 == q_) {
      x[part] = left;
      apply(cls, log_ways);
      return;
    }
    for (std::size_t k = left + 1; k-- > 0;) {
      x[part] = k;
      compositions(cls, part + 1, left - k, x, log_ways);
    }
  }

  void apply(std::size_t cls, double log_ways) {
    const TwinClass& tc = classes_[cls];
    const auto& x = counts_[cls];
    std::vector<double> s(q_, 0.0);
    for (std::size_t b = 0; b < cls; ++b) {
      const double w = classes_[b].weight * between_(b, cls);
      for (std::size_t j = 0; j < q_; ++j) s[j] += static_cast<double>(counts_[b][j]) * w;
    }
    const PartitionStats& prev = levels_[cls];
    PartitionStats& next = levels_[cls + 1];
    next.mass = prev.mass;
    std::copy(prev.cut.data().begin(), prev.cut.data().end(), next.cut.data().begin());
    const double a = tc.weight;
    double log_multinomial = log_factorial_[tc.members.size()];
    for (std::size_t i = 0; i < q_; ++i) {
      const auto xi = static_cast<double>(x[i]);
      log_multinomial -= log_factorial_[x[i]];
      next.mass[i] += xi * a;
      for (std::size_t j = 0; j < q_; ++j) {
        const auto xj = static_cast<double>(x[j]);
        double d = a * (xi * s[j] + xj * s[i]);
        if (i != j) {
          d += xi * xj * a * a * tc.mutual;
        } else {
          d = 2.0 * a * xi * s[i] + xi * (xi - 1.0) * a * a * tc.mutual + xi * a * a * tc.loop;
        }
        next.cut(i, j) += d;
      }
    }
    if (!viable(cls + 1)) return;
    descend(cls + 1, log_ways + log_multinomial);
  }

  bool viable(std::size_t done) const {
    const auto& mass = levels_[done].mass;
    const double room = suffix_[done] + kMassTol;
    std::size_t empty = 0;
    for (std::size_t i = 0; i < q_; ++i) {
      std::size_t c = 0;
      for (std::size_t b = 0; b < done; ++b) c += counts_[b][i];
      empty += c == 0;
    }
    std::size_t left = 0;
    for (std::size_t b = done; b < classes_.size(); ++b) left += classes_[b].members.size();
    if (empty > left) return false;
    if (balance_.kind == BalanceSpec::Kind::CBalanced) {
      double need = 0.0;
      for (double m : mass) need += std::max(0.0, balance_.c - kMassTol - m);
      return need <= room;
    }
    if (balance_.kind == BalanceSpec::Kind::ABalanced) {
      double need = 0.0;
      for (std::size_t i = 0; i < q_; ++i) {
        if (mass[i] > balance_.a[i] + a_tol_ + kMassTol) return false;
        need += std::max(0.0, balance_.a[i] - a_tol_ - kMassTol - mass[i]);
      }
      return need <= room;
    }
    return true;
  }

  std::vector<int> build_labels() const {
    std::vector<int> labels(n_, 0);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < q_; ++i)
        for (std::size_t r = 0; r < counts_[c][i]; ++r) labels[classes_[c].members[k++]] = static_cast<int>(i);
    }
    if (mode_ == LabelMode::Canonical) {
      const auto canon = Partition(labels, static_cast<int>(q_)).canonical();
      labels.assign(canon.labels().begin(), canon.labels().end());
    }
    return labels;
  }

  void leaf(double log_ways) {
    const PartitionStats& s = levels_.back();
    if (!balance_.admits(s.mass, a_tol_)) return;
    admissible_ += std::exp(log_ways);
    const double value = score_(s);
    const bool better = improves(value, best_value_);
    if (!better && !ties(value, best_value_)) return;
    auto labels = build_labels();
    if (better || labels < best_labels_) {
      best_value_ = value;
      best_labels_ = std::move(labels);
    }
  }

  std::size_t n_;
  std::vector<TwinClass> classes_;
  std::size_t q_;
  const BalanceSpec& balance_;
  LabelMode mode_;
  const PartitionScore& score_;
  double a_tol_;
  Matrix between_;
  std::vector<double> suffix_;
  std::vector<std::vector<std::size_t>> counts_;
  std::vector<PartitionStats> levels_;
  std::vector<double> log_factorial_;
  double admissible_ = 0.0;
  double best_value_ = kInf;
  std::vector<int> best_labels_;
};

double binomial(double n, double k) {
  double r = 1.0;
  for (double i = 1.0; i <= k; i += 1.0) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<TwinClass> twin_classes(const WeightedGraph& g) {
  const std::size_t n = g.size();
  const auto a = g.normalized_alpha();
  std::vector<TwinClass> classes;
  auto twins = [&](std::size_t u, std::size_t v) {
    if (g.alpha(u) != g.alpha(v) || g.beta(u, u) != g.beta(v, v)) return false;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (g.beta(u, w) != g.beta(v, w)) return false;
    }
    return true;
  };
  for (std::size_t v = 0; v < n; ++v) {
    bool placed = false;
    for (auto& c : classes) {
      const std::size_t r = c.members.front();
      if (!twins(r, v)) continue;
      if (c.members.size() >= 2 && g.beta(r, v) != c.mutual) continue;
      if (c.members.size() == 1) c.mutual = g.beta(r, v);
      c.members.push_back(v);
      placed = true;
      break;
    }
    if (!placed) classes.push_back({{v}, a[v], g.beta(v, v), 0.0});
  }
  return classes;
}

SearchResult minimize_partitions(const WeightedGraph& g, int q, const BalanceSpec& balance,
                                 LabelMode mode, const PartitionScore& score,
                                 const Limits& limits) {
  balance.validate(q);
  const std::size_t n = g.size();
  if (static_cast<std::size_t>(q) > n)
    throw InputError("q = " + std::to_string(q) + " exceeds the number of vertices " +
                     std::to_string(n));
  const double assignments = std::pow(static_cast<double>(q), static_cast<double>(n));
  if (assignments <= limits.partition_max_assignments) {
    return exhaustive_minimum(g, q, balance, mode, score);
  }
  auto classes = twin_classes(g);
  double compressed = 1.0;
  for (const auto& c : classes)
    compressed *= binomial(static_cast<double>(c.members.size() + static_cast<std::size_t>(q) - 1),
                           static_cast<double>(q - 1));
  if (compressed <= limits.partition_max_assignments && compressed < assignments) {
    return CountEnumerator(g, std::move(classes), q, balance, mode, score).run();
  }
  check_guard(limits, "partition_max_assignments", assignments, limits.partition_max_assignments);
  return exhaustive_minimum(g, q, balance, mode, score);
}

void for_each_partition(
    const WeightedGraph& g, int q, const BalanceSpec& balance, LabelMode mode,
    const std::function<void(std::span<const int>, const PartitionStats&)>& visit,
    const Limits& limits) {
  balance.validate(q);
  if (static_cast<std::size_t>(q) > g.size())
    throw InputError("q = " + std::to_string(q) + " exceeds the number of vertices " +
                     std::to_string(g.size()));
  check_guard(limits, "partition_max_assignments",
              std::pow(static_cast<double>(q), static_cast<double>(g.size())),
              limits.partition_max_assignments);
  Enumerator e(g, q, balance, mode);
  e.run_from({}, [&](const std::vector<int>& labels, const PartitionStats& s) { visit(labels, s); });
}

}  // namespace cutlim
