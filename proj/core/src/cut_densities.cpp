#include "cutlim/cut_densities.hpp"

#include <cmath>
#include <regex>

#include "cutlim/errors.hpp"

namespace cutlim {

EnergySpec EnergySpec::cut_coupling(int q) {
  const auto qs = static_cast<std::size_t>(q);
  EnergySpec s{Matrix(qs, qs, -0.5), std::vector<double>(qs, 0.0)};
  for (std::size_t i = 0; i < qs; ++i) s.J(i, i) = 0.0;
  return s;
}

void EnergySpec::validate(int q) const {
  const auto qs = static_cast<std::size_t>(q);
  if (J.rows() != qs || J.cols() != qs)
    throw InputError("J must be " + std::to_string(q) + " x " + std::to_string(q));
  if (h.size() != qs) throw InputError("h must have length " + std::to_string(q));
  if (J.max_asymmetry() > 1e-12) throw InputError("J must be symmetric");
}

bool EnergySpec::label_symmetric() const {
  const std::size_t q = h.size();
  for (std::size_t i = 0; i < q; ++i) {
    if (h[i] != h[0] || J(i, i) != J(0, 0)) return false;
    for (std::size_t j = 0; j < q; ++j)
      if (i != j && J(i, j) != J(0, 1)) return false;
  }
  return true;
}

namespace {

double cut_score(const PartitionStats& s) {
  double sum = 0.0;
  const std::size_t q = s.mass.size();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) sum += s.cut(i, j);
  return sum;
}

double weighted_score(const PartitionStats& s) {
  double sum = 0.0;
  const std::size_t q = s.mass.size();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) sum += s.cut(i, j) / (s.mass[i] * s.mass[j]);
  return sum;
}

double energy_score(const PartitionStats& s, const Matrix& J, const std::vector<double>* h) {
  double e = 0.0;
  const std::size_t q = s.mass.size();
  if (h != nullptr)
    for (std::size_t i = 0; i < q; ++i) e += s.mass[i] * (*h)[i];
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) e += s.cut(i, j) * J(i, j);
  return -e;
}

DensityResult minimize(const WeightedGraph& g, int q, const BalanceSpec& balance, LabelMode mode,
                       const PartitionScore& score, const Limits& limits) {
  if (q < 1) throw InputError("q must be at least 1");
  auto r = minimize_partitions(g, q, balance, mode, score, limits);
  DensityResult out;
  out.value = r.value;
  out.partition = Partition(std::move(r.labels), q);
  out.feasible_count = r.admissible;
  out.canonical = mode == LabelMode::Canonical;
  out.compressed = r.compressed;
  return out;
}

LabelMode mode_for(const BalanceSpec& balance) {
  return balance.label_symmetric() ? LabelMode::Canonical : LabelMode::Labeled;
}

}  // namespace

double cut_density(const WeightedGraph& g, const Partition& p) {
  return cut_score(partition_stats(g, p));
}

double weighted_cut_density(const WeightedGraph& g, const Partition& p) {
  return weighted_score(partition_stats(g, p));
}

DensityResult min_cut_density(const WeightedGraph& g, int q, const BalanceSpec& balance,
                              const Limits& limits) {
  return minimize(g, q, balance, mode_for(balance), cut_score, limits);
}

DensityResult min_weighted_cut_density(const WeightedGraph& g, int q, const BalanceSpec& balance,
                                       const Limits& limits) {
  return minimize(g, q, balance, mode_for(balance), weighted_score, limits);
}

DensityResult ground_state_energy(const WeightedGraph& g, int q, const EnergySpec& spec,
                                  const Limits& limits) {
  spec.validate(q);
  const auto mode = spec.label_symmetric() ? LabelMode::Canonical : LabelMode::Labeled;
  return minimize(g, q, BalanceSpec::unrestricted(), mode,
                  [&](const PartitionStats& s) { return energy_score(s, spec.J, &spec.h); },
                  limits);
}

DensityResult microcanonical_energy(const WeightedGraph& g, int q, const Matrix& J,
                                    const std::vector<double>& a, const Limits& limits) {
  EnergySpec spec{J, std::vector<double>(static_cast<std::size_t>(q), 0.0)};
  spec.validate(q);
  const auto balance = BalanceSpec::a_balanced(a);
  const auto mode = spec.label_symmetric() && balance.label_symmetric() ? LabelMode::Canonical
                                                                         : LabelMode::Labeled;
  return minimize(g, q, balance, mode,
                  [&](const PartitionStats& s) { return energy_score(s, J, nullptr); }, limits);
}

double fq_upper_bound(const WeightedGraph& g, int q) {
  const double eps = g.max_alpha() / g.volume();
  const double k = q - 1;
  return k * eps + k * (k - 1) / 2.0 * eps * eps;
}

DensityParameter DensityParameter::parse(const std::string& name, double c,
                                         const std::vector<double>& a) {
  static const std::regex pattern("(f|mu)([0-9]+)(c|a)?");
  std::smatch m;
  if (!std::regex_match(name, m, pattern))
    throw InputError("unknown density parameter '" + name +
                     "' (expected f<q>, f<q>c, f<q>a, mu<q>, mu<q>c or mu<q>a)");
  DensityParameter p;
  p.functional = m[1] == "f" ? Functional::Cut : Functional::WeightedCut;
  p.q = std::stoi(m[2]);
  if (m[3] == "c") p.balance = BalanceSpec::c_balanced(c);
  if (m[3] == "a") p.balance = BalanceSpec::a_balanced(a);
  p.balance.validate(p.q);
  return p;
}

std::string DensityParameter::name() const {
  std::string s = functional == Functional::Cut ? "f" : "mu";
  s += std::to_string(q);
  if (balance.kind == BalanceSpec::Kind::CBalanced) s += "c";
  if (balance.kind == BalanceSpec::Kind::ABalanced) s += "a";
  return s;
}

double DensityParameter::evaluate(const WeightedGraph& g, const Limits& limits) const {
  if (functional == Functional::Cut) return min_cut_density(g, q, balance, limits).value;
  return min_weighted_cut_density(g, q, balance, limits).value;
}

}  // namespace cutlim
