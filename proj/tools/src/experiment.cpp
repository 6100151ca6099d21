#include "cutlim/cli/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <variant>

#include "cutlim/cut_densities.hpp"
#include "cutlim/cut_metrics.hpp"
#include "cutlim/errors.hpp"
#include "cutlim/graph_io.hpp"
#include "cutlim/homomorphism.hpp"
#include "cutlim/noise_lab.hpp"
#include "cutlim/parallel.hpp"
#include "cutlim/qp_relax.hpp"
#include "cutlim/sampling.hpp"
#include "cutlim/version.hpp"

namespace cutlim::cli {

using nlohmann::json;

namespace {

const std::map<std::string, std::vector<std::string>>& command_fields() {
  static const std::map<std::string, std::vector<std::string>> fields = {
      {"hom", {"F", "G", "kind"}},
      {"sample-test", {"G", "k", "param", "c", "a", "reps"}},
      {"cutnorm", {"W", "method", "restarts"}},
      {"cutdist", {"G1", "G2"}},
      {"hausdorff", {"G1", "G2", "q", "balance"}},
      {"density", {"G", "q", "functional", "balance"}},
      {"energy", {"G", "q", "J", "h", "a"}},
      {"qp", {"G", "q", "c", "starts", "max_iters", "tol"}},
      {"noise-sweep", {"pattern", "ratios", "K", "distribution", "sigma", "ns", "seeds", "restarts"}},
      {"spectral", {"pattern", "ratios", "K", "distribution", "sigma", "ns", "seeds", "bernoulli"}},
      {"limit-graph", {"pattern", "ratios"}},
  };
  return fields;
}

bool uses(const ExperimentConfig& c, const std::string& field) {
  const auto it = command_fields().find(c.command);
  if (it == command_fields().end()) return false;
  return std::find(it->second.begin(), it->second.end(), field) != it->second.end();
}

Limits limits_of(const ExperimentConfig& c) { return c.guards ? Limits{} : Limits::unlimited(); }

}  // namespace

json ExperimentConfig::echo() const {
  const json all = {
      {"F", simple},
      {"G", graph},
      {"G1", graph},
      {"G2", graph2},
      {"W", graphon},
      {"J", coupling},
      {"h", field},
      {"pattern", pattern},
      {"kind", kind},
      {"k", k},
      {"q", q},
      {"functional", functional},
      {"balance", balance},
      {"c", c},
      {"a", a},
      {"param", param},
      {"reps", reps},
      {"method", method},
      {"restarts", restarts},
      {"starts", starts},
      {"max_iters", max_iters},
      {"tol", tol},
      {"K", K},
      {"distribution", distribution},
      {"sigma", sigma},
      {"ratios", ratios},
      {"ns", ns},
      {"seeds", seeds},
      {"bernoulli", bernoulli},
  };
  json e = json::object();
  const auto it = command_fields().find(command);
  if (it != command_fields().end())
    for (const auto& f : it->second) e[f] = all.at(f);
  e["seed"] = seed;
  e["guards"] = guards ? "on" : "off";
  return e;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  std::string s(buf, r.ptr);
  // Prefer the shortest representation that still round-trips.
  const auto shortest = std::to_chars(buf, buf + sizeof buf, x);
  std::string t(buf, shortest.ptr);
  return t.size() < s.size() ? t : s;
}

// --- validation ------------------------------------------------------------

namespace {

void add(std::vector<Diagnostic>& d, std::string message,
         Diagnostic::Kind kind = Diagnostic::Kind::Input) {
  d.push_back({kind, std::move(message)});
}

std::optional<json> read_checked(std::vector<Diagnostic>& d, const std::string& flag,
                                 const std::string& path) {
  if (path.empty()) {
    add(d, flag + " is required");
    return std::nullopt;
  }
  if (!std::filesystem::exists(path)) {
    add(d, flag + ": file not found: " + path);
    return std::nullopt;
  }
  try {
    return io::read_json_file(path);
  } catch (const std::exception& e) {
    add(d, flag + ": " + e.what());
    return std::nullopt;
  }
}

void check_graph(std::vector<Diagnostic>& d, const std::string& flag, const std::string& path) {
  const auto j = read_checked(d, flag, path);
  if (!j) return;
  try {
    for (const auto& m : io::diagnose(io::parse_graph_document(*j))) add(d, flag + ": " + m);
  } catch (const std::exception& e) {
    add(d, flag + ": " + e.what());
  }
}

template <class F>
void check_call(std::vector<Diagnostic>& d, const std::string& flag, F&& f) {
  try {
    f();
  } catch (const ConstraintError& e) {
    add(d, flag + ": " + e.what());
  } catch (const std::exception& e) {
    add(d, flag + ": " + e.what());
  }
}

void check_balance(std::vector<Diagnostic>& d, const std::string& text, int q) {
  try {
    const auto b = BalanceSpec::parse(text);
    if (b.kind == BalanceSpec::Kind::CBalanced && b.c * q > 1.0 + 1e-12) {
      add(d, "--balance: c = " + format_number(b.c) + " violates c <= 1/q = " +
                 format_number(1.0 / q) + " (a c-balanced q-partition needs q*c <= 1)");
      return;
    }
    b.validate(q);
  } catch (const std::exception& e) {
    add(d, std::string("--balance: ") + e.what());
  }
}

std::optional<Matrix> pattern_matrix(std::vector<Diagnostic>& d, const ExperimentConfig& c) {
  const auto j = read_checked(d, "--pattern", c.pattern);
  if (!j) return std::nullopt;
  try {
    return io::matrix_from_json(*j, "pattern");
  } catch (const std::exception& e) {
    add(d, std::string("--pattern: ") + e.what());
    return std::nullopt;
  }
}

NoiseSpec noise_of(const ExperimentConfig& c) {
  NoiseSpec s;
  s.distribution = NoiseSpec::parse_distribution(c.distribution);
  s.K = c.K;
  s.sigma = c.sigma;
  s.seed = c.seed;
  return s;
}

}  // namespace

std::vector<Diagnostic> validate(const ExperimentConfig& c) {
  std::vector<Diagnostic> d;
  if (command_fields().count(c.command) == 0) {
    add(d, "unknown command '" + c.command + "'");
    return d;
  }
  if (c.format != "json" && c.format != "csv") add(d, "--out must be json or csv, got '" + c.format + "'");

  if (uses(c, "G")) check_graph(d, "--G", c.graph);
  if (uses(c, "G1")) check_graph(d, "--G1", c.graph);
  if (uses(c, "G2")) check_graph(d, "--G2", c.graph2);
  if (uses(c, "F")) {
    if (const auto j = read_checked(d, "--F", c.simple))
      check_call(d, "--F", [&] { io::simple_graph_from_json(*j); });
  }
  if (uses(c, "W")) {
    if (const auto j = read_checked(d, "--W", c.graphon))
      check_call(d, "--W", [&] { io::stepfunction_from_json(*j); });
  }
  if (uses(c, "kind") && c.kind != "t" && c.kind != "tinj" && c.kind != "tind")
    add(d, "--kind must be t, tinj or tind, got '" + c.kind + "'");
  if (uses(c, "k") && c.k < 1) add(d, "--k must be at least 1");
  if (uses(c, "q") && c.q < 1) add(d, "--q must be at least 1");
  if (uses(c, "reps") && c.reps < 1) add(d, "--reps must be at least 1");
  if (uses(c, "restarts") && c.restarts < 1) add(d, "--restarts must be at least 1");
  if (uses(c, "seeds") && c.seeds < 1) add(d, "--seeds must be at least 1");
  if (uses(c, "method") && c.method != "auto" && c.method != "exact" && c.method != "heuristic")
    add(d, "--method must be auto, exact or heuristic, got '" + c.method + "'");
  if (uses(c, "functional") && c.functional != "f" && c.functional != "mu")
    add(d, "--functional must be f or mu, got '" + c.functional + "'");
  if (uses(c, "balance") && c.q >= 1) check_balance(d, c.balance, c.q);

  if (c.command == "sample-test") {
    check_call(d, "--param", [&] {
      const auto p = DensityParameter::parse(c.param, c.c, c.a);
      if (p.q > c.k) throw InputError("q = " + std::to_string(p.q) + " exceeds the sample size k");
    });
  }
  if (c.command == "energy") {
    if (!c.coupling.empty()) {
      if (const auto j = read_checked(d, "--J", c.coupling)) {
        check_call(d, "--J", [&] {
          const auto m = io::matrix_from_json(*j, "J");
          if (m.rows() != static_cast<std::size_t>(c.q) || m.cols() != static_cast<std::size_t>(c.q))
            throw InputError("J must be " + std::to_string(c.q) + " x " + std::to_string(c.q));
          if (m.max_asymmetry() > 1e-12)
            throw InputError("J is not symmetric (max asymmetry " + format_number(m.max_asymmetry()) + ")");
        });
      }
    }
    if (!c.field.empty()) {
      if (const auto j = read_checked(d, "--h", c.field)) {
        check_call(d, "--h", [&] {
          if (io::vector_from_json(*j, "h").size() != static_cast<std::size_t>(c.q))
            throw InputError("h must have length " + std::to_string(c.q));
        });
      }
    }
    if (!c.a.empty()) check_call(d, "--a", [&] { BalanceSpec::a_balanced(c.a).validate(c.q); });
  }
  if (c.command == "qp") {
    if (c.c < 0.0) add(d, "--c must be nonnegative");
    if (c.q >= 1 && c.c * c.q > 1.0 + 1e-12)
      add(d, "--c: q*c = " + format_number(c.c * c.q) + " > 1, the c-balanced polytope is empty",
          Diagnostic::Kind::Infeasible);
    if (c.starts < 1) add(d, "--starts must be at least 1");
    if (c.max_iters < 1) add(d, "--max-iters must be at least 1");
    if (!(c.tol > 0.0)) add(d, "--tol must be positive");
  }
  if (uses(c, "ns")) {
    if (c.ns.empty()) add(d, "--ns must list at least one size");
    for (std::size_t n : c.ns)
      if (n < 1) add(d, "--ns entries must be positive");
  }
  if (uses(c, "distribution")) {
    check_call(d, "--distribution", [&] { noise_of(c).validate(); });
  }
  if (uses(c, "ratios")) {
    const bool needs_pattern = c.command != "noise-sweep" || !c.pattern.empty();
    if (needs_pattern) {
      const auto p = pattern_matrix(d, c);
      if (p) {
        check_call(d, "--pattern", [&] {
          NoisySequenceSpec s{*p, c.ratios, c.command == "limit-graph" ? NoiseSpec{} : noise_of(c),
                              c.bernoulli};
          s.validate();
        });
        if (c.command == "spectral")
          for (std::size_t n : c.ns)
            if (n < c.ratios.size()) add(d, "--ns: n = " + std::to_string(n) + " is smaller than q");
      }
    }
  }
  return d;
}

// --- output ----------------------------------------------------------------

namespace {

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Artifact {
  json result;
  Table table;
};

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

json header(const ExperimentConfig& c) {
  return {{"tool", {{"name", kToolName}, {"version", kVersion}}},
          {"command", c.command},
          {"seed", c.seed},
          {"config", c.echo()}};
}

void write_artifact(const ExperimentConfig& c, const Artifact& a, std::ostream& os) {
  if (c.format == "json") {
    json doc = header(c);
    doc["result"] = a.result;
    os << doc.dump(2) << '\n';
    return;
  }
  os << "# tool: " << kToolName << ' ' << kVersion << '\n';
  os << "# command: " << c.command << '\n';
  os << "# seed: " << c.seed << '\n';
  os << "# config: " << c.echo().dump() << '\n';
  for (std::size_t i = 0; i < a.table.columns.size(); ++i)
    os << (i ? "," : "") << a.table.columns[i];
  os << '\n';
  for (const auto& row : a.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

std::string join_labels(const Partition& p) {
  std::string s;
  for (std::size_t v = 0; v < p.size(); ++v) s += (v ? " " : "") + std::to_string(p[v]);
  return s;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

long long ll(std::uint64_t x) { return static_cast<long long>(x); }

// --- commands --------------------------------------------------------------

Artifact cmd_hom(const ExperimentConfig& c) {
  const auto f = io::load_simple_graph(c.simple);
  const auto g = io::load_graph(c.graph);
  const auto lim = limits_of(c);
  double value = 0.0;
  if (c.kind == "t") value = hom_density(f, g, lim);
  if (c.kind == "tinj") value = inj_density(f, g, lim);
  if (c.kind == "tind") value = ind_density(f, g, lim);
  Artifact a;
  a.result = {{"kind", c.kind}, {"value", value}, {"k", f.k()}, {"n", g.size()}};
  a.table = {{"kind", "k", "n", "value"}, {{c.kind, (long long)f.k(), ll(g.size()), value}}};
  return a;
}

Artifact cmd_sample_test(const ExperimentConfig& c) {
  const auto g = io::load_graph(c.graph);
  const auto p = DensityParameter::parse(c.param, c.c, c.a);
  const auto r = testability_experiment(g, c.k, p, c.reps, c.seed, limits_of(c));
  Artifact a;
  json rows = json::array();
  a.table.columns = {"rep", "f_sample", "deviation"};
  for (std::size_t i = 0; i < r.f_sample.size(); ++i) {
    rows.push_back({{"rep", i}, {"f_sample", r.f_sample[i]}, {"deviation", r.deviation[i]}});
    a.table.rows.push_back({ll(i), r.f_sample[i], r.deviation[i]});
  }
  a.result = {{"parameter", p.name()}, {"balance", p.balance.to_string()}, {"f_graph", r.f_graph},
              {"mean", r.mean}, {"max", r.max},
              {"quantiles", {{"0.5", r.q50}, {"0.9", r.q90}, {"0.95", r.q95}, {"0.99", r.q99}}},
              {"rows", rows}};
  return a;
}

Artifact cmd_cutnorm(const ExperimentConfig& c) {
  const auto w = io::stepfunction_from_json(io::read_json_file(c.graphon));
  const auto lim = limits_of(c);
  const SeededRng rng(c.seed);
  CutNormResult r;
  if (c.method == "exact") r = cutnorm_exact(w, lim);
  else if (c.method == "heuristic") r = cutnorm_heuristic(w, c.restarts, rng);
  else r = cutnorm(w, c.restarts, rng, lim);
  Artifact a;
  a.result = {{"value", r.value}, {"exact", r.exact}, {"steps", w.steps()}, {"S", r.s}, {"T", r.t}};
  a.table = {{"steps", "value", "exact", "S", "T"},
             {{ll(w.steps()), r.value, r.exact, join(r.s), join(r.t)}}};
  return a;
}

Artifact cmd_cutdist(const ExperimentConfig& c) {
  const auto g1 = io::load_graph(c.graph);
  const auto g2 = io::load_graph(c.graph2);
  const auto r = cut_distance_perm(g1, g2, limits_of(c));
  Artifact a;
  a.result = {{"value", r.value}, {"permutation", r.permutation},
              {"permutations_tried", r.permutations_tried}, {"bound", "upper (vertex permutations only)"}};
  a.table = {{"value", "permutation", "permutations_tried"},
             {{r.value, join(r.permutation), ll(r.permutations_tried)}}};
  return a;
}

Artifact cmd_hausdorff(const ExperimentConfig& c) {
  const auto g1 = io::load_graph(c.graph);
  const auto g2 = io::load_graph(c.graph2);
  const auto b = BalanceSpec::parse(c.balance);
  const auto lim = limits_of(c);
  const auto s1 = quotient_set(g1, c.q, b, lim);
  const auto s2 = quotient_set(g2, c.q, b, lim);
  const double value = hausdorff_distance(s1, s2);
  Artifact a;
  a.result = {{"value", value}, {"size1", s1.items.size()}, {"size2", s2.items.size()}};
  a.table = {{"value", "size1", "size2"}, {{value, ll(s1.items.size()), ll(s2.items.size())}}};
  return a;
}

Artifact density_artifact(const DensityResult& r, json extra = json::object()) {
  Artifact a;
  a.result = {{"value", r.value},
              {"partition", r.partition.labels()},
              {"feasible_count", r.feasible_count},
              {"count_kind", r.canonical ? "set partitions" : "labelings"}};
  for (auto it = extra.begin(); it != extra.end(); ++it) a.result[it.key()] = it.value();
  a.table = {{"value", "partition", "feasible_count"},
             {{r.value, join_labels(r.partition), ll(r.feasible_count)}}};
  return a;
}

Artifact cmd_density(const ExperimentConfig& c) {
  const auto g = io::load_graph(c.graph);
  const auto b = BalanceSpec::parse(c.balance);
  const auto lim = limits_of(c);
  const auto r = c.functional == "f" ? min_cut_density(g, c.q, b, lim)
                                     : min_weighted_cut_density(g, c.q, b, lim);
  return density_artifact(r, {{"functional", c.functional}, {"balance", b.to_string()}});
}

Artifact cmd_energy(const ExperimentConfig& c) {
  const auto g = io::load_graph(c.graph);
  EnergySpec spec = EnergySpec::cut_coupling(c.q);
  if (!c.coupling.empty()) spec.J = io::matrix_from_json(io::read_json_file(c.coupling), "J");
  if (!c.field.empty()) spec.h = io::vector_from_json(io::read_json_file(c.field), "h");
  const auto lim = limits_of(c);
  if (!c.a.empty()) {
    const auto r = microcanonical_energy(g, c.q, spec.J, c.a, lim);
    return density_artifact(r, {{"microcanonical", true}});
  }
  return density_artifact(ground_state_energy(g, c.q, spec, lim), {{"microcanonical", false}});
}

Artifact cmd_qp(const ExperimentConfig& c) {
  const auto g = io::load_graph(c.graph);
  const QPProblem p(g, c.q, c.c);
  SolveOptions o;
  o.starts = c.starts;
  o.max_iters = c.max_iters;
  o.tol = c.tol;
  const auto s = solve(p, o, SeededRng(c.seed));
  const auto r = round_to_partition(p, s.x);
  const auto& rep = s.report;
  json starts = json::array();
  Artifact a;
  a.table.columns = {"start", "kind", "initial", "objective", "iterations", "restarts", "fw_gap",
                     "kkt_residual", "converged"};
  for (const auto& st : rep.starts) {
    starts.push_back({{"start", st.start}, {"kind", st.kind}, {"initial", st.initial},
                      {"objective", st.objective}, {"iterations", st.iterations},
                      {"restarts", st.restarts}, {"fw_gap", st.fw_gap},
                      {"kkt_residual", st.kkt_residual}, {"converged", st.converged}});
    a.table.rows.push_back({(long long)st.start, st.kind, st.initial, st.objective,
                            (long long)st.iterations, (long long)st.restarts, st.fw_gap,
                            st.kkt_residual, st.converged});
  }
  a.result = {{"relaxation_value", rep.objective},
              {"rounded_value", r.value},
              {"partition", r.partition.labels()},
              {"repair_moves", r.repair_moves},
              {"fw_gap", rep.fw_gap},
              {"kkt_residual", rep.kkt_residual},
              {"iterations", rep.iterations},
              {"converged", rep.converged},
              {"best_start", rep.best_start},
              {"per_start_table", starts}};
  if (c.timing) a.result["wall_seconds"] = rep.wall_seconds;
  return a;
}

Artifact cmd_noise_sweep(const ExperimentConfig& c) {
  const NoiseSpec noise = noise_of(c);
  const auto rows = cutnorm_decay_experiment(noise, c.ns, c.seeds, c.restarts, limits_of(c));
  std::optional<NoisySequenceSpec> seq;
  if (!c.pattern.empty())
    seq = NoisySequenceSpec{io::matrix_from_json(io::read_json_file(c.pattern), "pattern"),
                            c.ratios, noise, false};
  Artifact a;
  a.table.columns = {"n", "seed", "cutnorm", "exact", "spectral_bound"};
  if (seq) a.table.columns.push_back("d1_limit");
  json out = json::array();
  for (const auto& r : rows) {
    json row = {{"n", r.n}, {"seed", r.seed}, {"cutnorm", r.cutnorm}, {"exact", r.exact},
                {"spectral_bound", r.spectral_bound}};
    std::vector<Cell> cells = {ll(r.n), ll(r.seed), r.cutnorm, r.exact, r.spectral_bound};
    if (seq) {
      const auto g = noisy_graph(*seq, r.n, sweep_stream(r.n, r.seed));
      const double d = d1_distance(quotient(g, blow_up_partition(block_sizes(seq->ratios, r.n))),
                                   limit_factor_graph(*seq));
      row["d1_limit"] = d;
      cells.push_back(d);
    }
    out.push_back(row);
    a.table.rows.push_back(std::move(cells));
  }
  a.result = {{"rows", out}};
  return a;
}

Artifact cmd_spectral(const ExperimentConfig& c) {
  const NoisySequenceSpec seq{io::matrix_from_json(io::read_json_file(c.pattern), "pattern"),
                              c.ratios, noise_of(c), c.bernoulli};
  const auto rows = spectral_experiment(seq, c.ns, c.seeds, limits_of(c));
  const auto q = static_cast<std::size_t>(seq.q());
  Artifact a;
  a.table.columns = {"n", "seed"};
  for (std::size_t k = 0; k <= q; ++k) a.table.columns.push_back("lambda_" + std::to_string(k + 1));
  a.table.columns.push_back("q_variance");
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n}, {"seed", r.seed}, {"top_eigenvalues", r.top},
                   {"q_variance", r.q_variance}});
    std::vector<Cell> cells = {ll(r.n), ll(r.seed)};
    for (std::size_t k = 0; k <= q; ++k) cells.push_back(k < r.top.size() ? r.top[k] : NAN);
    cells.push_back(r.q_variance);
    a.table.rows.push_back(std::move(cells));
  }
  a.result = {{"rows", out}};
  return a;
}

Artifact cmd_limit_graph(const ExperimentConfig& c) {
  const NoisySequenceSpec seq{io::matrix_from_json(io::read_json_file(c.pattern), "pattern"),
                              c.ratios, NoiseSpec{}, false};
  const auto h = limit_factor_graph(seq);
  Artifact a;
  a.result = io::to_json(h);
  a.table.columns = {"i", "j", "vweight_i", "eweight"};
  const auto q = static_cast<std::size_t>(h.q());
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      a.table.rows.push_back({ll(i), ll(j), h.vweights[i], h.eweights(i, j)});
  return a;
}

const std::map<std::string, std::function<Artifact(const ExperimentConfig&)>>& handlers() {
  static const std::map<std::string, std::function<Artifact(const ExperimentConfig&)>> h = {
      {"hom", cmd_hom},           {"sample-test", cmd_sample_test},
      {"cutnorm", cmd_cutnorm},   {"cutdist", cmd_cutdist},
      {"hausdorff", cmd_hausdorff}, {"density", cmd_density},
      {"energy", cmd_energy},     {"qp", cmd_qp},
      {"noise-sweep", cmd_noise_sweep}, {"spectral", cmd_spectral},
      {"limit-graph", cmd_limit_graph},
  };
  return h;
}

}  // namespace

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto diagnostics = validate(c);
  if (!diagnostics.empty()) {
    bool input = false;
    for (const auto& d : diagnostics) {
      err << "error: " << d.message << '\n';
      input = input || d.kind == Diagnostic::Kind::Input;
    }
    return input ? kExitInput : kExitInfeasible;
  }
  if (!c.guards) err << "warning: enumeration guards disabled (--guards off)\n";
  if (c.workers > 0) set_worker_count(c.workers);
  try {
    const Artifact a = handlers().at(c.command)(c);
    if (c.output.empty()) {
      write_artifact(c, a, out);
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file) {
        err << "error: cannot write " << c.output << '\n';
        return kExitInput;
      }
      write_artifact(c, a, file);
    }
    return kExitOk;
  } catch (const ResourceError& e) {
    err << "error: resource guard " << e.guard() << ": " << e.what() << '\n';
    return kExitResource;
  } catch (const InfeasibleError& e) {
    err << "error: infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace cutlim::cli
