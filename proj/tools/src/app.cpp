#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cutlim/cli/experiment.hpp"
#include "cutlim/version.hpp"

namespace cutlim::cli {

namespace {

struct Flags {
  std::string guards = "on";
};

void add_common(CLI::App* sub, ExperimentConfig& c, Flags& f) {
  sub->add_option("--seed", c.seed, "Master seed")->envname("CUTLIM_SEED");
  sub->add_option("--out", c.format, "Output format: json or csv");
  sub->add_option("-o,--output", c.output, "Write the artifact to this file instead of stdout");
  sub->add_option("--guards", f.guards, "on or off; off lifts enumeration limits");
  sub->add_option("--workers", c.workers, "Worker threads (default: hardware concurrency)");
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig c;
  Flags f;
  CLI::App app{"Cut densities, cut norms and graph-limit experiments", kToolName};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML or INI file; one [section] per subcommand");
  app.require_subcommand(1);

  auto* hom = app.add_subcommand("hom", "Homomorphism densities t, t_inj, t_ind");
  hom->add_option("--F", c.simple, "Simple graph JSON")->required();
  hom->add_option("--G", c.graph, "Weighted graph JSON")->required();
  hom->add_option("--kind", c.kind, "t | tinj | tind");

  auto* st = app.add_subcommand("sample-test", "Sampling deviation |f(G) - f(xi(k,G))|");
  st->add_option("--G", c.graph)->required();
  st->add_option("--k", c.k, "Sample size");
  st->add_option("--param", c.param, "f<q>[c|a] or mu<q>[c|a]");
  st->add_option("--c", c.c, "Balance bound for c-parameters");
  st->add_option("--a", c.a, "Volume distribution for a-parameters")->delimiter(',');
  st->add_option("--reps", c.reps);

  auto* cn = app.add_subcommand("cutnorm", "Cut-norm of a stepfunction graphon");
  cn->add_option("--W", c.graphon, "Stepfunction or graph JSON")->required();
  cn->add_flag_callback("--exact", [&] { c.method = "exact"; });
  cn->add_flag_callback("--heuristic", [&] { c.method = "heuristic"; });
  cn->add_option("--method", c.method, "auto | exact | heuristic");
  cn->add_option("--restarts", c.restarts);

  auto* cd = app.add_subcommand("cutdist", "Permutation cut distance (upper bound)");
  cd->add_option("--G1", c.graph)->required();
  cd->add_option("--G2", c.graph2)->required();

  auto* hd = app.add_subcommand("hausdorff", "Hausdorff distance of quotient sets");
  hd->add_option("--G1", c.graph)->required();
  hd->add_option("--G2", c.graph2)->required();
  hd->add_option("--q", c.q);
  hd->add_option("--balance", c.balance, "none | c:<c> | a:<a1,...>");

  auto* de = app.add_subcommand("density", "Minimum (weighted) q-way cut density");
  de->add_option("--G", c.graph)->required();
  de->add_option("--q", c.q);
  de->add_option("--functional", c.functional, "f | mu");
  de->add_option("--balance", c.balance, "none | c:<c> | a:<a1,...>");

  auto* en = app.add_subcommand("energy", "Ground state energy (microcanonical with --a)");
  en->add_option("--G", c.graph)->required();
  en->add_option("--q", c.q);
  en->add_option("--J", c.coupling, "Coupling matrix JSON (default: cut coupling)");
  en->add_option("--h", c.field, "Magnetic field JSON (default: zero)");
  en->add_option("--a", c.a, "Volume distribution")->delimiter(',');

  auto* qp = app.add_subcommand("qp", "Continuous relaxation of the c-balanced cut density");
  qp->add_option("--G", c.graph)->required();
  qp->add_option("--q", c.q);
  qp->add_option("--c", c.c);
  qp->add_option("--starts", c.starts);
  qp->add_option("--max-iters", c.max_iters);
  qp->add_option("--tol", c.tol);
  qp->add_flag("--timing", c.timing, "Include wall time (output is then not reproducible)");

  auto* ns = app.add_subcommand("noise-sweep", "Cut-norm decay of Wigner noise");
  ns->add_option("--pattern", c.pattern, "Pattern JSON (optional; adds d1 to the limit graph)");
  ns->add_option("--ratios", c.ratios)->delimiter(',');
  ns->add_option("--K", c.K);
  ns->add_option("--distribution", c.distribution, "uniform | rademacher | gaussian");
  ns->add_option("--sigma", c.sigma);
  ns->add_option("--ns", c.ns)->delimiter(',')->required();
  ns->add_option("--seeds", c.seeds);
  ns->add_option("--restarts", c.restarts);

  auto* sp = app.add_subcommand("spectral", "Spectral gap and q-variance of noisy blow-ups");
  sp->add_option("--pattern", c.pattern)->required();
  sp->add_option("--ratios", c.ratios)->delimiter(',')->required();
  sp->add_option("--K", c.K);
  sp->add_option("--distribution", c.distribution);
  sp->add_option("--sigma", c.sigma);
  sp->add_option("--ns", c.ns)->delimiter(',')->required();
  sp->add_option("--seeds", c.seeds);
  sp->add_flag("--bernoulli", c.bernoulli, "0/1 entries with block probabilities");

  auto* lg = app.add_subcommand("limit-graph", "Limit factor graph of a noisy sequence");
  lg->add_option("--pattern", c.pattern)->required();
  lg->add_option("--ratios", c.ratios)->delimiter(',')->required();

  for (auto* sub : app.get_subcommands({})) add_common(sub, c, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitInput;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (f.guards != "on" && f.guards != "off") {
    err << "error: --guards must be on or off\n";
    return kExitInput;
  }
  c.guards = f.guards == "on";
  return run(c, out, err);
}

}  // namespace cutlim::cli
