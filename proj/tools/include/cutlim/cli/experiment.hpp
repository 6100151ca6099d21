#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cutlim::cli {

inline constexpr const char* kToolName = "cutlim";

/// Everything a subcommand needs. Fields not used by `command` are ignored
/// and left out of the config echo.
struct ExperimentConfig {
  std::string command;

  // Input files.
  std::string graph;     // --G, --G1
  std::string graph2;    // --G2
  std::string simple;    // --F
  std::string graphon;   // --W
  std::string coupling;  // --J
  std::string field;     // --h
  std::string pattern;   // --pattern

  // Parameters.
  std::string kind = "t";
  int k = 2;
  int q = 2;
  std::string functional = "f";
  std::string balance = "none";
  double c = 0.0;
  std::vector<double> a;
  std::string param = "f2c";
  int reps = 100;
  std::string method = "auto";
  int restarts = 32;
  int starts = 16;
  int max_iters = 5000;
  double tol = 1e-7;
  double K = 0.0;
  std::string distribution = "uniform";
  double sigma = 0.0;
  std::vector<double> ratios;
  std::vector<std::size_t> ns;
  int seeds = 20;
  bool bernoulli = false;

  // Run control.
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  bool guards = true;
  unsigned workers = 0;
  bool timing = false;

  /// The fields relevant to `command`, as written to every output.
  nlohmann::json echo() const;
};

struct Diagnostic {
  enum class Kind { Input, Infeasible };
  Kind kind = Kind::Input;
  std::string message;
};

/// Every violated requirement of `config`, input files included.
std::vector<Diagnostic> validate(const ExperimentConfig& config);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInfeasible = 4;

/// Validates and runs `config`. The artifact goes to config.output if set,
/// otherwise to `out`; diagnostics go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line (flags > --config file > CUTLIM_SEED > defaults)
/// and runs the selected subcommand.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Fixed-format number for CSV: shortest of 17 significant digits, '.' decimal.
std::string format_number(double x);

}  // namespace cutlim::cli
