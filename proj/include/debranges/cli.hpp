#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "debranges/hermite_biehler.hpp"

namespace debranges::cli {

enum class Command { nodes, kernel, reconstruct, bounds, multiplex, verify };

struct Grid {
  double start = -3.0;
  double stop = 3.0;
  double step = 0.5;
  std::vector<double> points() const;
};

/// Parses "a:b:step". Throws InputError.
Grid parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::verify;
  std::string hb_path;
  std::string hb2_path;
  std::string preset;  // "pw", "nonpw", or empty
  double alpha = 0.0;  // normalized into [0, pi)
  long n_lo = -10;
  long n_hi = 10;
  Grid grid;
  bool normalize = false;
  double sigma = 0.0;
  double drop = 0.0;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string out_path;  // empty = stdout
  std::string samples_path;
  std::string ref_path;
  std::string ref_g_path;
  std::string stream_out_path;
  cplx center{0.0, 0.0};
  std::vector<double> probes;
  std::map<std::string, double> tolerances;

  double tol(const std::string& name) const;
};

/// Defaults for every --tol-<name> flag.
const std::map<std::string, double>& default_tolerances();

/// Moves alpha into [0, pi) and shifts the index window so that every requested
/// target n pi + alpha is unchanged.
void normalize_alpha(RunConfig& cfg);

/// Parses argv (argv[0] is the program name). Throws InputError on bad arguments;
/// returns nullopt after printing help.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes a configuration. Returns 0 on success, 1 for bad input, 2 for a
/// numerical failure. Diagnostics go to `err`; artifacts go to cfg.out_path or `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with the same exit-code contract.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace debranges::cli
