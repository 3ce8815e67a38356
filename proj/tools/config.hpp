#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radiant/nonlinearity.hpp"
#include "radiant/serialize.hpp"
#include "radiant/solver.hpp"

namespace radiant::cli {

// Keys of the JSON config file are the field names below; command-line flags
// override them.
struct RunConfig {
  std::string command = "classify";
  std::string space = "euclid:3";
  std::string psi = "sqrt";
  std::string weight = "constant";
  bool h1prime = false;           // demand the sublinear flag (power psi needs gamma <= 1)
  double alpha = 1.0;
  double c = 1.0;
  double r_max = 5.0;             // ball radius (ball mode), last gluing radius (large mode)
  double tol = 1e-10;
  std::uint64_t seed = 42;
  std::string out = "radiant-out";
  std::string suite = "all";      // verify: all, geometry, green, harnack, three-g, ko
  std::string mode = "ball";      // solve: ball, bounded, large
  std::vector<double> schedule;   // empty: mode default
  double spacing = 0.01;
  int max_nodes = 6401;
  double stab_rel = 1e-2;
  double green_cap = 10.0;
  int samples = 100000;

  bool operator==(const RunConfig&) const = default;
};

/// Defaults differ per command (verify runs on dr:2,1).
RunConfig defaults_for(const std::string& command);

/// Applies a JSON object on top of `base`; unknown keys and wrong types are
/// ConfigError naming the field.
RunConfig apply_json(RunConfig base, const Json& j);
RunConfig load_config_file(RunConfig base, const std::string& path);

Json to_json(const RunConfig& cfg);

/// Validates the config and builds the objects it names.
Space make_space(const RunConfig& cfg);
Nonlinearity make_nonlinearity(const RunConfig& cfg);
SolverOptions make_solver_options(const RunConfig& cfg);
Tolerance make_tolerance(const RunConfig& cfg);
std::vector<double> make_schedule(const RunConfig& cfg);
void validate(const RunConfig& cfg);

}  // namespace radiant::cli
