#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "commands.hpp"

namespace {

struct Flags {
  std::optional<std::string> config, space, psi, weight, out, suite, mode;
  std::optional<double> alpha, c, r_max, tol;
  std::optional<std::uint64_t> seed;
  std::vector<double> schedule;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON config file (keys as in the README); flags override it");
  cmd.add_option("--space", f.space, "euclid:d or dr:p,q");
  cmd.add_option("--psi", f.psi, "linear | sqrt | power:gamma | zero | table:FILE");
  cmd.add_option("--weight", f.weight, "constant[:v] | exp:rate | power:e | table:FILE");
  cmd.add_option("--alpha", f.alpha, "center value of the large solution");
  cmd.add_option("--c", f.c, "boundary value for ball and bounded solves");
  cmd.add_option("--r-max", f.r_max, "ball radius (ball mode) or last gluing radius (large mode)");
  cmd.add_option("--tol", f.tol, "absolute tolerance");
  cmd.add_option("--seed", f.seed, "Monte Carlo seed");
  cmd.add_option("--out", f.out, "output directory");
  cmd.add_option("--suite", f.suite, "verify: all, geometry, green, harnack, three-g, ko");
  cmd.add_option("--mode", f.mode, "solve: ball, bounded, large");
  cmd.add_option("--schedule", f.schedule, "radii for bounded/large modes")->delimiter(',');
}

radiant::cli::RunConfig resolve(const std::string& command, const Flags& f) {
  using radiant::cli::RunConfig;
  RunConfig cfg = radiant::cli::defaults_for(command);
  if (f.config) cfg = radiant::cli::load_config_file(cfg, *f.config);
  cfg.command = command;
  if (f.space) cfg.space = *f.space;
  if (f.psi) cfg.psi = *f.psi;
  if (f.weight) cfg.weight = *f.weight;
  if (f.out) cfg.out = *f.out;
  if (f.suite) cfg.suite = *f.suite;
  if (f.mode) cfg.mode = *f.mode;
  if (f.alpha) cfg.alpha = *f.alpha;
  if (f.c) cfg.c = *f.c;
  if (f.r_max) cfg.r_max = *f.r_max;
  if (f.tol) cfg.tol = *f.tol;
  if (f.seed) cfg.seed = *f.seed;
  if (!f.schedule.empty()) cfg.schedule = f.schedule;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial semilinear problems on Euclidean and Damek-Ricci spaces"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<CLI::App*> commands{app.add_subcommand("classify", "bounded/large classification of the criterion"),
                                  app.add_subcommand("solve", "ball, bounded or large solutions"),
                                  app.add_subcommand("verify", "estimate and identity suites")};
  for (auto* cmd : commands) add_flags(*cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string command;
  for (auto* cmd : commands) {
    if (cmd->parsed()) command = cmd->get_name();
  }
  try {
    return radiant::cli::run(resolve(command, flags), std::cout);
  } catch (const std::exception& e) {
    std::cerr << "radiant " << command << ": " << e.what() << "\n";
    return 1;
  }
}
