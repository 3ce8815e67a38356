#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace radiant::cli {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ConfigError, "config field '" + field + "': " + what);
}

double get_number(const Json& v, const std::string& key) {
  if (!v.is_number()) bad(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(key, "not finite");
  return x;
}

std::string get_string(const Json& v, const std::string& key) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

// Two-column CSV with a header line: x,value.
RadialFunction read_table(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) bad(field, "cannot open table file " + path);
  std::string line;
  std::getline(in, line);
  std::vector<double> xs, ys;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b)) {
      bad(field, path + ":" + std::to_string(lineno) + ": expected two comma-separated columns");
    }
    try {
      xs.push_back(std::stod(a));
      ys.push_back(std::stod(b));
    } catch (const std::exception&) {
      bad(field, path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  if (xs.size() < 4) bad(field, path + ": a table needs at least four rows");
  try {
    return RadialFunction(RadialGrid(std::move(xs)), std::move(ys), Interpolation::MonotoneCubic);
  } catch (const Error& e) {
    bad(field, path + ": " + e.what());
  }
}

}  // namespace

RunConfig defaults_for(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  if (command == "verify") cfg.space = "dr:2,1";
  return cfg;
}

RunConfig apply_json(RunConfig cfg, const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "command") {
      cfg.command = get_string(v, key);
    } else if (key == "space") {
      cfg.space = get_string(v, key);
    } else if (key == "psi") {
      cfg.psi = get_string(v, key);
    } else if (key == "weight") {
      cfg.weight = get_string(v, key);
    } else if (key == "h1prime") {
      if (!v.is_boolean()) bad(key, "expected true or false");
      cfg.h1prime = v.get<bool>();
    } else if (key == "alpha") {
      cfg.alpha = get_number(v, key);
    } else if (key == "c") {
      cfg.c = get_number(v, key);
    } else if (key == "r_max") {
      cfg.r_max = get_number(v, key);
    } else if (key == "tol") {
      cfg.tol = get_number(v, key);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) bad(key, "expected a nonnegative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "out") {
      cfg.out = get_string(v, key);
    } else if (key == "suite") {
      cfg.suite = get_string(v, key);
    } else if (key == "mode") {
      cfg.mode = get_string(v, key);
    } else if (key == "schedule") {
      if (!v.is_array()) bad(key, "expected an array of radii");
      cfg.schedule.clear();
      for (const auto& r : v) cfg.schedule.push_back(get_number(r, key));
    } else if (key == "spacing") {
      cfg.spacing = get_number(v, key);
    } else if (key == "max_nodes") {
      if (!v.is_number_integer()) bad(key, "expected an integer");
      cfg.max_nodes = v.get<int>();
    } else if (key == "stab_rel") {
      cfg.stab_rel = get_number(v, key);
    } else if (key == "green_cap") {
      cfg.green_cap = get_number(v, key);
    } else if (key == "samples") {
      if (!v.is_number_integer()) bad(key, "expected an integer");
      cfg.samples = v.get<int>();
    } else {
      bad(key, "unknown key");
    }
  }
  return cfg;
}

RunConfig load_config_file(RunConfig base, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, path + ": " + e.what());
  }
  return apply_json(std::move(base), j);
}

Json to_json(const RunConfig& cfg) {
  return {{"command", cfg.command},     {"space", cfg.space},         {"psi", cfg.psi},
          {"weight", cfg.weight},       {"h1prime", cfg.h1prime},     {"alpha", cfg.alpha},
          {"c", cfg.c},                 {"r_max", cfg.r_max},         {"tol", cfg.tol},
          {"seed", cfg.seed},           {"out", cfg.out},             {"suite", cfg.suite},
          {"mode", cfg.mode},           {"schedule", cfg.schedule},   {"spacing", cfg.spacing},
          {"max_nodes", cfg.max_nodes}, {"stab_rel", cfg.stab_rel},   {"green_cap", cfg.green_cap},
          {"samples", cfg.samples}};
}

Space make_space(const RunConfig& cfg) { return Space::parse(cfg.space); }

Nonlinearity make_nonlinearity(const RunConfig& cfg) {
  const auto table_path = [](const std::string& spec) -> std::optional<std::string> {
    if (spec.rfind("table:", 0) == 0) return spec.substr(6);
    return std::nullopt;
  };
  RadialWeight p = [&] {
    if (auto path = table_path(cfg.weight)) return RadialWeight::table(read_table(*path, "weight"));
    return RadialWeight::parse(cfg.weight);
  }();
  Psi psi = [&] {
    if (auto path = table_path(cfg.psi)) return Psi::table(read_table(*path, "psi"));
    return Psi::parse(cfg.psi);
  }();
  if (cfg.h1prime && !(psi.gamma && *psi.gamma <= 1.0)) {
    bad("psi", "h1prime requires linear, sqrt or power:gamma with gamma <= 1 (got " + cfg.psi + ")");
  }
  return Nonlinearity::separable(std::move(p), std::move(psi));
}

SolverOptions make_solver_options(const RunConfig& cfg) {
  SolverOptions opt;
  opt.tol.abs = cfg.tol;
  opt.spacing = cfg.spacing;
  opt.max_nodes = cfg.max_nodes;
  return opt;
}

Tolerance make_tolerance(const RunConfig& cfg) { return Tolerance{cfg.tol, cfg.tol, 2000, 200}; }

std::vector<double> make_schedule(const RunConfig& cfg) {
  if (!cfg.schedule.empty()) return cfg.schedule;
  if (cfg.mode == "bounded") return {8, 16, 32, 64, 128, 256, 512, 1024};
  if (cfg.mode == "large") return {cfg.r_max / 4, cfg.r_max / 2, cfg.r_max};
  return {cfg.r_max};
}

void validate(const RunConfig& cfg) {
  if (cfg.command != "classify" && cfg.command != "solve" && cfg.command != "verify") {
    bad("command", "must be classify, solve or verify");
  }
  make_space(cfg);
  make_nonlinearity(cfg);
  if (!(cfg.tol > 0.0)) bad("tol", "must be positive");
  if (!(cfg.alpha > 0.0)) bad("alpha", "must be positive");
  if (!(cfg.c >= 0.0)) bad("c", "must be nonnegative");
  if (!(cfg.r_max > 0.0)) bad("r_max", "must be positive");
  if (!(cfg.spacing > 0.0)) bad("spacing", "must be positive");
  if (cfg.max_nodes < 8) bad("max_nodes", "must be at least 8");
  if (!(cfg.stab_rel >= 0.0)) bad("stab_rel", "must be nonnegative");
  if (!(cfg.green_cap > 0.0)) bad("green_cap", "must be positive");
  if (cfg.samples < 2) bad("samples", "must be at least 2");
  if (cfg.mode != "ball" && cfg.mode != "bounded" && cfg.mode != "large") bad("mode", "must be ball, bounded or large");
  static const char* suites[] = {"all", "geometry", "green", "harnack", "three-g", "ko"};
  if (std::find(std::begin(suites), std::end(suites), cfg.suite) == std::end(suites)) {
    bad("suite", "must be all, geometry, green, harnack, three-g or ko");
  }
  for (std::size_t k = 0; k < cfg.schedule.size(); ++k) {
    if (!(cfg.schedule[k] > 0.0) || (k > 0 && !(cfg.schedule[k] > cfg.schedule[k - 1]))) {
      bad("schedule", "radii must be positive and increasing");
    }
  }
}

}  // namespace radiant::cli
