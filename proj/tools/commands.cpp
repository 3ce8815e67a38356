#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <ostream>

#include "radiant/classify.hpp"
#include "radiant/green.hpp"
#include "radiant/harnack.hpp"

namespace radiant::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
  out << text;
}

void write_report(const RunConfig& cfg, const Json& results, const std::string& status, int exit_code,
                  Clock::time_point start) {
  fs::create_directories(cfg.out);
  Json report{{"schema_version", kSchemaVersion},
              {"artifact_version", kArtifactVersion},
              {"command", cfg.command},
              {"config", to_json(cfg)},
              {"status", status},
              {"exit_code", exit_code},
              {"results", results}};
  write_text(fs::path(cfg.out) / "report.json", report.dump(2) + "\n");
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  write_text(fs::path(cfg.out) / "timing.json", Json{{"wall_seconds", seconds}}.dump(2) + "\n");
}

std::string csv_number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void write_profile_csv(const RunConfig& cfg, const RadialFunction& f) {
  fs::create_directories(cfg.out);
  std::string text = "r,u\n";
  const auto r = f.grid().nodes();
  const auto u = f.values();
  for (std::size_t i = 0; i < r.size(); ++i) text += csv_number(r[i]) + "," + csv_number(u[i]) + "\n";
  write_text(fs::path(cfg.out) / "profile.csv", text);
}

void write_harnack_csv(const RunConfig& cfg, const HarnackReport& rep) {
  fs::create_directories(cfg.out);
  std::string text = "lambda,sup,inf,ratio\n";
  for (const auto& row : rep.rows) {
    if (row.failed) continue;
    text += csv_number(row.lambda) + "," + csv_number(row.sup) + "," + csv_number(row.inf) + "," +
            csv_number(row.ratio) + "\n";
  }
  write_text(fs::path(cfg.out) / "harnack.csv", text);
}

Json flags_json(const HypothesisFlags& f) {
  return {{"h1", f.h1_kato_local},
          {"h2", f.h2_increasing},
          {"h3", f.h3_zero_for_nonpositive},
          {"h4", f.h4_concave},
          {"h1prime", f.h1prime.holds}};
}

ScalarFn psi_fn(const Nonlinearity& nl) {
  return [nl](double t) { return nl(0.0, t) / nl.weight(0.0); };
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& log) {
  const auto start = Clock::now();
  const Space space = make_space(cfg);
  const Nonlinearity nl = make_nonlinearity(cfg);
  const Tolerance tol = make_tolerance(cfg);

  const Classification verdict = classify(space, nl, tol);
  Json results{{"space", to_json(space)}, {"nonlinearity", nl.spec()}, {"flags", flags_json(nl.flags())}};
  results["classification"] = to_json(verdict);
  if (nl.is_separable() && nl.flags().h1prime.holds) {
    results["criterion"] = {{"integral", "I(p)"}, {"result", to_json(p_integral(space, nl.as_separable().p, tol))}};
  } else {
    results["criterion"] = {{"integral", "I(phi, c=1)"}, {"result", to_json(i_integral(space, nl, 1.0, tol))}};
  }
  const std::vector<double> r_samples{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  const std::vector<double> t_samples{-1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  results["hypotheses"] = to_json(check_hypotheses(nl, r_samples, t_samples));
  if (nl.is_separable() && nl.weight(0.0) > 0.0) results["keller_osserman"] = to_json(keller_osserman(psi_fn(nl), tol));

  const bool conclusive = !std::holds_alternative<Inconclusive>(verdict);
  const int code = conclusive ? 0 : 2;
  write_report(cfg, results, conclusive ? "ok" : "inconclusive", code, start);
  log << "classification: " << verdict_name(verdict) << "\n";
  return code;
}

// ---------------------------------------------------------------------------

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const auto start = Clock::now();
  const Space space = make_space(cfg);
  const Nonlinearity nl = make_nonlinearity(cfg);
  const SolverOptions opt = make_solver_options(cfg);
  const std::vector<double> schedule = make_schedule(cfg);
  Json results{{"space", to_json(space)}, {"nonlinearity", nl.spec()}, {"mode", cfg.mode}, {"schedule", schedule}};

  try {
    if (cfg.mode == "ball") {
      const Solution sol = solve_ball(space, nl, schedule.back(), cfg.c, opt);
      results["solution"] = to_json(sol);
      write_profile_csv(cfg, sol.profile);
      write_report(cfg, results, "ok", 0, start);
      log << "ball R=" << schedule.back() << " u(0)=" << sol.center_value << " residual=" << sol.residual
          << " iterations=" << sol.iterations << "\n";
      return 0;
    }
    if (cfg.mode == "bounded") {
      StabilizationOptions stab;
      stab.rel = cfg.stab_rel;
      BoundedResult res;
      try {
        res = bounded_solution(space, nl, cfg.c, schedule, opt, stab);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotStabilized) throw;
        results["error"] = {{"stage", "bounded: stabilisation"}, {"message", e.what()}};
        write_report(cfg, results, "inconclusive", 2, start);
        log << e.what() << "\n";
        return 2;
      }
      results["bounded"] = to_json(res);
      if (res.trivial) {
        write_report(cfg, results, "trivial", 2, start);
        log << "bounded: limit collapses to the zero solution (trivial) by R=" << res.radii.back() << "\n";
        return 2;
      }
      write_profile_csv(cfg, res.solution->profile);
      write_report(cfg, results, "ok", 0, start);
      log << "bounded: u(0)=" << res.solution->center_value << " at R=" << res.radii.back()
          << " residual=" << res.solution->residual << "\n";
      return 0;
    }
    const LargeResult res = large_solution(space, nl, cfg.alpha, schedule, opt);
    results["large"] = to_json(res);
    write_profile_csv(cfg, res.solution.profile);
    write_report(cfg, results, "ok", 0, start);
    log << "large: growth factor u(r_max)/u(0) = " << res.growth_factor << " at r_max=" << schedule.back()
        << " residual=" << res.solution.residual << "\n";
    return 0;
  } catch (const Error& e) {
    results["error"] = {{"stage", cfg.mode}, {"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    write_report(cfg, results, "error", 1, start);
    log << cfg.mode << " solve failed: " << e.what() << "\n";
    return 1;
  }
}

// ---------------------------------------------------------------------------

namespace {

struct SuiteResult {
  bool passed = true;
  Json detail = Json::object();
};

SuiteResult suite_geometry(const RunConfig& cfg) {
  SuiteResult s;
  std::vector<Space> spaces{Space::damek_ricci(2, 0), Space::damek_ricci(2, 1), Space::damek_ricci(4, 3),
                            Space::damek_ricci(8, 7)};
  const Space own = make_space(cfg);
  if (own.is_damek_ricci() && std::find(spaces.begin(), spaces.end(), own) == spaces.end()) spaces.push_back(own);
  const std::vector<double> radii{0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0};
  Json rows = Json::array();
  for (const Space& sp : spaces) {
    double drift_gap = 0.0;
    double fd_gap = 0.0;
    for (double r : radii) {
      const double c1 = radial_drift(sp, r);
      drift_gap = std::max(drift_gap, std::fabs(c1 - radial_drift_alt(sp, r)) / (1.0 + std::fabs(c1)));
      const double h = 1e-3 * r;
      auto L = [&](double x) { return log_volume_density(sp, x); };
      const double fd = (L(r - 2 * h) - 8 * L(r - h) + 8 * L(r + h) - L(r + 2 * h)) / (12.0 * h);
      fd_gap = std::max(fd_gap, std::fabs(fd - c1));
    }
    const double limit = std::ldexp(1.0, -sp.dr().q);
    const double asym = std::exp(log_volume_density(sp, 40.0) - sp.Q() * 40.0);
    const double asym_gap = std::fabs(asym - limit);
    const bool ok = drift_gap <= 1e-12 && fd_gap <= 1e-6 && asym_gap <= 1e-6;
    s.passed = s.passed && ok;
    rows.push_back({{"space", sp.spec()},
                    {"drift_forms_gap", drift_gap},
                    {"drift_vs_log_derivative", fd_gap},
                    {"density_ratio_at_40", asym},
                    {"density_ratio_limit", limit},
                    {"passed", ok}});
  }
  s.detail = {{"spaces", rows}};
  return s;
}

SuiteResult suite_green(const RunConfig& cfg) {
  SuiteResult s;
  std::vector<Space> spaces{Space::damek_ricci(2, 0), Space::damek_ricci(2, 1), Space::damek_ricci(4, 3),
                            Space::damek_ricci(8, 7)};
  const Space own = make_space(cfg);
  if (std::find(spaces.begin(), spaces.end(), own) == spaces.end()) spaces.push_back(own);
  Json rows = Json::array();
  for (const Space& sp : spaces) {
    Json row{{"space", sp.spec()}, {"cap", cfg.green_cap}};
    try {
      const auto large = verify_green_estimates(sp, GreenRegime::LargeR, RadialGrid::uniform(1.0, 15.0, 57));
      const auto small = verify_green_estimates(sp, GreenRegime::SmallR, RadialGrid::uniform(0.01, 1.0, 100));
      const bool ok = large.spread() <= cfg.green_cap && small.spread() <= cfg.green_cap;
      row["large_r"] = to_json(large);
      row["small_r"] = to_json(small);
      row["passed"] = ok;
      s.passed = s.passed && ok;
    } catch (const Error& e) {
      row["error"] = e.what();
      row["passed"] = false;
      s.passed = false;
    }
    rows.push_back(row);
  }
  s.detail = {{"spaces", rows}};
  return s;
}

SuiteResult suite_harnack(const RunConfig& cfg) {
  SuiteResult s;
  struct Family {
    Space space;
    Nonlinearity nl;
    double R;
    Compact k;
    std::vector<double> lambdas;
  };
  const std::vector<double> decades{1.0, 10.0, 100.0, 1000.0};
  const std::vector<double> dense = log_grid(1.0, 1000.0, 4);
  std::vector<Family> families{
      {Space::euclidean(3), Nonlinearity::separable(RadialWeight::constant(), Psi::linear()), 1.0, {0.0, 0.5},
       decades},
      {Space::damek_ricci(2, 1), Nonlinearity::separable(RadialWeight::power(-3.0), Psi::sqrt()), 4.0, {0.0, 2.0},
       dense},
      {Space::damek_ricci(2, 1), Nonlinearity::separable(RadialWeight::exponential(1.0), Psi::sqrt()), 4.0,
       {0.0, 2.0}, dense},
  };
  const Nonlinearity own = make_nonlinearity(cfg);
  const Space own_space = make_space(cfg);
  const bool own_listed = std::any_of(families.begin(), families.end(), [&](const Family& f) {
    return f.space == own_space && f.nl.spec() == own.spec();
  });
  std::optional<std::size_t> own_index;
  if (!own_listed && own.flags().h1prime.holds) {
    own_index = families.size();
    families.push_back({own_space, own, 4.0, {0.0, 2.0}, dense});
  }
  const SolverOptions opt = make_solver_options(cfg);
  Json rows = Json::array();
  for (std::size_t k = 0; k < families.size(); ++k) {
    const Family& f = families[k];
    const HarnackReport rep = harnack_scan(f.space, f.nl, f.R, f.k, f.lambdas, opt);
    const bool ok = std::isfinite(rep.C_estimate) && rep.stabilized && rep.failed_rows == 0;
    s.passed = s.passed && ok;
    Json j = to_json(rep);
    j["passed"] = ok;
    rows.push_back(j);
    if (own_index ? k == *own_index : k == families.size() - 1) write_harnack_csv(cfg, rep);
  }
  s.detail = {{"families", rows}};
  return s;
}

SuiteResult suite_three_g(const RunConfig& cfg) {
  SuiteResult s;
  const std::vector<double> x{0.0, 0.0, 0.0};
  const std::vector<double> y{0.5, 0.0, 0.0};
  auto one = [](double) { return 1.0; };
  const ThreeGResult a = three_g_ratio(3, 1.0, one, x, y, cfg.seed, cfg.samples);
  const ThreeGResult again = three_g_ratio(3, 1.0, one, x, y, cfg.seed, cfg.samples);
  const ThreeGResult twice = three_g_ratio(3, 1.0, one, x, y, cfg.seed, 2 * cfg.samples);
  const bool exact = std::memcmp(&a.lhs, &again.lhs, sizeof(double)) == 0;
  const double shift = std::fabs(twice.lhs - a.lhs);
  const bool stable = shift < 3.0 * a.std_error;
  const bool finite = std::isfinite(a.ratio) && a.ratio > 0.0;
  s.passed = exact && stable && finite;
  s.detail = {{"d", 3},
              {"R", 1.0},
              {"density", "constant 1"},
              {"seed", cfg.seed},
              {"run", to_json(a)},
              {"doubled", to_json(twice)},
              {"bit_exact_rerun", exact},
              {"doubling_shift", shift},
              {"doubling_shift_in_std_errors", a.std_error > 0.0 ? shift / a.std_error : 0.0},
              {"finite_ratio", finite}};
  return s;
}

SuiteResult suite_ko(const RunConfig& cfg) {
  SuiteResult s;
  const Tolerance tol{1e-10, 1e-10, 2000, 200};
  struct Case {
    std::string name;
    ScalarFn psi;
    KoVerdict expected;
  };
  std::vector<Case> cases{
      {"t", [](double t) { return t; }, KoVerdict::Holds},
      {"sqrt(t)", [](double t) { return std::sqrt(t); }, KoVerdict::Holds},
      {"t+1", [](double t) { return t + 1.0; }, KoVerdict::Holds},
      {"t^2", [](double t) { return t * t; }, KoVerdict::Fails},
      {"t^3", [](double t) { return t * t * t; }, KoVerdict::Fails},
  };
  const Nonlinearity own = make_nonlinearity(cfg);
  if (own.flags().h1prime.holds && own.weight(0.0) > 0.0) {
    cases.push_back({"configured psi " + cfg.psi, psi_fn(own), KoVerdict::Holds});
  }
  Json rows = Json::array();
  for (const auto& c : cases) {
    const KoResult r = keller_osserman(c.psi, tol);
    const bool ok = r.verdict == c.expected;
    s.passed = s.passed && ok;
    Json j = to_json(r);
    j["psi"] = c.name;
    j["expected"] = to_string(c.expected);
    j["passed"] = ok;
    rows.push_back(j);
  }
  s.detail = {{"cases", rows}};
  return s;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const auto start = Clock::now();
  using Runner = SuiteResult (*)(const RunConfig&);
  const std::vector<std::pair<std::string, Runner>> suites{{"geometry", suite_geometry},
                                                           {"green", suite_green},
                                                           {"harnack", suite_harnack},
                                                           {"three-g", suite_three_g},
                                                           {"ko", suite_ko}};
  Json results = Json::object();
  bool all = true;
  for (const auto& [name, runner] : suites) {
    if (cfg.suite != "all" && cfg.suite != name) continue;
    SuiteResult r;
    try {
      r = runner(cfg);
    } catch (const Error& e) {
      r.passed = false;
      r.detail = {{"error", e.what()}};
    }
    all = all && r.passed;
    Json j{{"passed", r.passed}};
    j.update(r.detail);
    results[name] = j;
    log << name << ": " << (r.passed ? "pass" : "FAIL") << "\n";
  }
  const int code = all ? 0 : 1;
  write_report(cfg, Json{{"passed", all}, {"suites", results}}, all ? "ok" : "failed", code, start);
  return code;
}

int run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (cfg.command == "classify") return cmd_classify(cfg, log);
  if (cfg.command == "solve") return cmd_solve(cfg, log);
  return cmd_verify(cfg, log);
}

}  // namespace radiant::cli
