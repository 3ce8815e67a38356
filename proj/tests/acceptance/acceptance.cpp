// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "radiant/classify.hpp"
#include "radiant/green.hpp"
#include "radiant/harnack.hpp"
#include "radiant/solver.hpp"

using namespace radiant;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("criterion %2d %-34s %s  %s\n", id, title.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

const std::vector<std::pair<int, int>> kDrSpaces{{2, 0}, {2, 1}, {4, 3}, {8, 7}};

Nonlinearity sqrt_with(RadialWeight p) { return Nonlinearity::separable(std::move(p), Psi::sqrt()); }

struct CorpusCase {
  Space space;
  RadialWeight p;
  bool bounded;  // I(p) < inf
};

std::vector<CorpusCase> corpus() {
  std::vector<CorpusCase> out;
  for (const Space& s : {Space::euclidean(3), Space::damek_ricci(2, 1)}) {
    out.push_back({s, RadialWeight::power(-3), true});
    out.push_back({s, RadialWeight::exponential(1), true});
    out.push_back({s, RadialWeight::constant(), false});
    out.push_back({s, RadialWeight::power(-1), false});
  }
  return out;
}

void green_estimates(int id, GreenRegime regime, const RadialGrid& radii, const std::string& title) {
  bool ok = true;
  std::string detail = "max/min:";
  for (auto [p, q] : kDrSpaces) {
    const auto rep = verify_green_estimates(Space::damek_ricci(p, q), regime, radii);
    const bool pass = rep.ratio_min > 0.0 && std::isfinite(rep.ratio_max) && rep.spread() <= 10.0;
    ok = ok && pass;
    detail += " (" + std::to_string(p) + "," + std::to_string(q) + ")=" + fmt(rep.spread());
  }
  report(id, title, ok, detail + " (cap 10)");
}

void closed_form() {
  const Nonlinearity lin = Nonlinearity::separable(RadialWeight::constant(), Psi::linear());
  const std::vector<double> schedule{2.0, 4.0, 6.0};
  const LargeResult large = large_solution(Space::euclidean(3), lin, 1.0, schedule);
  double rel = 0.0;
  for (int k = 0; k <= 500; ++k) {
    const double r = 0.01 * k;
    const double exact = r == 0.0 ? 1.0 : std::sinh(r) / r;
    rel = std::max(rel, std::fabs(large.solution.profile(r) - exact) / exact);
  }
  const LambdaResult l = find_lambda(Space::euclidean(3), lin, 1.0, 1.0);
  const double lerr = std::fabs(l.lambda - std::sinh(1.0));
  report(3, "closed-form linear oracle", rel <= 1e-4 && lerr <= 1e-6,
         "sup rel err vs sinh(r)/r " + fmt(rel, 3) + " (<= 1e-4), |lambda - sinh 1| " + fmt(lerr, 3) + " (<= 1e-6)");
}

void fixed_point() {
  double worst = 0.0;
  int solves = 0;
  for (const auto& c : corpus()) {
    for (double R : {8.0, 32.0, 128.0}) {
      for (double cval : {0.5, 1.0, 4.0}) {
        const Solution s = solve_ball(c.space, sqrt_with(c.p), R, cval);
        worst = std::max(worst, s.residual);
        ++solves;
      }
    }
  }
  double gap = 0.0;
  for (const Space& sp : {Space::euclidean(3), Space::damek_ricci(2, 1), Space::damek_ricci(4, 3)}) {
    for (int shape = 0; shape < 2; ++shape) {
      const double R = 2.0;
      const RadialFunction u_star = RadialFunction::sample(ball_grid(R, {}), [shape](double r) {
        return shape == 0 ? std::cosh(r) : 1.0 + r * r;
      });
      const ManufacturedSource ms = manufacture_source(sp, u_star, Psi::sqrt().fn);
      const auto nl = Nonlinearity::separable(RadialWeight::table(ms.p), Psi::sqrt());
      const Solution picard = solve_ball(sp, nl, R, u_star(R));
      const Solution shoot = solve_shooting(sp, nl, picard.center_value, R);
      worst = std::max(worst, picard.residual);
      ++solves;
      for (double r : shoot.profile.grid().nodes()) gap = std::max(gap, std::fabs(shoot.profile(r) - picard.profile(r)));
    }
  }
  report(4, "fixed-point identity", worst <= 1e-8 && gap <= 1e-6,
         "max residual " + fmt(worst, 3) + " over " + std::to_string(solves) + " ball solves (<= 1e-8), picard vs shooting " +
             fmt(gap, 3) + " (<= 1e-6)");
}

void truth_table() {
  const Tolerance tol{1e-10, 1e-10};
  const std::vector<double> bounded_schedule{8, 16, 32, 64, 128, 256, 512, 1024};
  const std::vector<double> large_schedule{8, 16, 32};
  bool ok = true;
  std::string detail;
  for (const auto& c : corpus()) {
    const Nonlinearity nl = sqrt_with(c.p);
    const std::string verdict = verdict_name(classify(c.space, nl, tol));
    bool nontrivial = false, trivial = false;
    try {
      const BoundedResult b = bounded_solution(c.space, nl, 1.0, bounded_schedule);
      nontrivial = !b.trivial;
      trivial = b.trivial;
    } catch (const Error&) {
    }
    const LargeResult l = large_solution(c.space, nl, 1.0, large_schedule);
    const bool grows = l.growth_factor > 10.0;
    const bool both = nontrivial && grows;
    const std::string solver = both ? "both" : nontrivial ? "bounded" : (trivial || grows) ? "large" : "none";
    const std::string expected = c.bounded ? "bounded" : "large";
    const bool pass = verdict == expected && solver == expected;
    ok = ok && pass;
    detail += " " + c.space.spec() + "/" + c.p.spec + ":" + verdict + "," + solver + (pass ? "" : "(!)");
  }
  report(5, "classification truth table", ok, "classifier,solver per case:" + detail);
}

void z_function() {
  const SolverOptions opt;
  const double allowance = 2.0 * opt.tol.abs;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 50.0);
  const std::vector<std::pair<Space, RadialWeight>> problems{{Space::euclidean(3), RadialWeight::exponential(1)},
                                                             {Space::euclidean(3), RadialWeight::power(-3)},
                                                             {Space::damek_ricci(2, 1), RadialWeight::exponential(1)},
                                                             {Space::damek_ricci(2, 1), RadialWeight::constant()}};
  bool ok = true;
  double worst_mono = 0.0, worst_lip = 0.0;
  int pairs = 0;
  bool zero_exact = true, reaches = true;
  for (const auto& [sp, p] : problems) {
    const Nonlinearity nl = sqrt_with(p);
    std::vector<double> lambdas{0.0};
    for (int k = 0; k < 10; ++k) lambdas.push_back(unif(rng));
    const ZProfile z = z_profile(sp, nl, 4.0, lambdas, opt);
    zero_exact = zero_exact && z.samples[0].second == 0.0;
    for (int k = 1; k + 1 < 11; k += 2) {
      auto [a, za] = z.samples[k];
      auto [b, zb] = z.samples[k + 1];
      if (a > b) {
        std::swap(a, b);
        std::swap(za, zb);
      }
      worst_mono = std::max(worst_mono, za - zb);
      worst_lip = std::max(worst_lip, (zb - za) - (b - a));
      ++pairs;
    }
    const LambdaResult big = find_lambda(sp, nl, 4.0, 1000.0, opt);
    reaches = reaches && big.solution.center_value >= 1000.0 * (1.0 - 1e-9);
  }
  ok = zero_exact && reaches && worst_mono <= allowance && worst_lip <= allowance;
  report(6, "z-function properties", ok,
         std::to_string(pairs) + " pairs, max decrease " + fmt(worst_mono, 3) + ", max excess over lambda-nu " +
             fmt(worst_lip, 3) + " (<= " + fmt(allowance, 2) + "), z(0)=0 " + (zero_exact ? "yes" : "no") +
             ", z reaches 1e3 " + (reaches ? "yes" : "no"));
}

void harnack() {
  const Nonlinearity lin = Nonlinearity::separable(RadialWeight::constant(), Psi::linear());
  const std::vector<double> decades{1.0, 10.0, 100.0, 1000.0};
  const auto e = harnack_scan(Space::euclidean(3), lin, 1.0, {0.0, 0.5}, decades);
  const bool lin_ok = e.C_estimate >= 1.0 && e.C_estimate <= 1.05 && e.stabilized;
  std::string detail = "linear euclid:3 C=" + fmt(e.C_estimate, 6) + " stabilized=" + (e.stabilized ? "true" : "false") +
                       " (last/previous decade " + fmt(e.last_decade_max / e.previous_decade_max, 6) + ")";
  bool ok = lin_ok;
  const std::vector<double> grid = log_grid(1.0, 1000.0, 4);
  for (const RadialWeight& p : {RadialWeight::power(-3), RadialWeight::exponential(1)}) {
    const auto r = harnack_scan(Space::damek_ricci(2, 1), sqrt_with(p), 4.0, {0.0, 2.0}, grid);
    const bool pass = std::isfinite(r.C_estimate) && r.stabilized && r.failed_rows == 0;
    ok = ok && pass;
    detail += "; dr:2,1 sqrt/" + p.spec + " C=" + fmt(r.C_estimate, 6) + " stabilized=" + (r.stabilized ? "true" : "false");
  }
  report(7, "Harnack scan", ok, detail);
}

void three_g() {
  const double x[3] = {0.0, 0.0, 0.0};
  const double y[3] = {0.5, 0.0, 0.0};
  auto one = [](double) { return 1.0; };
  const ThreeGResult a = three_g_ratio(3, 1.0, one, x, y, 42, 100000);
  const ThreeGResult b = three_g_ratio(3, 1.0, one, x, y, 42, 100000);
  const ThreeGResult c = three_g_ratio(3, 1.0, one, x, y, 42, 200000);
  const bool exact = std::memcmp(&a.lhs, &b.lhs, sizeof(double)) == 0 && std::memcmp(&a.ratio, &b.ratio, sizeof(double)) == 0;
  const double shift = std::fabs(c.lhs - a.lhs) / a.std_error;
  const bool ok = std::isfinite(a.ratio) && a.ratio > 0.0 && exact && shift < 3.0;
  report(8, "3-G Monte Carlo", ok,
         "ratio " + fmt(a.ratio) + ", bit-exact rerun " + (exact ? "yes" : "no") + ", doubling shift " + fmt(shift, 3) +
             " standard errors (< 3)");
}

void geometry() {
  double forms = 0.0, fd = 0.0, asym = 0.0;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {4, 3}, {8, 7}, {6, 2}, {3, 5}}) {
    const Space s = Space::damek_ricci(p, q);
    for (double r : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
      const double c = radial_drift(s, r);
      forms = std::max(forms, std::fabs(c - radial_drift_alt(s, r)) / std::max(1.0, std::fabs(c)));
      const double h = 1e-3 * r;
      auto L = [&](double t) { return log_volume_density(s, t); };
      const double d = (L(r - 2 * h) - 8 * L(r - h) + 8 * L(r + h) - L(r + 2 * h)) / (12.0 * h);
      fd = std::max(fd, std::fabs(d - c));
    }
    asym = std::max(asym, std::fabs(std::exp(log_volume_density(s, 40.0) - s.Q() * 40.0) - std::ldexp(1.0, -q)));
  }
  report(9, "geometry identities", forms <= 1e-12 && fd <= 1e-6 && asym <= 1e-6,
         "drift forms " + fmt(forms, 3) + " (<= 1e-12), drift vs d log A " + fmt(fd, 3) + " (<= 1e-6), A e^{-Qr} - 2^{-q} at 40 " +
             fmt(asym, 3) + " (<= 1e-6)");
}

void keller_osserman_checks() {
  const Tolerance tol{1e-10, 1e-10};
  struct Case {
    const char* name;
    ScalarFn psi;
    KoVerdict expected;
  };
  const std::vector<Case> cases{
      {"t", [](double t) { return t; }, KoVerdict::Holds},
      {"sqrt t", [](double t) { return std::sqrt(t); }, KoVerdict::Holds},
      {"t+1", [](double t) { return t + 1.0; }, KoVerdict::Holds},
      {"t^2", [](double t) { return t * t; }, KoVerdict::Fails},
      {"t^3", [](double t) { return t * t * t; }, KoVerdict::Fails},
      // the sublinear psi used in the corpus
      {"corpus sqrt", Psi::sqrt().fn, KoVerdict::Holds},
      {"corpus linear", Psi::linear().fn, KoVerdict::Holds},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const KoVerdict v = keller_osserman(c.psi, tol).verdict;
    ok = ok && v == c.expected;
    detail += std::string(detail.empty() ? "" : ", ") + c.name + "=" + to_string(v);
  }
  report(10, "Keller-Osserman", ok, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  auto guarded = [](int id, const char* title, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, title, false, std::string("error: ") + e.what());
    }
  };
  guarded(1, "Green large-r estimate", [] {
    green_estimates(1, GreenRegime::LargeR, RadialGrid::uniform(1.0, 15.0, 57), "Green large-r estimate");
  });
  guarded(2, "Green small-r estimate", [] {
    green_estimates(2, GreenRegime::SmallR, RadialGrid::uniform(0.01, 1.0, 100), "Green small-r estimate");
  });
  guarded(3, "closed-form linear oracle", closed_form);
  guarded(4, "fixed-point identity", fixed_point);
  guarded(5, "classification truth table", truth_table);
  guarded(6, "z-function properties", z_function);
  guarded(7, "Harnack scan", harnack);
  guarded(8, "3-G Monte Carlo", three_g);
  guarded(9, "geometry identities", geometry);
  guarded(10, "Keller-Osserman", keller_osserman_checks);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 10 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
