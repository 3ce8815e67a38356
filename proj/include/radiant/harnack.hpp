#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "radiant/geometry.hpp"
#include "radiant/nonlinearity.hpp"
#include "radiant/solver.hpp"

namespace radiant {

struct Compact {
  double r_lo = 0.0;
  double r_hi = 0.0;
};

struct HarnackRow {
  double lambda = 0.0;
  double sup = 0.0;
  double inf = 0.0;
  double ratio = 0.0;          // sup / (1 + inf)
  bool monotone = true;        // sup sits at r_hi and inf at r_lo
  bool failed = false;
  std::string error;
};

struct HarnackReport {
  Space space;
  std::string nl;
  double ball_R = 0.0;
  Compact compact;
  std::vector<double> lambda_grid;
  std::vector<HarnackRow> rows;
  double C_estimate = 0.0;     // max ratio over rows that did not fail
  bool stabilized = false;
  double last_decade_max = 0.0;
  double previous_decade_max = 0.0;
  int failed_rows = 0;
};

/// Ball solutions with boundary value lambda, sup/(1+inf) on r_lo <= r <= r_hi.
/// Stabilized: the max ratio over (lambda_max/10, lambda_max] is below 1.01
/// times the max over (lambda_max/100, lambda_max/10].
HarnackReport harnack_scan(const Space& space, const Nonlinearity& nl, double ball_R, Compact compact,
                           std::span<const double> lambda_grid, const SolverOptions& opt = {});

/// n points per decade from lo to hi (both included).
std::vector<double> log_grid(double lo, double hi, int per_decade);

struct ThreeGResult {
  double lhs = 0.0;
  double std_error = 0.0;
  double rhs_factor = 0.0;   // G_B(x,y) * gamma
  double gamma = 0.0;        // sup over the ball of the Newtonian potential of the density
  double ratio = 0.0;        // lhs / rhs_factor
  int samples = 0;
  int collisions = 0;        // draws that hit x or y and were redrawn
};

/// int_B G_B(x,z) G_B(z,y) density(|z|) dz by Monte Carlo stratified in
/// equal-volume shells, against G_B(x,y) times the potential bound gamma.
ThreeGResult three_g_ratio(int d, double R, const ScalarFn& density, std::span<const double> x,
                           std::span<const double> y, std::uint64_t seed, int n_samples);

/// sup over 0 <= rho <= R of (1/(d-2)) int_0^R density(s) s^{d-1} max(rho,s)^{2-d} ds.
double newtonian_potential_sup(int d, double R, const ScalarFn& density, int grid_points = 201);

}  // namespace radiant
