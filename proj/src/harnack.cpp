#include "radiant/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "radiant/green.hpp"

namespace radiant {

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) throw Error(ErrorKind::DomainError, "log_grid needs 0 < lo < hi");
  const double decades = std::log10(hi / lo);
  const int steps = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> out(steps + 1);
  for (int k = 0; k <= steps; ++k) out[k] = lo * std::pow(10.0, decades * k / steps);
  out.front() = lo;
  out.back() = hi;
  return out;
}

HarnackReport harnack_scan(const Space& space, const Nonlinearity& nl, double ball_R, Compact compact,
                           std::span<const double> lambda_grid, const SolverOptions& opt) {
  if (!nl.flags().h1prime.holds) {
    throw Error(ErrorKind::HypothesisViolation, "Harnack scan needs the sublinear flag (phi <= p (t+1))");
  }
  if (!(compact.r_lo >= 0.0) || !(compact.r_hi > compact.r_lo) || !(ball_R > compact.r_hi)) {
    throw Error(ErrorKind::DomainError, "Harnack scan needs 0 <= r_lo < r_hi < R");
  }
  if (lambda_grid.empty()) throw Error(ErrorKind::DomainError, "empty lambda grid");
  for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
    if (!(lambda_grid[k] > 0.0) || (k > 0 && !(lambda_grid[k] > lambda_grid[k - 1]))) {
      throw Error(ErrorKind::DomainError, "lambda grid must be positive and increasing");
    }
  }

  HarnackReport rep{space, nl.spec(), ball_R, compact, {lambda_grid.begin(), lambda_grid.end()}, {}, 0.0, false,
                    0.0, 0.0, 0};
  const BallGreenOperator op(space, ball_R, ball_grid(ball_R, opt));
  const auto x = op.grid().nodes();

  for (double lambda : lambda_grid) {
    HarnackRow row;
    row.lambda = lambda;
    try {
      const Solution sol = solve_ball(op, nl, lambda, opt);
      const auto u = sol.profile.values();
      const double at_lo = sol.profile(compact.r_lo);
      const double at_hi = sol.profile(compact.r_hi);
      row.sup = std::max(at_lo, at_hi);
      row.inf = std::min(at_lo, at_hi);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < compact.r_lo || x[i] > compact.r_hi) continue;
        row.sup = std::max(row.sup, u[i]);
        row.inf = std::min(row.inf, u[i]);
      }
      row.monotone = row.sup == at_hi && row.inf == at_lo;
      row.ratio = row.sup / (1.0 + row.inf);
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.what();
      ++rep.failed_rows;
    }
    rep.rows.push_back(row);
  }

  double top = 0.0;
  for (const auto& row : rep.rows) {
    if (row.failed) continue;
    rep.C_estimate = std::max(rep.C_estimate, row.ratio);
    top = std::max(top, row.lambda);
  }
  bool last_seen = false;
  bool previous_seen = false;
  for (const auto& row : rep.rows) {
    if (row.failed) continue;
    if (row.lambda > top / 10.0) {
      rep.last_decade_max = last_seen ? std::max(rep.last_decade_max, row.ratio) : row.ratio;
      last_seen = true;
    } else if (row.lambda > top / 100.0) {
      rep.previous_decade_max = previous_seen ? std::max(rep.previous_decade_max, row.ratio) : row.ratio;
      previous_seen = true;
    }
  }
  rep.stabilized = last_seen && previous_seen && rep.last_decade_max < 1.01 * rep.previous_decade_max;
  return rep;
}

// ---------------------------------------------------------------------------

double newtonian_potential_sup(int d, double R, const ScalarFn& density, int grid_points) {
  if (d < 3 || !(R > 0.0) || grid_points < 2) throw Error(ErrorKind::DomainError, "potential needs d >= 3, R > 0");
  const Tolerance tol{1e-13, 1e-11, 2000, 200};
  const double e = 2.0 - d;
  double best = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double rho = R * k / (grid_points - 1);
    double inner = 0.0;
    if (rho > 0.0) {
      inner = std::pow(rho, e) *
              integrate_adaptive([&](double s) { return density(s) * std::pow(s, d - 1); }, 0.0, rho, tol).value;
    }
    double outer = 0.0;
    if (rho < R) outer = integrate_adaptive([&](double s) { return density(s) * s; }, rho, R, tol).value;
    best = std::max(best, (inner + outer) / (d - 2));
  }
  return best;
}

ThreeGResult three_g_ratio(int d, double R, const ScalarFn& density, std::span<const double> x,
                           std::span<const double> y, std::uint64_t seed, int n_samples) {
  if (n_samples < 2) throw Error(ErrorKind::DomainError, "three_g_ratio needs at least two samples");
  const double g_xy = euclid_ball_green(d, R, x, y);

  ThreeGResult res;
  res.samples = n_samples;
  std::mt19937_64 gen(seed);
  // Own uniform and Box-Muller draws: the standard distributions are not
  // bit-identical across library implementations.
  auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  auto normal = [&] {
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };

  const int strata = std::min(100, n_samples / 2);
  const double volume = sphere_area(d) * std::pow(R, d) / d;
  std::vector<double> z(d);
  double lhs = 0.0;
  double variance = 0.0;
  for (int k = 0; k < strata; ++k) {
    const int count = n_samples / strata + (k < n_samples % strata ? 1 : 0);
    double sum = 0.0;
    double sum2 = 0.0;
    for (int m = 0; m < count; ++m) {
      double value = 0.0;
      for (;;) {
        const double s = R * std::pow((k + uniform()) / strata, 1.0 / d);
        double norm2 = 0.0;
        for (int i = 0; i < d; ++i) {
          z[i] = normal();
          norm2 += z[i] * z[i];
        }
        if (norm2 == 0.0) continue;
        const double scale = s / std::sqrt(norm2);
        double dx = 0.0;
        double dy = 0.0;
        for (int i = 0; i < d; ++i) {
          z[i] *= scale;
          dx += (z[i] - x[i]) * (z[i] - x[i]);
          dy += (z[i] - y[i]) * (z[i] - y[i]);
        }
        const double close = 1e-24 * R * R;
        if (dx < close || dy < close) {
          ++res.collisions;
          continue;
        }
        const double w = density(s);
        value = w == 0.0 ? 0.0 : euclid_ball_green(d, R, x, z) * euclid_ball_green(d, R, z, y) * w;
        break;
      }
      sum += value;
      sum2 += value * value;
    }
    const double mean = sum / count;
    const double cell = volume / strata;
    lhs += cell * mean;
    if (count > 1) {
      const double var = std::max(0.0, (sum2 - count * mean * mean) / (count - 1));
      variance += cell * cell * var / count;
    }
  }
  res.lhs = lhs;
  res.std_error = std::sqrt(variance);
  res.gamma = newtonian_potential_sup(d, R, density);
  res.rhs_factor = g_xy * res.gamma;
  res.ratio = res.rhs_factor > 0.0 ? res.lhs / res.rhs_factor : 0.0;
  return res;
}

}  // namespace radiant
