#include "radiant/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace radiant {

std::string to_string(SolveMethod m) { return m == SolveMethod::Picard ? "picard" : "shooting"; }

RadialGrid ball_grid(double R, const SolverOptions& opt) {
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorKind::DomainError, "ball radius must be positive");
  const double wanted = std::ceil(R / opt.spacing) + 1.0;
  const int count = static_cast<int>(std::clamp(wanted, double(opt.min_nodes), double(opt.max_nodes)));
  return RadialGrid::uniform(0.0, R, count);
}

namespace {

void require_ball_flags(const Nonlinearity& nl) {
  const auto& f = nl.flags();
  if (!f.h2_increasing || !f.h3_zero_for_nonpositive) {
    throw Error(ErrorKind::HypothesisViolation, "the ball solver needs H2 and H3 (" + nl.spec() + ")");
  }
}

std::vector<double> eval_phi(const Nonlinearity& nl, std::span<const double> x, std::span<const double> u) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = nl(x[i], u[i]);
    if (!std::isfinite(out[i])) throw Error(ErrorKind::NonFinite, "phi is not finite on the iterate");
  }
  return out;
}

double sup_distance(const RadialFunction& a, const RadialFunction& b, std::span<const double> nodes) {
  double d = 0.0;
  for (double r : nodes) d = std::max(d, std::fabs(a(r) - b(r)));
  return d;
}

}  // namespace

double ball_residual(const BallGreenOperator& op, const Nonlinearity& nl, std::span<const double> u, double c) {
  const auto x = op.grid().nodes();
  const auto phi = eval_phi(nl, x, u);
  const auto gphi = op.apply(phi);
  double res = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) res = std::max(res, std::fabs(u[i] + gphi[i] - c));
  return res;
}

Solution solve_ball(const Space& space, const Nonlinearity& nl, double R, double c, const SolverOptions& opt,
                    const std::vector<double>* start) {
  require_ball_flags(nl);
  const BallGreenOperator op(space, R, ball_grid(R, opt));
  return solve_ball(op, nl, c, opt, start);
}

// Monotone iteration from the supersolution u = c. Each step linearises phi
// around the iterate with a nonnegative slope q and solves
//   (I + G Q) u_new = c - G (phi(u) - Q u).
// The slope starts as the secant over [u/2, u]; nodes whose new value drops
// below half the old one switch to the secant through the origin, which keeps
// u_new >= 0 and reaches dead cores in one step, and after that q is
// multiplied by 4 until the step is accepted.
namespace {

// Values below the snap level cannot be resolved against c; with an infinite
// slope of phi at 0 they still move the residual by G phi(snap) on that set.
double zero_set_floor(const BallGreenOperator& op, const Nonlinearity& nl, std::span<const double> u, double snap) {
  const auto x = op.grid().nodes();
  std::vector<double> d(u.size(), 0.0);
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::fabs(u[i]) <= snap) {
      d[i] = nl(x[i], snap);
      any = any || d[i] != 0.0;
    }
  }
  if (!any) return 0.0;
  double sup = 0.0;
  for (double v : op.apply(d)) sup = std::max(sup, std::fabs(v));
  return sup;
}

}  // namespace

Solution solve_ball(const BallGreenOperator& op, const Nonlinearity& nl, double c, const SolverOptions& opt,
                    const std::vector<double>* start) {
  require_ball_flags(nl);
  opt.tol.validate();
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorKind::DomainError, "boundary value must be >= 0");
  const auto x = op.grid().nodes();
  const std::size_t n = x.size();
  const double target = opt.tol.target(c);
  constexpr double beta = 0.5;
  const double snap = 16.0 * std::numeric_limits<double>::epsilon() * std::max(c, 1.0);

  std::vector<double> u = start ? *start : std::vector<double>(n, c);
  if (u.size() != n) throw Error(ErrorKind::DomainError, "start vector does not match the ball grid");

  Solution sol{op.space(), RadialFunction(op.grid(), u), BallKind{op.radius(), c}, c, SolveMethod::Picard,
               0.0, 0, 0.0, 0};
  std::vector<double> q(n), u_new(n), lowered(n);
  std::vector<int> stage(n);
  int quiet = 0;
  for (int it = 1; it <= opt.tol.max_iterations; ++it) {
    const auto phi = eval_phi(nl, x, u);
    for (std::size_t i = 0; i < n; ++i) {
      stage[i] = 0;
      q[i] = 0.0;
      if (u[i] > 0.0) {
        lowered[i] = beta * u[i];
        q[i] = std::max(0.0, (phi[i] - nl(x[i], lowered[i])) / (u[i] - lowered[i]));
      }
    }
    for (int attempt = 0;; ++attempt) {
      std::vector<double> shifted(n);
      for (std::size_t i = 0; i < n; ++i) shifted[i] = phi[i] - q[i] * u[i];
      std::vector<double> rhs = op.apply(shifted);
      for (double& v : rhs) v = c - v;
      const std::vector<double> v = op.solve_shifted(q, rhs);
      // Roundoff-level values are zero: sqrt-type phi would amplify them.
      for (std::size_t i = 0; i < n; ++i) u_new[i] = std::fabs(v[i]) < snap ? 0.0 : v[i];

      bool rejected = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] <= 0.0) {
          // A node leaving the zero set: phi may be far steeper than q there
          // (sqrt-type phi), so retry with the chord through the origin.
          if (u_new[i] <= 0.0 || attempt >= 4) continue;
          const double chord = nl(x[i], u_new[i]) / u_new[i];
          if (chord > q[i] * (1.0 + 1e-3)) {
            q[i] = chord;
            rejected = true;
          }
          continue;
        }
        const double floor = stage[i] == 0 ? lowered[i] : -target;
        if (u_new[i] >= floor) continue;
        rejected = true;
        if (stage[i] == 0) {
          q[i] = std::max(q[i], phi[i] / u[i]);
        } else {
          q[i] *= 4.0;
        }
        ++stage[i];
      }
      if (!rejected) break;
      if (attempt == 8) throw Error(ErrorKind::NoConvergence, "linearised step could not be stabilised");
    }

    double inc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      inc = std::max(inc, std::fabs(u_new[i] - u[i]));
      if (u_new[i] > u[i] + 1e-12 * (1.0 + std::fabs(u[i])) + target) ++sol.monotonicity_breaks;
    }
    u.swap(u_new);
    sol.iterations = it;
    sol.increment = inc;
    quiet = inc < target ? quiet + 1 : 0;
    if (quiet > 0) {
      sol.residual = ball_residual(op, nl, u, c);
      // The zero-set allowance only applies once the iteration has stalled.
      const double allowance = quiet >= 8 ? zero_set_floor(op, nl, u, snap) : 0.0;
      if (sol.residual < target + allowance) {
        // The discrete fixed point may dip below zero inside a dead core by
        // the quadrature error; the profile is clamped and the residual
        // reported is that of the clamped profile.
        if (std::any_of(u.begin(), u.end(), [](double v) { return v < 0.0; })) {
          for (double& v : u) v = std::max(v, 0.0);
          sol.residual = ball_residual(op, nl, u, c);
        }
        sol.profile = RadialFunction(op.grid(), u);
        sol.center_value = u[0];
        return sol;
      }
    }
  }
  std::ostringstream msg;
  msg << "ball solve (R = " << op.radius() << ", c = " << c << ") stalled after " << opt.tol.max_iterations
      << " iterations; last increment " << sol.increment << ", residual " << ball_residual(op, nl, u, c);
  throw Error(ErrorKind::NoConvergence, msg.str());
}

// ---------------------------------------------------------------------------

Solution solve_shooting(const Space& space, const Nonlinearity& nl, double alpha, double r_max, const Tolerance& tol,
                        int nodes) {
  if (!(alpha >= 0.0)) throw Error(ErrorKind::DomainError, "shooting needs alpha >= 0");
  if (!(r_max > 0.0) || nodes < 6) throw Error(ErrorKind::DomainError, "shooting needs r_max > 0 and >= 6 nodes");
  const RadialGrid grid = RadialGrid::uniform(0.0, r_max, nodes);
  const double eps = 1e-6 * r_max;
  const int n = space.n();
  const double phi0 = nl(0.0, alpha);
  State y0{alpha + phi0 * eps * eps / (2.0 * n), phi0 * eps / n};

  auto rhs = [&](double r, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = nl(r, y[0]) - radial_drift(space, r) * y[1];
  };
  const auto x = grid.nodes();
  const Trajectory traj = solve_ivp(rhs, y0, eps, r_max, tol, x.subspan(1));

  std::vector<double> u(x.size());
  u[0] = alpha;
  for (std::size_t i = 1; i < x.size(); ++i) u[i] = traj.states[i][0];

  Solution sol{space, RadialFunction(grid, u), EntireKind{r_max}, alpha, SolveMethod::Shooting, 0.0, traj.steps,
               0.0, 0};
  const auto lap = radial_laplacian(space, sol.profile, 4);
  double res = 0.0;
  for (std::size_t i = 0; i + 2 < x.size(); ++i) res = std::max(res, std::fabs(lap[i] - nl(x[i], u[i])));
  sol.residual = res / (1.0 + sol.profile.sup_abs());
  return sol;
}

// ---------------------------------------------------------------------------

ZProfile z_profile(const Space& space, const Nonlinearity& nl, double R, std::span<const double> lambdas,
                   const SolverOptions& opt) {
  require_ball_flags(nl);
  const BallGreenOperator op(space, R, ball_grid(R, opt));
  ZProfile z{space, R, {}};
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0)) throw Error(ErrorKind::DomainError, "z profile needs lambda >= 0");
    z.samples.emplace_back(lambda, lambda == 0.0 ? 0.0 : solve_ball(op, nl, lambda, opt).center_value);
  }
  return z;
}

LambdaResult find_lambda(const Space& space, const Nonlinearity& nl, double R, double alpha, const SolverOptions& opt) {
  require_ball_flags(nl);
  const BallGreenOperator op(space, R, ball_grid(R, opt));
  return find_lambda(op, nl, alpha, opt);
}

LambdaResult find_lambda(const BallGreenOperator& op, const Nonlinearity& nl, double alpha, const SolverOptions& opt) {
  require_ball_flags(nl);
  const auto& f = nl.flags();
  if (!f.h4_concave && !f.h1prime.holds) {
    throw Error(ErrorKind::HypothesisViolation, "z(lambda) -> inf needs H4 or H1'");
  }
  if (!(alpha >= 0.0)) throw Error(ErrorKind::DomainError, "alpha must be >= 0");
  if (alpha == 0.0) return {0.0, solve_ball(op, nl, 0.0, opt), 1};

  int solves = 0;
  std::optional<Solution> upper;  // solution at the smallest lambda known to satisfy z >= alpha
  auto reaches = [&](double lambda) {
    const std::vector<double>* start = nullptr;
    std::vector<double> warm;
    if (upper && std::get<BallKind>(upper->kind).boundary_value >= lambda) {
      warm.assign(upper->profile.values().begin(), upper->profile.values().end());
      start = &warm;
    }
    Solution s = solve_ball(op, nl, lambda, opt, start);
    ++solves;
    const bool ok = s.center_value >= alpha;
    if (ok && (!upper || std::get<BallKind>(upper->kind).boundary_value > lambda)) upper = std::move(s);
    return ok;
  };

  double lo = 0.0;
  double hi = alpha;
  const double cap = std::ldexp(alpha, 20);
  while (!reaches(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) {
      std::ostringstream msg;
      msg << "z(" << cap << ") < alpha = " << alpha;
      throw Error(ErrorKind::BracketNotFound, msg.str());
    }
  }
  if (lo > 0.0 || hi > alpha) {
    Tolerance bt = opt.tol;
    bt.abs = std::max(opt.tol.target(alpha), 8.0 * std::numeric_limits<double>::epsilon() * hi);
    bisect([&](double lambda) { return lambda >= hi ? true : lambda <= lo ? false : reaches(lambda); }, lo, hi, bt);
  }
  const double lambda = std::get<BallKind>(upper->kind).boundary_value;
  return {lambda, std::move(*upper), solves};
}

// ---------------------------------------------------------------------------

BoundedResult bounded_solution(const Space& space, const Nonlinearity& nl, double c, std::span<const double> schedule,
                               const SolverOptions& opt, const StabilizationOptions& stab) {
  require_ball_flags(nl);
  if (!(c > 0.0)) throw Error(ErrorKind::DomainError, "bounded_solution needs c > 0");
  if (schedule.size() < 2) throw Error(ErrorKind::DomainError, "bounded_solution needs at least two radii");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (!(schedule[k] > schedule[k - 1])) throw Error(ErrorKind::DomainError, "schedule must be increasing");
  }
  const auto first_nodes = ball_grid(schedule[0], opt);
  auto sup_on_first = [&](const RadialFunction& u) {
    double s = 0.0;
    for (double r : first_nodes.nodes()) s = std::max(s, std::fabs(u(r)));
    return s;
  };

  BoundedResult out;
  std::optional<Solution> prev;
  for (double R : schedule) {
    Solution sol = solve_ball(space, nl, R, c, opt);
    out.radii.push_back(R);
    out.center_values.push_back(sol.center_value);
    if (prev) {
      const double diff = sup_distance(sol.profile, prev->profile, first_nodes.nodes());
      out.differences.push_back(diff);
      const double sup = sup_on_first(sol.profile);
      // Profiles decrease with R and stay >= 0, so a vanishing profile on the
      // first ball pins the limit there as well.
      if (diff < stab.abs + stab.rel * sup || sup < stab.trivial_threshold) {
        out.limit_sup = sup;
        out.trivial = sup < stab.trivial_threshold;
        if (!out.trivial) out.solution = std::move(sol);
        return out;
      }
    }
    prev = std::move(sol);
  }
  std::ostringstream msg;
  msg << "U_B c did not stabilise up to R = " << schedule.back() << "; last difference " << out.differences.back();
  throw Error(ErrorKind::NotStabilized, msg.str());
}

LargeResult large_solution(const Space& space, const Nonlinearity& nl, double alpha, std::span<const double> schedule,
                           const SolverOptions& opt, const LargeOptions& large) {
  require_ball_flags(nl);
  if (!(alpha > 0.0)) throw Error(ErrorKind::DomainError, "large_solution needs alpha > 0");
  if (schedule.empty()) throw Error(ErrorKind::DomainError, "empty schedule");

  LargeResult out{Solution{space, RadialFunction(RadialGrid({0.0, 1.0}), {0.0, 0.0}), EntireKind{}, 0.0,
                           SolveMethod::Picard, 0.0, 0, 0.0, 0},
                  {}, {}, {}, 0.0};
  std::optional<Solution> prev;
  for (double R : schedule) {
    if (prev && !(R > std::get<BallKind>(prev->kind).R)) throw Error(ErrorKind::DomainError, "schedule must be increasing");
    const BallGreenOperator op(space, R, ball_grid(R, opt));
    LambdaResult lr = find_lambda(op, nl, alpha, opt);
    out.radii.push_back(R);
    out.lambdas.push_back(lr.lambda);
    if (prev) {
      const auto nodes = prev->profile.grid().nodes();
      const double err = sup_distance(prev->profile, lr.solution.profile, nodes);
      out.overlap_errors.push_back(err);
      const double allowed = large.overlap_rel * (1.0 + prev->profile.sup_abs());
      if (err > allowed) {
        std::ostringstream msg;
        msg << "profiles on R = " << std::get<BallKind>(prev->kind).R << " and R = " << R << " differ by " << err;
        throw Error(ErrorKind::OverlapMismatch, msg.str());
      }
    }
    prev = std::move(lr.solution);
  }

  Solution sol = std::move(*prev);
  const auto u = sol.profile.values();
  const double slack = opt.tol.target(u.back());
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (u[i] < u[i - 1] - slack) throw Error(ErrorKind::OverlapMismatch, "glued profile is not nondecreasing");
  }
  if (!(u.back() > u.front())) throw Error(ErrorKind::OverlapMismatch, "glued profile does not grow");
  sol.kind = EntireKind{schedule.back()};
  out.growth_factor = u.back() / std::max(u.front(), opt.tol.abs);
  out.solution = std::move(sol);
  return out;
}

// ---------------------------------------------------------------------------

ManufacturedSource manufacture_source(const Space& space, const RadialFunction& u_star, const ScalarFn& psi) {
  const auto lap = radial_laplacian(space, u_star, 4);
  const auto u = u_star.values();
  std::vector<double> p(u.size());
  ManufacturedSource out{RadialFunction(u_star.grid(), std::vector<double>(u.size(), 0.0)), false,
                         std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = psi(u[i]);
    if (!(s > 0.0)) {
      std::ostringstream msg;
      msg << "psi(u*(" << u_star.grid()[i] << ")) = " << s;
      throw Error(ErrorKind::NonPositivePsi, msg.str());
    }
    p[i] = lap[i] / s;
    out.min_value = std::min(out.min_value, p[i]);
  }
  out.negative = out.min_value < 0.0;
  out.p = RadialFunction(u_star.grid(), std::move(p));
  return out;
}

ComparisonReport check_comparison(const Solution& u, const Solution& v) {
  ComparisonReport rep;
  const double hi = std::min(u.profile.r_max(), v.profile.r_max());
  for (double r : u.profile.grid().nodes()) {
    if (r > hi) break;
    const double d = u.profile(r) - v.profile(r);
    ++rep.nodes;
    if (d > rep.max_violation) {
      rep.max_violation = d;
      rep.at_radius = r;
    }
  }
  return rep;
}

}  // namespace radiant
