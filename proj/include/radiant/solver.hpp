#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "radiant/geometry.hpp"
#include "radiant/green.hpp"
#include "radiant/nonlinearity.hpp"

namespace radiant {

enum class SolveMethod { Picard, Shooting };
std::string to_string(SolveMethod m);

struct BallKind {
  double R = 0.0;
  double boundary_value = 0.0;
};
struct EntireKind {
  double r_max_computed = 0.0;
};

struct Solution {
  Space space;
  RadialFunction profile;
  std::variant<BallKind, EntireKind> kind;
  double center_value = 0.0;
  SolveMethod method = SolveMethod::Picard;
  double residual = 0.0;
  int iterations = 0;
  double increment = 0.0;        // last sup-norm Picard increment
  int monotonicity_breaks = 0;   // nodes where an iterate rose above its predecessor
};

struct SolverOptions {
  Tolerance tol{1e-10, 1e-12, 2000, 200};
  double spacing = 0.01;    // target node spacing of ball grids
  int min_nodes = 101;
  int max_nodes = 6401;
};

/// Uniform grid on [0, R] with the spacing and node limits of `opt`.
RadialGrid ball_grid(double R, const SolverOptions& opt);

/// Fixed point of u = c - G_B phi(., u) on B(0,R). `start` (values on the
/// ball grid) may hold a supersolution to start from instead of u = c.
Solution solve_ball(const Space& space, const Nonlinearity& nl, double R, double c, const SolverOptions& opt = {},
                    const std::vector<double>* start = nullptr);

/// Same fixed point with a prebuilt Green operator (reused across boundary values).
Solution solve_ball(const BallGreenOperator& op, const Nonlinearity& nl, double c, const SolverOptions& opt = {},
                    const std::vector<double>* start = nullptr);

/// Fixed-point residual sup |u + G_B phi(u) - c| on the operator's grid.
double ball_residual(const BallGreenOperator& op, const Nonlinearity& nl, std::span<const double> u, double c);

/// Integrates u'' + c(r) u' = phi(r,u), u(0) = alpha, u'(0) = 0 on [0, r_max],
/// reporting on `nodes` uniform nodes. Residual: fourth-order finite-difference
/// form of the equation divided by 1 + sup|u|.
Solution solve_shooting(const Space& space, const Nonlinearity& nl, double alpha, double r_max,
                        const Tolerance& tol = {1e-12, 1e-12, 2000, 200}, int nodes = 501);

struct ZProfile {
  Space space;
  double R = 0.0;
  std::vector<std::pair<double, double>> samples;  // (lambda, z(lambda))
};

ZProfile z_profile(const Space& space, const Nonlinearity& nl, double R, std::span<const double> lambdas,
                   const SolverOptions& opt = {});

struct LambdaResult {
  double lambda = 0.0;
  Solution solution;  // solve_ball at the returned lambda
  int solves = 0;
};

/// Smallest lambda with z(lambda) >= alpha. The upper bracket starts at alpha
/// and doubles up to 2^20 alpha.
LambdaResult find_lambda(const Space& space, const Nonlinearity& nl, double R, double alpha,
                         const SolverOptions& opt = {});
LambdaResult find_lambda(const BallGreenOperator& op, const Nonlinearity& nl, double alpha,
                         const SolverOptions& opt = {});

struct StabilizationOptions {
  double abs = 1e-8;
  double rel = 1e-2;
  double trivial_threshold = 1e-8;
};

struct BoundedResult {
  std::optional<Solution> solution;   // limit on the last radius when nontrivial
  bool trivial = false;
  double limit_sup = 0.0;             // sup of the last profile on the first ball
  std::vector<double> radii;
  std::vector<double> center_values;  // U_{B_n} c at the origin
  std::vector<double> differences;    // sup distance of consecutive profiles on the first ball
};

/// U_{B_n} c along the schedule until consecutive profiles differ on the first
/// ball by less than abs + rel * sup; throws NotStabilized otherwise.
BoundedResult bounded_solution(const Space& space, const Nonlinearity& nl, double c,
                               std::span<const double> schedule, const SolverOptions& opt = {},
                               const StabilizationOptions& stab = {});

struct LargeResult {
  Solution solution;                   // ball solution on the last radius, with entire kind
  std::vector<double> radii;
  std::vector<double> lambdas;
  std::vector<double> overlap_errors;  // sup |u_{R_k} - u_{R_{k+1}}| on B_{R_k}
  double growth_factor = 0.0;          // u(r_max) / max(u(0), tol)
};

struct LargeOptions {
  double overlap_rel = 1e-6;  // relative to 1 + sup of the overlap profile
};

LargeResult large_solution(const Space& space, const Nonlinearity& nl, double alpha,
                           std::span<const double> schedule, const SolverOptions& opt = {},
                           const LargeOptions& large = {});

struct ManufacturedSource {
  RadialFunction p;
  bool negative = false;     // some p(r) < 0
  double min_value = 0.0;
};

/// p = (L u*) / psi(u*) on u*'s grid.
ManufacturedSource manufacture_source(const Space& space, const RadialFunction& u_star, const ScalarFn& psi);

struct ComparisonReport {
  double max_violation = 0.0;  // max over the common nodes of u - v (0 if u <= v)
  double at_radius = 0.0;
  std::size_t nodes = 0;
};

/// Checks u <= v on the nodes of the shorter profile.
ComparisonReport check_comparison(const Solution& u, const Solution& v);

}  // namespace radiant
