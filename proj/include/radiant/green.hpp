#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "radiant/geometry.hpp"
#include "radiant/numerics.hpp"

namespace radiant {

/// Integral of 1/A(s) over [a, b], 0 < a < b (b may be +inf).
double inverse_density_integral(const Space& space, double a, double b);

/// A(t) * integral_t^inf ds/A(s); equals t/(d-2) on R^d and tends to 1/Q on NA.
double density_tail_ratio(const Space& space, double t);

/// Radial fundamental solution of the Laplace-Beltrami operator, pole at the origin.
double green_whole(const Space& space, double r);

/// Dirichlet Green function of the ball B(0,R), pole at the origin.
double green_ball(const Space& space, double R, double r);

/// Radial Green operator of the ball:
///   (G_B f)(r) = g(r) * int_0^r A f dt + int_r^R A g f dt,   g(r) = int_r^R ds/A(s),
/// discretised by 16-point Gauss-Legendre on each grid interval with the
/// integrand interpolated by the four-point Lagrange rule. On nodal values the
/// operator is V_i + T_i with the running sums
///   V_{i+1} = (g_{i+1}/g_i) V_i + g_{i+1} m_i,   T_i = T_{i+1} + p_i,
/// where m_i, p_i are the interval contributions to int A f and int A g f, so
/// both applying it and solving (I + G diag(q)) u = b cost O(N).
class BallGreenOperator {
 public:
  BallGreenOperator(Space space, double R, RadialGrid grid);

  const Space& space() const { return space_; }
  double radius() const { return R_; }
  const RadialGrid& grid() const { return grid_; }
  /// Dense matrix of the nodal operator (O(N^2) memory; meant for small grids).
  Eigen::MatrixXd matrix() const;

  /// Operator applied to nodal values (Lagrange-cubic interpolation).
  std::vector<double> apply(std::span<const double> values) const;
  /// Operator applied to a function evaluated directly at the quadrature points.
  std::vector<double> apply(const ScalarFn& f) const;
  /// Solves u + G(q u) = b for nodal u, with q >= 0 pointwise.
  std::vector<double> solve_shifted(std::span<const double> q, std::span<const double> b) const;

 private:
  // Everything is stored premultiplied so that A and g never appear alone:
  // A grows like exp(Q r) on NA and overflows on large balls.
  struct Point {
    double near;  // Gauss weight * A(t) g(r_{j+1})
    double far;   // Gauss weight * A(t) g(t)
    double t;
  };
  struct Interval {
    std::size_t start;  // first node of the Lagrange stencil
    std::size_t width;
    double mass[4];      // g(r_{j+1}) int_I A * basis
    double weighted[4];  // int_I A g * basis
    std::vector<Point> points;
  };

  Space space_;
  double R_;
  RadialGrid grid_;
  std::vector<double> ratio_;  // g_{i+1} / g_i, zero for i = 0
  std::vector<Interval> intervals_;
};

/// G_B f on f's grid (which must span [0, R]).
RadialFunction green_op_ball(const Space& space, double R, const RadialFunction& f);

struct RadialSource {
  ScalarFn fn;
  TailModel tail;
};

struct PotentialResult {
  ConvergenceVerdict verdict;             // of (G f)(0)
  std::optional<RadialFunction> profile;  // set when the verdict converged
};

/// Whole-space Green potential of a nonnegative radial source.
PotentialResult green_potential_whole(const Space& space, const RadialSource& f, double r_max,
                                      const Tolerance& tol, int grid_nodes = 512);

/// Green function of Delta - lambda in R^n.
double yukawa_green(int n, double lambda, double r);
/// g_{n,1}(r) through the subordination integral, for any n >= 3.
double yukawa_green_subordination(int n, double r);
/// Fundamental-solution constant Gamma(n/2-1)/(4 pi^{n/2}) of Delta in R^n.
double laplace_constant(int n);

/// Image-method Dirichlet Green function of the ball B(0,R) in R^d.
double euclid_ball_green(int d, double R, std::span<const double> x, std::span<const double> y);

enum class GreenRegime { LargeR, SmallR };

struct GreenEstimateReport {
  Space space;
  GreenRegime regime;
  std::vector<double> radii;
  std::vector<double> ratios;
  double ratio_min = 0.0;
  double ratio_max = 0.0;

  double spread() const { return ratio_max / ratio_min; }
};

/// Samples G(r)e^{Qr} (large r, radii >= 1) or G(r)r^{n-2} (small r, radii in (0,1]).
GreenEstimateReport verify_green_estimates(const Space& space, GreenRegime regime, const RadialGrid& radii);

/// Radial operator u'' + c(r) u' at every node by finite differences on the
/// function's grid; `order` 2 uses three-point stencils, 4 uses five-point.
/// At r = 0 the limit n u''(0) is used.
std::vector<double> radial_laplacian(const Space& space, const RadialFunction& u, int order = 4);

/// Finite-difference weights for derivatives 0..m at x0 (Fornberg's algorithm).
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> xs, int m);

}  // namespace radiant
