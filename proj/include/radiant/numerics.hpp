#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "radiant/error.hpp"

namespace radiant {

using ScalarFn = std::function<double(double)>;

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
  int max_subdivisions = 2000;
  int max_iterations = 200;

  /// Throws DomainError unless abs,rel >= 0 with abs+rel > 0 and both limits >= 1.
  void validate() const;
  double target(double magnitude) const;
};

// ---------------------------------------------------------------------------
// Radial grids and profiles

class RadialGrid {
 public:
  explicit RadialGrid(std::vector<double> nodes);

  /// `count` equally spaced nodes on [r0, r1].
  static RadialGrid uniform(double r0, double r1, int count);

  /// Node 0 at the origin, a geometric run starting at 1e-6*r_max that
  /// resolves r^{2-n} behaviour, then uniform spacing up to r_max.
  static RadialGrid geometric_uniform(double r_max, int count = 512, int geometric_count = 48);

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  double operator[](std::size_t i) const { return nodes_[i]; }

  /// Index i with nodes[i] <= r < nodes[i+1], clamped to [0, size-2].
  std::size_t interval(double r) const;

 private:
  std::vector<double> nodes_;
};

enum class Interpolation {
  PiecewiseLinear,
  MonotoneCubic,  // Fritsch-Carlson style shape-preserving Hermite
  Cubic,          // local four-point Lagrange; linear in the node values
};

std::string to_string(Interpolation interp);
Interpolation interpolation_from_string(const std::string& name);

class RadialFunction {
 public:
  RadialFunction(RadialGrid grid, std::vector<double> values,
                 Interpolation interpolation = Interpolation::Cubic);

  static RadialFunction sample(RadialGrid grid, const ScalarFn& f,
                               Interpolation interpolation = Interpolation::Cubic);

  const RadialGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  Interpolation interpolation() const { return interpolation_; }
  double r_min() const { return grid_.front(); }
  double r_max() const { return grid_.back(); }

  /// Defined on [r_min, r_max]; throws DomainError outside.
  double operator()(double r) const;
  double sup_abs() const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
  Interpolation interpolation_;
  std::vector<double> slopes_;  // Hermite slopes, MonotoneCubic only
};

// ---------------------------------------------------------------------------
// Quadrature

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Endpoint behaviour f ~ (x-a)^left or (b-x)^right, exponents in (-1, 0].
struct EndpointSingularity {
  double left = 0.0;
  double right = 0.0;
};

/// Globally adaptive Gauss-Kronrod (7,15) quadrature with interval bisection.
QuadResult integrate_adaptive(const ScalarFn& f, double a, double b, const Tolerance& tol,
                              EndpointSingularity singularity = {});

/// Fixed n-point Gauss-Legendre rule on [-1,1] (n in {4, 8, 16, 32}).
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};
GaussRule gauss_legendre(int n);

struct TailModel {
  enum class Kind { Exponential, Power, Unknown };
  Kind kind = Kind::Unknown;
  double parameter = 0.0;  // rate for Exponential, exponent for Power

  static TailModel exponential(double rate) { return {Kind::Exponential, rate}; }
  static TailModel power(double exponent) { return {Kind::Power, exponent}; }
  static TailModel unknown() { return {}; }
};

struct Converges {
  double value = 0.0;
  double error_estimate = 0.0;
};
struct Diverges {
  std::vector<double> partial_sums;
  double fitted_tail_exponent = 0.0;
};
struct Inconclusive {
  std::string reason;
};
using ConvergenceVerdict = std::variant<Converges, Diverges, Inconclusive>;

inline bool converged(const ConvergenceVerdict& v) { return std::holds_alternative<Converges>(v); }
inline bool diverged(const ConvergenceVerdict& v) { return std::holds_alternative<Diverges>(v); }

struct ImproperOptions {
  double margin = 0.1;          // on the fitted exponent of f, compared to -1
  int consecutive_blocks = 6;   // agreeing dyadic blocks before a verdict
  int max_blocks = 62;
  double left_singularity = 0.0;
};

/// Integral of f over [a, inf) evaluated block by block on dyadic blocks
/// [a+2^k-1, a+2^{k+1}-1]. The fitted exponent of f over consecutive blocks
/// decides convergence; a converged tail is extrapolated geometrically.
ConvergenceVerdict integrate_improper(const ScalarFn& f, double a, TailModel tail,
                                      const Tolerance& tol, ImproperOptions options = {});

// ---------------------------------------------------------------------------
// ODE initial-value problems

using State = std::vector<double>;
using OdeRhs = std::function<void(double r, std::span<const double> y, std::span<double> dydr)>;

struct Trajectory {
  std::vector<double> radii;
  std::vector<State> states;
  int steps = 0;
  int rejected = 0;
};

/// Dormand-Prince 5(4) with PI-free standard step control. When `output`
/// radii are supplied (increasing, inside (r0, r1]) the integrator lands on
/// each of them exactly and the trajectory holds r0 plus those radii;
/// otherwise it holds every accepted step.
Trajectory solve_ivp(const OdeRhs& rhs, State y0, double r0, double r1, const Tolerance& tol,
                     std::span<const double> output = {});

// ---------------------------------------------------------------------------

/// Threshold of a monotone predicate (false below, true above). Returns the
/// upper end of the final bracket, whose width is below tol.abs.
double bisect(const std::function<bool(double)>& pred, double lo, double hi, const Tolerance& tol);

}  // namespace radiant
