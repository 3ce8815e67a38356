#include "radiant/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SparseLU>

namespace radiant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Tolerance& tight() {
  static const Tolerance t{0.0, 1e-13, 4000, 200};
  return t;
}

// integral_a^b exp(logA(a) - logA(s)) ds through s = a e^y, so the result is
// scaled by A(a) and cannot overflow.
double scaled_inverse_density(const Space& space, double a, double b) {
  const double log_a = log_volume_density(space, a);
  const double y_end = std::log(b / a);
  auto integrand = [&](double y) {
    const double s = a * std::exp(y);
    return s * std::exp(log_a - log_volume_density(space, s));
  };
  return integrate_adaptive(integrand, 0.0, y_end, tight()).value;
}

double far_end(const Space& space, double a) { return a + 50.0 / space.Q() + 1.0; }

// A(a) int_a^b ds / A(s), finite for any a > 0.
double scaled_segment(const Space& space, double a, double b) {
  if (space.is_euclidean()) {
    const int d = space.euclid().d;
    return a * (1.0 - std::pow(a / b, d - 2)) / (d - 2);
  }
  return scaled_inverse_density(space, a, b);
}

}  // namespace

double inverse_density_integral(const Space& space, double a, double b) {
  if (!(a > 0.0) || !(b > a)) throw Error(ErrorKind::DomainError, "inverse density integral needs 0 < a < b");
  if (space.is_euclidean()) {
    const int d = space.euclid().d;
    const double tail_b = std::isinf(b) ? 0.0 : std::pow(b, 2 - d);
    return (std::pow(a, 2 - d) - tail_b) / (d - 2);
  }
  const double end = std::isinf(b) ? far_end(space, a) : b;
  return std::exp(-log_volume_density(space, a)) * scaled_inverse_density(space, a, end);
}

double density_tail_ratio(const Space& space, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::DomainError, "density tail ratio needs t > 0");
  if (space.is_euclidean()) return t / (space.euclid().d - 2);
  return scaled_inverse_density(space, t, far_end(space, t));
}

double green_whole(const Space& space, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::DomainError, "green_whole needs r > 0");
  return inverse_density_integral(space, r, kInf) / sphere_area(space);
}

double green_ball(const Space& space, double R, double r) {
  if (!(R > 0.0) || !(r > 0.0) || !(r < R)) throw Error(ErrorKind::DomainError, "green_ball needs 0 < r < R");
  return inverse_density_integral(space, r, R) / sphere_area(space);
}

// ---------------------------------------------------------------------------

BallGreenOperator::BallGreenOperator(Space space, double R, RadialGrid grid)
    : space_(std::move(space)), R_(R), grid_(std::move(grid)) {
  const auto x = grid_.nodes();
  const std::size_t n = x.size();
  if (!(R > 0.0) || x.front() != 0.0 || std::fabs(x.back() - R) > 1e-12 * R) {
    throw Error(ErrorKind::DomainError, "ball Green operator needs a grid spanning [0, R]");
  }

  // log g at the nodes through h_j = A(r_j) g(r_j), which stays O(r).
  std::vector<double> log_a(n), log_g(n, -kInf);
  for (std::size_t j = 1; j < n; ++j) log_a[j] = log_volume_density(space_, x[j]);
  double h = 0.0;
  for (std::size_t j = n - 1; j-- > 1;) {
    h = std::exp(log_a[j] - log_a[j + 1]) * h + scaled_segment(space_, x[j], x[j + 1]);
    log_g[j] = std::log(h) - log_a[j];
  }
  ratio_.assign(n - 1, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) ratio_[i] = std::exp(log_g[i + 1] - log_g[i]);

  const GaussRule rule = gauss_legendre(16);
  const std::size_t width = std::min<std::size_t>(4, n);
  intervals_.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double mid = 0.5 * (x[j] + x[j + 1]);
    const double half = 0.5 * (x[j + 1] - x[j]);
    Interval& iv = intervals_[j];
    iv.start = std::min(j > 0 ? j - 1 : 0, n - width);
    iv.width = width;
    std::fill(std::begin(iv.mass), std::end(iv.mass), 0.0);
    std::fill(std::begin(iv.weighted), std::end(iv.weighted), 0.0);
    iv.points.reserve(rule.nodes.size());
    for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
      Point p{};
      p.t = mid + half * rule.nodes[m];
      const double w = half * rule.weights[m];
      const double ag = std::exp(log_volume_density(space_, p.t) + log_g[j + 1]);
      p.near = w * ag;
      p.far = w * (ag + scaled_segment(space_, p.t, x[j + 1]));
      for (std::size_t a = 0; a < width; ++a) {
        double basis = 1.0;
        for (std::size_t b = 0; b < width; ++b) {
          if (a != b) basis *= (p.t - x[iv.start + b]) / (x[iv.start + a] - x[iv.start + b]);
        }
        iv.mass[a] += p.near * basis;
        iv.weighted[a] += p.far * basis;
      }
      iv.points.push_back(p);
    }
  }
}

std::vector<double> BallGreenOperator::apply(std::span<const double> values) const {
  const std::size_t n = grid_.size();
  if (values.size() != n) throw Error(ErrorKind::DomainError, "value count does not match the grid");
  std::vector<double> out(n, 0.0);
  double v = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Interval& iv = intervals_[i];
    double m = 0.0;
    for (std::size_t a = 0; a < iv.width; ++a) m += iv.mass[a] * values[iv.start + a];
    v = ratio_[i] * v + m;
    out[i + 1] = v;
  }
  double t = 0.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    const Interval& iv = intervals_[i];
    for (std::size_t a = 0; a < iv.width; ++a) t += iv.weighted[a] * values[iv.start + a];
    out[i] += t;
  }
  return out;
}

Eigen::MatrixXd BallGreenOperator::matrix() const {
  const std::size_t n = grid_.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<double> e(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    const auto col = apply(std::span<const double>(e));
    for (std::size_t i = 0; i < n; ++i) m(Eigen::Index(i), Eigen::Index(k)) = col[i];
    e[k] = 0.0;
  }
  return m;
}

std::vector<double> BallGreenOperator::apply(const ScalarFn& f) const {
  const std::size_t n = grid_.size();
  std::vector<double> out(n, 0.0);
  double v = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double m = 0.0;
    for (const Point& p : intervals_[i].points) m += p.near * f(p.t);
    v = ratio_[i] * v + m;
    out[i + 1] = v;
  }
  double t = 0.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    for (const Point& p : intervals_[i].points) t += p.far * f(p.t);
    out[i] += t;
  }
  return out;
}

// Unknowns interleaved per node as (u_i, V_i, T_i); the system is banded.
std::vector<double> BallGreenOperator::solve_shifted(std::span<const double> q, std::span<const double> b) const {
  const std::size_t n = grid_.size();
  if (q.size() != n || b.size() != n) throw Error(ErrorKind::DomainError, "shift and right-hand side must match the grid");
  const auto U = [](std::size_t i) { return static_cast<int>(3 * i); };
  const auto V = [](std::size_t i) { return static_cast<int>(3 * i + 1); };
  const auto T = [](std::size_t i) { return static_cast<int>(3 * i + 2); };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n * 16);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 * n));
  for (std::size_t i = 0; i < n; ++i) {
    trip.emplace_back(U(i), U(i), 1.0);
    trip.emplace_back(U(i), V(i), 1.0);
    trip.emplace_back(U(i), T(i), 1.0);
    rhs[U(i)] = b[i];
  }
  trip.emplace_back(V(0), V(0), 1.0);
  trip.emplace_back(T(n - 1), T(n - 1), 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Interval& iv = intervals_[i];
    trip.emplace_back(V(i + 1), V(i + 1), 1.0);
    if (i > 0) trip.emplace_back(V(i + 1), V(i), -ratio_[i]);
    trip.emplace_back(T(i), T(i), 1.0);
    trip.emplace_back(T(i), T(i + 1), -1.0);
    for (std::size_t a = 0; a < iv.width; ++a) {
      const std::size_t k = iv.start + a;
      trip.emplace_back(V(i + 1), U(k), -iv.mass[a] * q[k]);
      trip.emplace_back(T(i), U(k), -iv.weighted[a] * q[k]);
    }
  }
  Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(3 * n), static_cast<Eigen::Index>(3 * n));
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw Error(ErrorKind::NonFinite, "shifted Green system is singular");
  const Eigen::VectorXd z = lu.solve(rhs);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = z[U(i)];
  return u;
}

RadialFunction green_op_ball(const Space& space, double R, const RadialFunction& f) {
  const BallGreenOperator op(space, R, f.grid());
  return RadialFunction(f.grid(), op.apply([&f](double t) { return f(t); }), f.interpolation());
}

// ---------------------------------------------------------------------------

PotentialResult green_potential_whole(const Space& space, const RadialSource& f, double r_max,
                                      const Tolerance& tol, int grid_nodes) {
  // (G f)(r) = g(r) int_0^r A f + int_r^inf A g f with g(t) = int_t^inf ds/A.
  auto weighted = [&](double t) {
    if (t <= 0.0) return 0.0;
    return density_tail_ratio(space, t) * f.fn(t);
  };
  TailModel tail = f.tail;
  if (space.is_euclidean() && tail.kind == TailModel::Kind::Power) tail.parameter += 1.0;
  PotentialResult result{integrate_improper(weighted, 0.0, tail, tol), std::nullopt};
  const auto* total = std::get_if<Converges>(&result.verdict);
  if (total == nullptr) return result;

  const RadialGrid grid = RadialGrid::geometric_uniform(r_max, grid_nodes);
  const auto x = grid.nodes();
  const GaussRule rule = gauss_legendre(16);
  std::vector<double> values(x.size());
  values[0] = total->value;
  double mass = 0.0;
  double inner = 0.0;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    const double mid = 0.5 * (x[j] + x[j + 1]);
    const double half = 0.5 * (x[j + 1] - x[j]);
    for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
      const double t = mid + half * rule.nodes[m];
      const double ft = f.fn(t);
      mass += half * rule.weights[m] * volume_density(space, t) * ft;
      inner += half * rule.weights[m] * density_tail_ratio(space, t) * ft;
    }
    const double r = x[j + 1];
    values[j + 1] = inverse_density_integral(space, r, kInf) * mass + (total->value - inner);
  }
  result.profile = RadialFunction(grid, std::move(values), Interpolation::MonotoneCubic);
  return result;
}

// ---------------------------------------------------------------------------

double laplace_constant(int n) {
  if (n < 3) throw Error(ErrorKind::DomainError, "dimension must be at least 3");
  return std::tgamma(0.5 * n - 1.0) / (4.0 * std::pow(std::numbers::pi, 0.5 * n));
}

double yukawa_green_subordination(int n, double r) {
  if (n < 3 || !(r > 0.0)) throw Error(ErrorKind::DomainError, "yukawa_green needs n >= 3 and r > 0");
  const double k = 0.5 * n - 1.0;
  const double t_peak = 0.5 * (-k + std::sqrt(k * k + r * r));
  const double y_lo = std::log(t_peak) - 12.0;
  const double y_hi = std::log(3.0 * t_peak + 80.0);
  auto integrand = [&](double y) {
    const double t = std::exp(y);
    return std::exp(-k * y - t - r * r / (4.0 * t));
  };
  const double integral = integrate_adaptive(integrand, y_lo, y_hi, tight()).value;
  return std::pow(4.0 * std::numbers::pi, -0.5 * n) * integral;
}

double yukawa_green(int n, double lambda, double r) {
  if (n < 3 || !(lambda > 0.0) || !(r > 0.0)) {
    throw Error(ErrorKind::DomainError, "yukawa_green needs n >= 3, lambda > 0, r > 0");
  }
  const double s = std::sqrt(lambda);
  const double unit = n == 3 ? std::exp(-s * r) / (4.0 * std::numbers::pi * s * r)
                             : yukawa_green_subordination(n, s * r);
  return std::pow(lambda, 0.5 * (n - 2)) * unit;
}

double euclid_ball_green(int d, double R, std::span<const double> x, std::span<const double> y) {
  if (d < 3 || !(R > 0.0) || x.size() != static_cast<std::size_t>(d) || y.size() != x.size()) {
    throw Error(ErrorKind::DomainError, "euclid_ball_green needs d >= 3, R > 0 and points in R^d");
  }
  double x2 = 0.0, y2 = 0.0, dxy2 = 0.0;
  for (int i = 0; i < d; ++i) {
    x2 += x[i] * x[i];
    y2 += y[i] * y[i];
    dxy2 += (x[i] - y[i]) * (x[i] - y[i]);
  }
  if (!(x2 < R * R) || !(y2 < R * R)) throw Error(ErrorKind::DomainError, "points must lie inside the ball");
  if (dxy2 == 0.0) throw Error(ErrorKind::PoleError, "x and y coincide");
  const double a_d = laplace_constant(d);
  const double e = 2.0 - d;
  const double direct = std::pow(dxy2, 0.5 * e);
  // |y|/R * |x - R^2 y/|y|^2| = sqrt(|x|^2|y|^2/R^2 - 2 x.y + R^2), symmetric in x, y.
  const double xy = [&] {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * y[i];
    return s;
  }();
  const double image2 = x2 * y2 / (R * R) - 2.0 * xy + R * R;
  return a_d * (direct - std::pow(image2, 0.5 * e));
}

// ---------------------------------------------------------------------------

GreenEstimateReport verify_green_estimates(const Space& space, GreenRegime regime, const RadialGrid& radii) {
  if (!space.is_damek_ricci()) {
    throw Error(ErrorKind::UnsupportedSpace, "Green estimates are stated for Damek-Ricci spaces");
  }
  const auto r = radii.nodes();
  for (double v : r) {
    const bool inside = regime == GreenRegime::LargeR ? v >= 1.0 : (v > 0.0 && v <= 1.0);
    if (!inside) throw Error(ErrorKind::DomainError, "radius outside the declared regime");
  }
  GreenEstimateReport rep{space, regime, {r.begin(), r.end()}, {}, kInf, 0.0};
  const double Q = space.Q();
  const int n = space.n();
  for (double v : r) {
    const double g = green_whole(space, v);
    const double ratio = regime == GreenRegime::LargeR ? g * std::exp(Q * v) : g * std::pow(v, n - 2);
    rep.ratios.push_back(ratio);
    rep.ratio_min = std::min(rep.ratio_min, ratio);
    rep.ratio_max = std::max(rep.ratio_max, ratio);
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> xs, int m) {
  const std::size_t n = xs.size();
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<double> radial_laplacian(const Space& space, const RadialFunction& u, int order) {
  if (order != 2 && order != 4) throw Error(ErrorKind::DomainError, "finite-difference order must be 2 or 4");
  const auto x = u.grid().nodes();
  const auto v = u.values();
  const std::size_t n = x.size();
  const std::size_t half = order / 2;
  if (n < 2 * half + 1) throw Error(ErrorKind::DomainError, "grid too short for the stencil");

  // Radial profiles are even in r, so when the grid starts at the origin the
  // stencil may use mirrored ghost nodes.
  const bool mirrored = x.front() == 0.0;
  std::vector<double> xe, ve;
  if (mirrored) {
    for (std::size_t k = half; k >= 1; --k) {
      xe.push_back(-x[k]);
      ve.push_back(v[k]);
    }
  }
  const std::size_t offset = xe.size();
  xe.insert(xe.end(), x.begin(), x.end());
  ve.insert(ve.end(), v.begin(), v.end());

  std::vector<double> out(n);
  const std::size_t width = 2 * half + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t centre = i + offset;
    std::size_t start = centre >= half ? centre - half : 0;
    start = std::min(start, xe.size() - width);
    const std::span<const double> xs(xe.data() + start, width);
    const auto w = fd_weights(x[i], xs, 2);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      d1 += w[1][k] * ve[start + k];
      d2 += w[2][k] * ve[start + k];
    }
    out[i] = x[i] == 0.0 ? space.n() * d2 : d2 + radial_drift(space, x[i]) * d1;
  }
  return out;
}

}  // namespace radiant
