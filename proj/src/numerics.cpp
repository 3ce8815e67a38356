#include "radiant/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace radiant {

void Tolerance::validate() const {
  if (!(abs >= 0.0) || !(rel >= 0.0) || !(abs + rel > 0.0)) {
    throw Error(ErrorKind::DomainError, "tolerance requires abs, rel >= 0 and abs + rel > 0");
  }
  if (max_subdivisions < 1 || max_iterations < 1) {
    throw Error(ErrorKind::DomainError, "tolerance limits must be at least 1");
  }
}

double Tolerance::target(double magnitude) const {
  return std::max(abs, rel * std::fabs(magnitude));
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

double checked(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::NonFinite, "integrand returned a non-finite value");
  }
  return v;
}

// QUADPACK qk15 error model.
Segment gk15(const ScalarFn& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::fabs(hlgth);

  std::array<double, 7> fv1{}, fv2{};
  const double fc = checked(f(centr));
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = checked(f(centr - absc));
    const double f2 = checked(f(centr + absc));
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::fabs(f1) + std::fabs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = checked(f(centr - absc));
    const double f2 = checked(f(centr + absc));
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }
  const double result = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  if (resabs > uflow / (50.0 * eps)) {
    abserr = std::max(eps * 50.0 * resabs, abserr);
  }
  return {a, b, result, abserr};
}

QuadResult adaptive_core(const ScalarFn& f, double a, double b, const Tolerance& tol) {
  auto by_error = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::vector<Segment> heap;
  heap.reserve(64);
  heap.push_back(gk15(f, a, b));
  int evaluations = 15;
  double total = heap.front().value;
  double total_err = heap.front().error;

  while (total_err > tol.target(total)) {
    if (static_cast<int>(heap.size()) >= tol.max_subdivisions) {
      std::ostringstream msg;
      msg << "error " << total_err << " above target " << tol.target(total) << " after "
          << heap.size() << " subintervals on [" << a << ", " << b << "]";
      throw Error(ErrorKind::SubdivisionLimit, msg.str());
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw Error(ErrorKind::SubdivisionLimit, "interval width reached floating-point resolution");
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    evaluations += 30;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);

    // Re-sum to avoid drift from repeated subtraction.
    total = 0.0;
    total_err = 0.0;
    for (const auto& s : heap) {
      total += s.value;
      total_err += s.error;
    }
  }
  return {total, total_err, evaluations};
}

}  // namespace

QuadResult integrate_adaptive(const ScalarFn& f, double a, double b, const Tolerance& tol,
                              EndpointSingularity singularity) {
  tol.validate();
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
    throw Error(ErrorKind::DomainError, "integrate_adaptive requires finite a < b");
  }
  for (double e : {singularity.left, singularity.right}) {
    if (!(e > -1.0 && e <= 0.0)) {
      throw Error(ErrorKind::DomainError, "singularity exponent must lie in (-1, 0]");
    }
  }
  const bool left = singularity.left < 0.0;
  const bool right = singularity.right < 0.0;
  if (!left && !right) return adaptive_core(f, a, b, tol);

  // x = a + L s^m with m = 1/(1+beta) turns (x-a)^beta into a bounded integrand.
  auto left_map = [&f](double a0, double len, double beta) {
    const double m = 1.0 / (1.0 + beta);
    return ScalarFn([&f, a0, len, m](double s) {
      if (s <= 0.0) return 0.0;
      return f(a0 + len * std::pow(s, m)) * len * m * std::pow(s, m - 1.0);
    });
  };
  auto right_map = [&f](double b0, double len, double beta) {
    const double m = 1.0 / (1.0 + beta);
    return ScalarFn([&f, b0, len, m](double s) {
      if (s <= 0.0) return 0.0;
      return f(b0 - len * std::pow(s, m)) * len * m * std::pow(s, m - 1.0);
    });
  };
  if (left && !right) return adaptive_core(left_map(a, b - a, singularity.left), 0.0, 1.0, tol);
  if (right && !left) return adaptive_core(right_map(b, b - a, singularity.right), 0.0, 1.0, tol);

  const double mid = 0.5 * (a + b);
  Tolerance half = tol;
  half.abs *= 0.5;
  const QuadResult l = adaptive_core(left_map(a, mid - a, singularity.left), 0.0, 1.0, half);
  const QuadResult r = adaptive_core(right_map(b, b - mid, singularity.right), 0.0, 1.0, half);
  return {l.value + r.value, l.error + r.error, l.evaluations + r.evaluations};
}

// ---------------------------------------------------------------------------
// Gauss-Legendre

namespace {

struct GaussTable {
  std::vector<double> x, w;
};

GaussTable make_gauss(int n) {
  GaussTable t;
  t.x.resize(n);
  t.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    t.x[i] = -z;
    t.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return t;
}

}  // namespace

GaussRule gauss_legendre(int n) {
  static const GaussTable g4 = make_gauss(4);
  static const GaussTable g8 = make_gauss(8);
  static const GaussTable g16 = make_gauss(16);
  static const GaussTable g32 = make_gauss(32);
  switch (n) {
    case 4: return {g4.x, g4.w};
    case 8: return {g8.x, g8.w};
    case 16: return {g16.x, g16.w};
    case 32: return {g32.x, g32.w};
    default: throw Error(ErrorKind::DomainError, "Gauss-Legendre order must be 4, 8, 16 or 32");
  }
}

// ---------------------------------------------------------------------------
// Improper integrals

ConvergenceVerdict integrate_improper(const ScalarFn& f, double a, TailModel tail,
                                      const Tolerance& tol, ImproperOptions options) {
  tol.validate();
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw Error(ErrorKind::DomainError, "integrate_improper requires finite a >= 0");
  }
  const int window = options.consecutive_blocks;
  const double conv_edge = -1.0 - options.margin;
  const double div_edge = -1.0 - 0.5 * options.margin;

  Tolerance block_tol = tol;
  block_tol.abs = 0.1 * tol.abs;
  block_tol.rel = 0.1 * tol.rel;

  std::vector<double> sums;
  std::vector<double> partial;
  std::vector<double> exponents;  // fitted exponent of f between blocks k-1, k
  double total = 0.0;
  double quad_err = 0.0;
  double prev_value = std::numeric_limits<double>::quiet_NaN();

  for (int k = 0; k < options.max_blocks; ++k) {
    const double lo = a + std::ldexp(1.0, k) - 1.0;
    const double hi = a + std::ldexp(1.0, k + 1) - 1.0;
    EndpointSingularity sing;
    if (k == 0) sing.left = options.left_singularity;
    const QuadResult q = integrate_adaptive(f, lo, hi, block_tol, sing);
    sums.push_back(q.value);
    total += q.value;
    quad_err += q.error;
    partial.push_back(total);

    if (k == 0) continue;
    const double prev = std::fabs(sums[k - 1]);
    const double cur = std::fabs(sums[k]);
    double beta;
    if (prev == 0.0 && cur == 0.0) {
      beta = -std::numeric_limits<double>::infinity();
    } else if (prev == 0.0) {
      beta = std::numeric_limits<double>::infinity();
    } else if (cur == 0.0) {
      beta = -std::numeric_limits<double>::infinity();
    } else {
      beta = std::log2(cur / prev) - 1.0;
    }
    exponents.push_back(beta);
    if (static_cast<int>(exponents.size()) < window) continue;

    const auto first = exponents.end() - window;
    const bool all_conv = std::all_of(first, exponents.end(), [&](double b) { return b <= conv_edge; });
    const bool all_div = std::all_of(first, exponents.end(), [&](double b) { return b >= div_edge; });
    // Exponential hint: geometric decay of consecutive blocks is sufficient.
    const bool exp_conv = tail.kind == TailModel::Kind::Exponential &&
                          std::all_of(first, exponents.end(), [](double b) { return b < -1.0; });

    if (all_conv || exp_conv) {
      double tail_est = 0.0;
      if (cur > 0.0 && prev > 0.0) {
        const double rho = cur / prev;
        tail_est = rho < 1.0 ? sums[k] * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
      }
      // Successive extrapolated totals; for an exact power tail they agree.
      const double value = total + tail_est;
      const double change = std::isnan(prev_value) ? std::fabs(tail_est) : std::fabs(value - prev_value);
      prev_value = value;
      const double err = quad_err + change;
      if (std::isfinite(value) && err <= tol.target(value)) {
        return Converges{value, err};
      }
      continue;
    }
    prev_value = std::numeric_limits<double>::quiet_NaN();
    if (all_div) {
      double mean = 0.0;
      for (auto it = first; it != exponents.end(); ++it) mean += std::isfinite(*it) ? *it : 1e3;
      mean /= window;
      return Diverges{partial, mean};
    }
  }
  std::ostringstream msg;
  msg << "no verdict after " << options.max_blocks << " dyadic blocks";
  if (!exponents.empty()) msg << "; last fitted exponent " << exponents.back();
  return Inconclusive{msg.str()};
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr long kMaxSteps = 2'000'000;
constexpr double kBlowUp = 1e200;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Trajectory solve_ivp(const OdeRhs& rhs, State y0, double r0, double r1, const Tolerance& tol,
                     std::span<const double> output) {
  tol.validate();
  if (!(r0 < r1) || !std::isfinite(r0) || !std::isfinite(r1)) {
    throw Error(ErrorKind::DomainError, "solve_ivp requires finite r0 < r1");
  }
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (!(output[i] > r0 && output[i] <= r1) || (i > 0 && !(output[i] > output[i - 1]))) {
      throw Error(ErrorKind::DomainError, "output radii must increase inside (r0, r1]");
    }
  }
  const std::size_t n = y0.size();
  Trajectory traj;
  traj.radii.push_back(r0);
  traj.states.push_back(y0);

  State y = std::move(y0);
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
  rhs(r0, y, k1);
  if (!all_finite(k1)) throw StepUnderflowError(r0, "right-hand side is not finite at the start");

  double r = r0;
  double h = 1e-3 * (r1 - r0);
  std::size_t next_out = 0;

  while (r < r1) {
    if (traj.steps + traj.rejected > kMaxSteps) {
      throw StepUnderflowError(r, "step budget exhausted");
    }
    const double stop = output.empty() ? r1 : (next_out < output.size() ? output[next_out] : r1);
    double step = std::min(h, stop - r);
    const bool landing = step < h || r + step >= stop;
    if (step < 1e-14 * std::max(1.0, std::fabs(r))) {
      std::ostringstream msg;
      msg << "step size underflow at r = " << r;
      throw StepUnderflowError(r, msg.str());
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + step * a21 * k1[i];
    rhs(r + c2 * step, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + step * (a31 * k1[i] + a32 * k2[i]);
    rhs(r + c3 * step, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(r + c4 * step, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(r + c5 * step, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(r + step, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + step * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(r + step, ynew, k7);

    double err = 0.0;
    bool finite = all_finite(ynew) && all_finite(k7);
    if (finite) {
      for (std::size_t i = 0; i < n; ++i) {
        const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = tol.abs + tol.rel * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
        err = std::max(err, std::fabs(e) / sc);
      }
      finite = std::isfinite(err);
    }
    if (!finite) {
      h = 0.25 * step;
      ++traj.rejected;
      continue;
    }
    if (err <= 1.0) {
      r = (landing && r + step >= stop) ? stop : r + step;
      y.swap(ynew);
      k1.swap(k7);
      ++traj.steps;
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // A step shortened to land on an output keeps the unclipped proposal.
      h = landing ? std::max(h, step * grow) : step * grow;
      for (double v : y) {
        if (std::fabs(v) > kBlowUp) {
          std::ostringstream msg;
          msg << "solution exceeds " << kBlowUp << " at r = " << r;
          throw StepUnderflowError(r, msg.str());
        }
      }
      if (output.empty()) {
        traj.radii.push_back(r);
        traj.states.push_back(y);
      } else if (next_out < output.size() && r == output[next_out]) {
        traj.radii.push_back(r);
        traj.states.push_back(y);
        ++next_out;
      }
    } else {
      h = step * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
      ++traj.rejected;
    }
  }
  return traj;
}

// ---------------------------------------------------------------------------

double bisect(const std::function<bool(double)>& pred, double lo, double hi, const Tolerance& tol) {
  tol.validate();
  if (!(lo < hi)) throw Error(ErrorKind::BadBracket, "bisect requires lo < hi");
  if (pred(lo)) throw Error(ErrorKind::BadBracket, "predicate already true at the lower end");
  if (!pred(hi)) throw Error(ErrorKind::BadBracket, "predicate false at the upper end");
  const double width = tol.abs > 0.0 ? tol.abs : tol.rel * std::max(std::fabs(lo), std::fabs(hi));
  int iterations = 0;
  while (hi - lo > width) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (++iterations > std::max(tol.max_iterations, 2200)) {
      throw Error(ErrorKind::NoConvergence, "bisection iteration limit reached");
    }
  }
  return hi;
}

}  // namespace radiant
