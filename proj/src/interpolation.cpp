#include <algorithm>
#include <cmath>
#include <sstream>

#include "radiant/numerics.hpp"

namespace radiant {

RadialGrid::RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw Error(ErrorKind::DomainError, "a radial grid needs at least two nodes");
  if (!(nodes_.front() >= 0.0)) throw Error(ErrorKind::DomainError, "radial grid must start at r >= 0");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw Error(ErrorKind::DomainError, "radial grid nodes must be finite");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw Error(ErrorKind::DomainError, "radial grid nodes must be strictly increasing");
    }
  }
}

RadialGrid RadialGrid::uniform(double r0, double r1, int count) {
  if (count < 2 || !(r1 > r0)) throw Error(ErrorKind::DomainError, "uniform grid needs count >= 2 and r1 > r0");
  std::vector<double> nodes(count);
  const double h = (r1 - r0) / (count - 1);
  for (int i = 0; i < count; ++i) nodes[i] = r0 + h * i;
  nodes.back() = r1;
  return RadialGrid(std::move(nodes));
}

RadialGrid RadialGrid::geometric_uniform(double r_max, int count, int geometric_count) {
  if (!(r_max > 0.0) || geometric_count < 1 || count < geometric_count + 3) {
    throw Error(ErrorKind::DomainError, "geometric_uniform needs r_max > 0 and count > geometric_count + 2");
  }
  const int uniform_count = count - 1 - geometric_count;
  const double h = r_max / uniform_count;
  const double r_min = 1e-6 * r_max;
  const double ratio = std::pow(h / r_min, 1.0 / geometric_count);
  std::vector<double> nodes;
  nodes.reserve(count);
  nodes.push_back(0.0);
  for (int j = 0; j < geometric_count; ++j) nodes.push_back(r_min * std::pow(ratio, j));
  for (int j = 1; j <= uniform_count; ++j) nodes.push_back(h * j);
  nodes.back() = r_max;
  return RadialGrid(std::move(nodes));
}

std::size_t RadialGrid::interval(double r) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(i, nodes_.size() - 2);
}

std::string to_string(Interpolation interp) {
  switch (interp) {
    case Interpolation::PiecewiseLinear: return "piecewise-linear";
    case Interpolation::MonotoneCubic: return "monotone-cubic";
    case Interpolation::Cubic: return "cubic";
  }
  return "cubic";
}

Interpolation interpolation_from_string(const std::string& name) {
  if (name == "piecewise-linear") return Interpolation::PiecewiseLinear;
  if (name == "monotone-cubic") return Interpolation::MonotoneCubic;
  if (name == "cubic") return Interpolation::Cubic;
  throw Error(ErrorKind::ConfigError, "unknown interpolation '" + name + "'");
}

namespace {

double end_slope(double h0, double h1, double d0, double d1) {
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (d * d0 <= 0.0) return 0.0;
  if (d0 * d1 <= 0.0 && std::fabs(d) > std::fabs(3.0 * d0)) return 3.0 * d0;
  return d;
}

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

RadialFunction::RadialFunction(RadialGrid grid, std::vector<double> values, Interpolation interpolation)
    : grid_(std::move(grid)), values_(std::move(values)), interpolation_(interpolation) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::DomainError, "radial function needs one value per grid node");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "radial function values must be finite");
  }
  if (interpolation_ == Interpolation::MonotoneCubic) slopes_ = pchip_slopes(grid_.nodes(), values_);
}

RadialFunction RadialFunction::sample(RadialGrid grid, const ScalarFn& f, Interpolation interpolation) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  return RadialFunction(std::move(grid), std::move(values), interpolation);
}

double RadialFunction::operator()(double r) const {
  const double lo = grid_.front();
  const double hi = grid_.back();
  const double slack = 1e-12 * std::max(1.0, hi);
  if (!(r >= lo - slack && r <= hi + slack)) {
    std::ostringstream msg;
    msg << "r = " << r << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::DomainError, msg.str());
  }
  r = std::clamp(r, lo, hi);
  const auto x = grid_.nodes();
  const std::size_t n = x.size();
  const std::size_t i = grid_.interval(r);

  switch (interpolation_) {
    case Interpolation::PiecewiseLinear: {
      const double t = (r - x[i]) / (x[i + 1] - x[i]);
      return values_[i] + t * (values_[i + 1] - values_[i]);
    }
    case Interpolation::MonotoneCubic: {
      const double h = x[i + 1] - x[i];
      const double t = (r - x[i]) / h;
      const double t2 = t * t, t3 = t2 * t;
      return (2 * t3 - 3 * t2 + 1) * values_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
             (-2 * t3 + 3 * t2) * values_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
    }
    case Interpolation::Cubic: {
      const std::size_t width = std::min<std::size_t>(4, n);
      std::size_t start = i > 0 ? i - 1 : 0;
      start = std::min(start, n - width);
      double sum = 0.0;
      for (std::size_t j = start; j < start + width; ++j) {
        double basis = 1.0;
        for (std::size_t m = start; m < start + width; ++m) {
          if (m != j) basis *= (r - x[m]) / (x[j] - x[m]);
        }
        sum += basis * values_[j];
      }
      return sum;
    }
  }
  return 0.0;
}

double RadialFunction::sup_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::fabs(v));
  return s;
}

}  // namespace radiant
