#include "radiant/geometry.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

namespace radiant {

Space::Space(Euclidean e) : kind_(e) {
  if (e.d < 3) throw Error(ErrorKind::DomainError, "Euclidean dimension must be at least 3");
}

Space::Space(DamekRicci dr) : kind_(dr) {
  if (dr.p < 1 || dr.q < 0 || dr.p + dr.q < 2) {
    throw Error(ErrorKind::DomainError, "Damek-Ricci space needs p >= 1, q >= 0, p + q >= 2");
  }
}

Space Space::parse(const std::string& spec) {
  static const std::regex euclid_re(R"(\s*euclid\s*:\s*(\d+)\s*)");
  static const std::regex dr_re(R"(\s*dr\s*:\s*(\d+)\s*,\s*(\d+)\s*)");
  std::smatch m;
  try {
    if (std::regex_match(spec, m, euclid_re)) return Space::euclidean(std::stoi(m[1]));
    if (std::regex_match(spec, m, dr_re)) return Space::damek_ricci(std::stoi(m[1]), std::stoi(m[2]));
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, "space '" + spec + "': " + e.what());
  }
  throw Error(ErrorKind::ConfigError, "space '" + spec + "' is not of the form euclid:d or dr:p,q");
}

int Space::n() const {
  if (is_euclidean()) return euclid().d;
  return dr().p + dr().q + 1;
}

double Space::Q() const {
  if (is_euclidean()) return 0.0;
  return 0.5 * dr().p + dr().q;
}

std::string Space::spec() const {
  std::ostringstream s;
  if (is_euclidean()) {
    s << "euclid:" << euclid().d;
  } else {
    s << "dr:" << dr().p << "," << dr().q;
  }
  return s.str();
}

bool Space::operator==(const Space& other) const { return spec() == other.spec(); }

namespace {

void require_positive(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::DomainError, "radius must be positive and finite");
}

// log sinh(x) and log cosh(x) without overflow for large x.
double log_sinh(double x) {
  if (x < 20.0) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}
double log_cosh(double x) {
  if (x < 20.0) return std::log(std::cosh(x));
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

constexpr double kLogDomainThreshold = 300.0;

}  // namespace

double log_volume_density(const Space& space, double r) {
  require_positive(r);
  if (space.is_euclidean()) return (space.euclid().d - 1) * std::log(r);
  const auto [p, q] = space.dr();
  const double half = 0.5 * r;
  return (p + q) * std::numbers::ln2 + (p + q) * log_sinh(half) + q * log_cosh(half);
}

double volume_density(const Space& space, double r) {
  require_positive(r);
  if (space.is_euclidean()) return std::pow(r, space.euclid().d - 1);
  if (space.Q() * r > kLogDomainThreshold) return std::exp(log_volume_density(space, r));
  const auto [p, q] = space.dr();
  const double half = 0.5 * r;
  return std::pow(2.0 * std::sinh(half), p + q) * std::pow(std::cosh(half), q);
}

double radial_drift(const Space& space, double r) {
  require_positive(r);
  if (space.is_euclidean()) return (space.euclid().d - 1) / r;
  const auto [p, q] = space.dr();
  const double half = 0.5 * r;
  return 0.5 * (p + q) / std::tanh(half) + 0.5 * q * std::tanh(half);
}

double radial_drift_alt(const Space& space, double r) {
  require_positive(r);
  if (space.is_euclidean()) return radial_drift(space, r);
  const auto [p, q] = space.dr();
  return 0.5 * p / std::tanh(0.5 * r) + q / std::tanh(r);
}

double sphere_area(int n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double sphere_area(const Space& space) { return sphere_area(space.n()); }

double log_heat_kernel_bound(const HeatBoundParams& params) {
  if (!params.space.is_damek_ricci()) {
    throw Error(ErrorKind::UnsupportedSpace, "heat kernel bound is stated for Damek-Ricci spaces");
  }
  const double t = params.t;
  const double r = params.r;
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::DomainError, "heat kernel bound needs t > 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::DomainError, "heat kernel bound needs r >= 0");
  const double n = params.space.n();
  const double Q = params.space.Q();
  return -1.5 * std::log(t) + std::log1p(r) + 0.5 * (n - 3.0) * std::log1p((1.0 + r) / t) -
         0.25 * Q * Q * t - 0.5 * Q * r - r * r / (4.0 * t);
}

double heat_kernel_bound(const HeatBoundParams& params) { return std::exp(log_heat_kernel_bound(params)); }

}  // namespace radiant
