#include "radiant/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radiant {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::ConfigError, what + ": '" + text + "' is not a number");
  }
  return v;
}

std::string format(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

RadialWeight RadialWeight::constant(double value) {
  if (!(value >= 0.0)) throw Error(ErrorKind::DomainError, "weight must be nonnegative");
  return {[value](double) { return value; }, value == 0.0 ? TailModel::exponential(1.0) : TailModel::power(0.0),
          value == 1.0 ? "constant" : "constant:" + format(value)};
}

RadialWeight RadialWeight::exponential(double rate) {
  if (!(rate > 0.0)) throw Error(ErrorKind::DomainError, "exp weight needs a positive rate");
  return {[rate](double r) { return std::exp(-rate * r); }, TailModel::exponential(rate), "exp:" + format(rate)};
}

RadialWeight RadialWeight::power(double exponent) {
  return {[exponent](double r) { return std::pow(1.0 + r, exponent); }, TailModel::power(exponent),
          "power:" + format(exponent)};
}

RadialWeight RadialWeight::table(RadialFunction values) {
  for (double v : values.values()) {
    if (v < 0.0) throw Error(ErrorKind::DomainError, "tabulated weight must be nonnegative");
  }
  const double r_end = values.r_max();
  const double last = values.values().back();
  auto fn = [f = std::move(values), r_end, last](double r) { return r >= r_end ? last : f(std::max(r, f.r_min())); };
  return {fn, last == 0.0 ? TailModel::exponential(1.0) : TailModel::power(0.0), "table"};
}

RadialWeight RadialWeight::parse(const std::string& spec) {
  const auto [name, arg] = split_spec(spec);
  if (name == "constant") return constant(arg.empty() ? 1.0 : parse_number(arg, "weight constant"));
  if (name == "exp") return exponential(parse_number(arg, "weight exp rate"));
  if (name == "power") return power(parse_number(arg, "weight power exponent"));
  throw Error(ErrorKind::ConfigError, "unknown weight '" + spec + "' (constant, exp:rate, power:exponent, table)");
}

Psi Psi::linear() {
  return {[](double t) { return t > 0.0 ? t : 0.0; }, "linear", 1.0};
}

Psi Psi::sqrt() {
  return {[](double t) { return t > 0.0 ? std::sqrt(t) : 0.0; }, "sqrt", 0.5};
}

Psi Psi::power(double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::DomainError, "power psi needs gamma > 0");
  return {[gamma](double t) { return t > 0.0 ? std::pow(t, gamma) : 0.0; }, "power:" + format(gamma), gamma};
}

Psi Psi::zero() {
  return {[](double) { return 0.0; }, "zero", 0.0};
}

Psi Psi::table(RadialFunction values) {
  if (values.r_min() != 0.0) throw Error(ErrorKind::DomainError, "tabulated psi must start at t = 0");
  const auto v = values.values();
  const auto x = values.grid().nodes();
  const std::size_t n = v.size();
  const double t_end = x[n - 1];
  const double last = v[n - 1];
  const double slope = (v[n - 1] - v[n - 2]) / (x[n - 1] - x[n - 2]);
  auto fn = [f = std::move(values), t_end, last, slope](double t) {
    if (t <= 0.0) return 0.0;
    if (t >= t_end) return last + slope * (t - t_end);
    return f(t);
  };
  return {fn, "table", std::nullopt};
}

Psi Psi::parse(const std::string& spec) {
  const auto [name, arg] = split_spec(spec);
  if (name == "linear" && arg.empty()) return linear();
  if (name == "sqrt" && arg.empty()) return sqrt();
  if (name == "zero" && arg.empty()) return zero();
  if (name == "power") return power(parse_number(arg, "psi power gamma"));
  throw Error(ErrorKind::ConfigError, "unknown psi '" + spec + "' (linear, sqrt, power:gamma, zero, table)");
}

Nonlinearity Nonlinearity::separable(RadialWeight p, Psi psi) {
  HypothesisFlags flags{true, true, true, false, {}};
  if (psi.gamma && *psi.gamma <= 1.0) {
    flags.h4_concave = true;
    flags.h1prime = {true, 1.0};
  }
  return separable(std::move(p), std::move(psi), flags);
}

Nonlinearity Nonlinearity::separable(RadialWeight p, Psi psi, HypothesisFlags flags) {
  return Nonlinearity(Separable{std::move(p), std::move(psi)}, flags);
}

Nonlinearity Nonlinearity::general(PhiFn phi, HypothesisFlags flags, TailModel tail, ScalarFn bound, std::string spec) {
  return Nonlinearity(General{std::move(phi), tail, std::move(bound), std::move(spec)}, flags);
}

Nonlinearity Nonlinearity::zero() { return separable(RadialWeight::constant(1.0), Psi::zero()); }

double Nonlinearity::operator()(double r, double t) const {
  if (const auto* s = std::get_if<Separable>(&kind_)) {
    const double psi = s->psi(t);
    return psi == 0.0 ? 0.0 : s->p(r) * psi;
  }
  return std::get<General>(kind_).phi(r, t);
}

double Nonlinearity::weight(double r) const {
  if (const auto* s = std::get_if<Separable>(&kind_)) return s->p(r);
  const auto& g = std::get<General>(kind_);
  return g.bound ? g.bound(r) : g.phi(r, 1.0);
}

Nonlinearity Nonlinearity::with_flags(HypothesisFlags flags) const { return Nonlinearity(kind_, flags); }

TailModel Nonlinearity::tail() const {
  if (const auto* s = std::get_if<Separable>(&kind_)) return s->p.tail;
  return std::get<General>(kind_).tail;
}

std::string Nonlinearity::spec() const {
  if (const auto* s = std::get_if<Separable>(&kind_)) return "p=" + s->p.spec + ";psi=" + s->psi.spec;
  return std::get<General>(kind_).spec;
}

}  // namespace radiant
