#pragma once

#include <string>
#include <variant>
#include <vector>

#include "radiant/geometry.hpp"
#include "radiant/nonlinearity.hpp"

namespace radiant {

/// Criterion integral int_0^inf w(r) phi(r, c) dr with w(r) = r on R^d and w = 1 on NA.
ConvergenceVerdict i_integral(const Space& space, const Nonlinearity& nl, double c, const Tolerance& tol);

/// Same integral for the bare weight p (the separable criterion I(p)).
ConvergenceVerdict p_integral(const Space& space, const RadialWeight& p, const Tolerance& tol);

struct Bounded {
  double c0 = 1.0;
  double I_value = 0.0;
};

struct Large {
  Diverges evidence;               // verdict at the last probed c
  std::vector<double> probed_c;
  std::string label = "sampled-c";
};

using Classification = std::variant<Bounded, Large, Inconclusive>;

inline std::string verdict_name(const Classification& c) {
  if (std::holds_alternative<Bounded>(c)) return "bounded";
  if (std::holds_alternative<Large>(c)) return "large";
  return "inconclusive";
}

/// Separable nonlinearities with the sublinear flag use I(p); nonlinearities
/// flagged H1-H4 sweep c over 2^k, k = 0..10. Anything else is Inconclusive.
Classification classify(const Space& space, const Nonlinearity& nl, const Tolerance& tol);

enum class KoVerdict { Holds, Fails, Inconclusive };
std::string to_string(KoVerdict v);

struct KoResult {
  KoVerdict verdict = KoVerdict::Inconclusive;
  ConvergenceVerdict outer;
};

/// int_1^inf (int_0^s psi)^{-1/2} ds = inf ?
KoResult keller_osserman(const ScalarFn& psi, const Tolerance& tol);

struct Witness {
  std::string hypothesis;
  double r = 0.0;
  double t = 0.0;
  std::string detail;
};

struct HypothesisCheck {
  std::string name;
  bool declared = false;
  bool passed = true;
  std::string note;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;  // h1 (proxy), h2, h3, h4, h1prime
  std::vector<Witness> violations;

  bool passed(const std::string& name) const;
};

HypothesisReport check_hypotheses(const Nonlinearity& nl, std::span<const double> r_samples,
                                  std::span<const double> t_samples);

}  // namespace radiant
