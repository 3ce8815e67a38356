#include "radiant/classify.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

namespace radiant {

namespace {

TailModel weighted_tail(const Space& space, TailModel tail) {
  if (space.is_euclidean() && tail.kind == TailModel::Kind::Power) tail.parameter += 1.0;
  return tail;
}

ConvergenceVerdict criterion(const Space& space, const ScalarFn& f, TailModel tail, const Tolerance& tol) {
  const bool euclid = space.is_euclidean();
  auto integrand = [&](double r) { return euclid ? r * f(r) : f(r); };
  return integrate_improper(integrand, 0.0, weighted_tail(space, tail), tol);
}

}  // namespace

ConvergenceVerdict i_integral(const Space& space, const Nonlinearity& nl, double c, const Tolerance& tol) {
  if (!(c > 0.0)) throw Error(ErrorKind::DomainError, "criterion integral needs c > 0");
  return criterion(space, [&](double r) { return nl(r, c); }, nl.tail(), tol);
}

ConvergenceVerdict p_integral(const Space& space, const RadialWeight& p, const Tolerance& tol) {
  return criterion(space, p.fn, p.tail, tol);
}

Classification classify(const Space& space, const Nonlinearity& nl, const Tolerance& tol) {
  const auto& f = nl.flags();
  if (!f.h2_increasing || !f.h3_zero_for_nonpositive) {
    return Inconclusive{"hypotheses: H2 and H3 are required"};
  }

  if (nl.is_separable() && f.h1prime.holds) {
    const ConvergenceVerdict v = p_integral(space, nl.as_separable().p, tol);
    if (const auto* c = std::get_if<Converges>(&v)) return Bounded{1.0, c->value};
    if (const auto* d = std::get_if<Diverges>(&v)) return Large{*d, {1.0}};
    return std::get<Inconclusive>(v);
  }

  if (!(f.h1_kato_local && f.h4_concave)) {
    return Inconclusive{"hypotheses: neither the separable sublinear set nor H1-H4 is declared"};
  }

  std::vector<double> probed;
  std::optional<Diverges> last;
  bool undecided = false;
  for (int k = 0; k <= 10; ++k) {
    const double c = std::ldexp(1.0, k);
    probed.push_back(c);
    const ConvergenceVerdict v = i_integral(space, nl, c, tol);
    if (const auto* conv = std::get_if<Converges>(&v)) return Bounded{c, conv->value};
    if (const auto* d = std::get_if<Diverges>(&v)) {
      last = *d;
    } else {
      undecided = true;
    }
  }
  if (undecided || !last) return Inconclusive{"c sweep ended with mixed verdicts"};
  return Large{*last, probed};
}

// ---------------------------------------------------------------------------

std::string to_string(KoVerdict v) {
  switch (v) {
    case KoVerdict::Holds: return "holds";
    case KoVerdict::Fails: return "fails";
    case KoVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

KoResult keller_osserman(const ScalarFn& psi, const Tolerance& tol) {
  // Psi(s) = int_0^s psi is anchored at s = 0, 1, 2, 4, 8, ... and filled in
  // by one short quadrature from the nearest anchor below.
  std::vector<double> anchors{0.0};
  std::vector<double> values{0.0};
  Tolerance inner = tol;
  inner.abs = 1e-3 * tol.abs;
  inner.rel = 1e-3 * tol.rel;
  auto cumulative = [&](double s) {
    while (anchors.back() < s) {
      const double next = anchors.back() == 0.0 ? 1.0 : 2.0 * anchors.back();
      values.push_back(values.back() + integrate_adaptive(psi, anchors.back(), next, inner).value);
      anchors.push_back(next);
    }
    const auto it = std::upper_bound(anchors.begin(), anchors.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - anchors.begin()) - 1;
    if (anchors[i] == s) return values[i];
    return values[i] + integrate_adaptive(psi, anchors[i], s, inner).value;
  };
  auto outer = [&](double s) {
    const double big_psi = cumulative(s);
    if (!(big_psi > 0.0)) throw Error(ErrorKind::NonFinite, "int_0^s psi vanishes; psi must be positive somewhere");
    return 1.0 / std::sqrt(big_psi);
  };
  KoResult result{KoVerdict::Inconclusive, integrate_improper(outer, 1.0, TailModel::unknown(), tol)};
  if (diverged(result.outer)) result.verdict = KoVerdict::Holds;
  if (converged(result.outer)) result.verdict = KoVerdict::Fails;
  return result;
}

// ---------------------------------------------------------------------------

bool HypothesisReport::passed(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c.passed;
  }
  throw Error(ErrorKind::DomainError, "no hypothesis named " + name);
}

HypothesisReport check_hypotheses(const Nonlinearity& nl, std::span<const double> r_samples,
                                  std::span<const double> t_samples) {
  const auto& flags = nl.flags();
  std::vector<double> ts(t_samples.begin(), t_samples.end());
  std::sort(ts.begin(), ts.end());
  std::vector<double> pos;
  std::copy_if(ts.begin(), ts.end(), std::back_inserter(pos), [](double t) { return t >= 0.0; });

  HypothesisReport rep;
  std::map<std::string, std::size_t> index;
  auto add = [&](const std::string& name, bool declared, const std::string& note) {
    index[name] = rep.checks.size();
    rep.checks.push_back({name, declared, true, note});
  };
  add("h1", flags.h1_kato_local, "proxy check: local boundedness of r -> phi(r,t) on the samples");
  add("h2", flags.h2_increasing, "nondecreasing in t");
  add("h3", flags.h3_zero_for_nonpositive, "phi(r,t) = 0 for t <= 0");
  add("h4", flags.h4_concave, "midpoint concavity on t >= 0, tolerance 1e-10");
  const double c = flags.h1prime.holds ? flags.h1prime.c : 1.0;
  {
    std::ostringstream note;
    note << "phi(r,t) <= " << c << " p(r) (t+1)";
    add("h1prime", flags.h1prime.holds, note.str());
  }
  auto fail = [&](const std::string& name, double r, double t, const std::string& detail) {
    auto& check = rep.checks[index[name]];
    if (check.passed) rep.violations.push_back({name, r, t, detail});
    check.passed = false;
  };

  for (double r : r_samples) {
    std::vector<double> phi(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) phi[k] = nl(r, ts[k]);

    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (!std::isfinite(phi[k])) fail("h1", r, ts[k], "non-finite value");
      if (ts[k] <= 0.0 && phi[k] != 0.0) fail("h3", r, ts[k], "nonzero at t <= 0");
      if (k > 0 && phi[k] < phi[k - 1] - 1e-12 * (1.0 + std::fabs(phi[k - 1]))) {
        fail("h2", r, ts[k], "decreases between consecutive samples");
      }
    }

    const double p = nl.weight(r);
    for (double t : pos) {
      const double v = nl(r, t);
      if (v > c * p * (t + 1.0) * (1.0 + 1e-12) + 1e-300) fail("h1prime", r, t, "exceeds c p(r) (t+1)");
    }

    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        const double a = nl(r, pos[i]);
        const double b = nl(r, pos[j]);
        const double mid = nl(r, 0.5 * (pos[i] + pos[j]));
        if (mid < 0.5 * (a + b) - 1e-10 * (1.0 + std::fabs(mid))) {
          std::ostringstream detail;
          detail << "midpoint of [" << pos[i] << ", " << pos[j] << "] lies below the chord";
          fail("h4", r, pos[j], detail.str());
        }
      }
    }
  }
  return rep;
}

}  // namespace radiant
