#include "radiant/serialize.hpp"

#include <cmath>

namespace radiant {

namespace {

// JSON has no inf/nan; they are written as strings so reports stay parseable.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json numbers(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

}  // namespace

Json to_json(const Space& space) {
  Json j{{"spec", space.spec()}, {"n", space.n()}, {"Q", space.Q()}};
  if (space.is_euclidean()) {
    j["kind"] = "euclidean";
    j["d"] = space.euclid().d;
  } else {
    j["kind"] = "damek-ricci";
    j["p"] = space.dr().p;
    j["q"] = space.dr().q;
  }
  return j;
}

Json to_json(const RadialFunction& f) {
  return {{"interpolation", to_string(f.interpolation())},
          {"r", numbers(f.grid().nodes())},
          {"values", numbers(f.values())}};
}

Json to_json(const ConvergenceVerdict& v) {
  if (const auto* c = std::get_if<Converges>(&v)) {
    return {{"verdict", "converges"}, {"value", number(c->value)}, {"error_estimate", number(c->error_estimate)}};
  }
  if (const auto* d = std::get_if<Diverges>(&v)) {
    return {{"verdict", "diverges"},
            {"partial_sums", numbers(d->partial_sums)},
            {"fitted_tail_exponent", number(d->fitted_tail_exponent)}};
  }
  return {{"verdict", "inconclusive"}, {"reason", std::get<Inconclusive>(v).reason}};
}

Json to_json(const Classification& c) {
  Json j{{"verdict", verdict_name(c)}};
  if (const auto* b = std::get_if<Bounded>(&c)) {
    j["c0"] = number(b->c0);
    j["I_value"] = number(b->I_value);
  } else if (const auto* l = std::get_if<Large>(&c)) {
    j["label"] = l->label;
    j["probed_c"] = numbers(l->probed_c);
    j["evidence"] = to_json(ConvergenceVerdict{l->evidence});
  } else {
    j["reason"] = std::get<Inconclusive>(c).reason;
  }
  return j;
}

Json to_json(const KoResult& ko) { return {{"verdict", to_string(ko.verdict)}, {"outer", to_json(ko.outer)}}; }

Json to_json(const HypothesisReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"declared", c.declared}, {"passed", c.passed}, {"note", c.note}});
  }
  Json violations = Json::array();
  for (const auto& w : rep.violations) {
    violations.push_back({{"hypothesis", w.hypothesis}, {"r", number(w.r)}, {"t", number(w.t)}, {"detail", w.detail}});
  }
  return {{"checks", checks}, {"violations", violations}};
}

Json to_json(const Solution& sol) {
  Json kind;
  if (const auto* b = std::get_if<BallKind>(&sol.kind)) {
    kind = {{"type", "ball"}, {"R", b->R}, {"boundary_value", b->boundary_value}};
  } else {
    kind = {{"type", "entire"}, {"r_max_computed", std::get<EntireKind>(sol.kind).r_max_computed}};
  }
  return {{"space", to_json(sol.space)},
          {"kind", kind},
          {"method", to_string(sol.method)},
          {"center_value", number(sol.center_value)},
          {"residual", number(sol.residual)},
          {"iterations", sol.iterations},
          {"increment", number(sol.increment)},
          {"monotonicity_breaks", sol.monotonicity_breaks},
          {"profile", to_json(sol.profile)}};
}

Json to_json(const BoundedResult& res) {
  Json j{{"trivial", res.trivial},
         {"limit_sup", number(res.limit_sup)},
         {"radii", numbers(res.radii)},
         {"center_values", numbers(res.center_values)},
         {"differences", numbers(res.differences)}};
  j["solution"] = res.solution ? to_json(*res.solution) : Json(nullptr);
  return j;
}

Json to_json(const LargeResult& res) {
  return {{"radii", numbers(res.radii)},
          {"lambdas", numbers(res.lambdas)},
          {"overlap_errors", numbers(res.overlap_errors)},
          {"growth_factor", number(res.growth_factor)},
          {"solution", to_json(res.solution)}};
}

Json to_json(const GreenEstimateReport& rep) {
  return {{"space", to_json(rep.space)},
          {"regime", rep.regime == GreenRegime::LargeR ? "large_r" : "small_r"},
          {"radii", numbers(rep.radii)},
          {"ratios", numbers(rep.ratios)},
          {"ratio_min", number(rep.ratio_min)},
          {"ratio_max", number(rep.ratio_max)},
          {"spread", number(rep.spread())}};
}

Json to_json(const HarnackReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row{{"lambda", number(r.lambda)}, {"failed", r.failed}};
    if (r.failed) {
      row["error"] = r.error;
    } else {
      row["sup"] = number(r.sup);
      row["inf"] = number(r.inf);
      row["ratio"] = number(r.ratio);
      row["monotone"] = r.monotone;
    }
    rows.push_back(row);
  }
  return {{"space", to_json(rep.space)},
          {"nonlinearity", rep.nl},
          {"ball_R", rep.ball_R},
          {"compact", {{"r_lo", rep.compact.r_lo}, {"r_hi", rep.compact.r_hi}}},
          {"lambda_grid", numbers(rep.lambda_grid)},
          {"rows", rows},
          {"C_estimate", number(rep.C_estimate)},
          {"stabilized", rep.stabilized},
          {"last_decade_max", number(rep.last_decade_max)},
          {"previous_decade_max", number(rep.previous_decade_max)},
          {"failed_rows", rep.failed_rows}};
}

Json to_json(const ThreeGResult& res) {
  return {{"lhs", number(res.lhs)},
          {"std_error", number(res.std_error)},
          {"rhs_factor", number(res.rhs_factor)},
          {"gamma", number(res.gamma)},
          {"ratio", number(res.ratio)},
          {"samples", res.samples},
          {"collisions", res.collisions}};
}

}  // namespace radiant
