#pragma once

#include <json.hpp>

#include "radiant/classify.hpp"
#include "radiant/green.hpp"
#include "radiant/harnack.hpp"
#include "radiant/solver.hpp"

namespace radiant {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Space& space);
Json to_json(const RadialFunction& f);
Json to_json(const ConvergenceVerdict& v);
Json to_json(const Classification& c);
Json to_json(const KoResult& ko);
Json to_json(const HypothesisReport& rep);
Json to_json(const Solution& sol);
Json to_json(const BoundedResult& res);
Json to_json(const LargeResult& res);
Json to_json(const GreenEstimateReport& rep);
Json to_json(const HarnackReport& rep);
Json to_json(const ThreeGResult& res);

}  // namespace radiant
