#pragma once

#include <iosfwd>

#include "config.hpp"

namespace radiant::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Each command writes <out>/report.json (and timing.json beside it) and
// returns the process exit code: 0 conclusive, 1 error, 2 inconclusive.
int cmd_classify(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);

int run(const RunConfig& cfg, std::ostream& log);

}  // namespace radiant::cli
