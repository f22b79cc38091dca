#pragma once

/// Named verification suites behind `wildram verify`. Every suite is
/// deterministic in (name, seed, params): per-sample RNG streams are derived
/// from the seed and the sample index, and reports carry no clock data.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace wildram {

struct SuiteOutcome {
    nlohmann::json report;      // byte-stable JSON
    bool all_pass = false;      // fail == 0 and law_violations == 0
    double wall_seconds = 0;    // for stderr display only, never serialized
    std::string csv_header;     // empty when the suite has no CSV projection
    std::vector<std::string> csv_rows;
};

const std::vector<std::string>& suite_names();

/// Runs one suite. Unknown names throw UnknownSuite; params is a JSON object
/// whose recognized keys override suite defaults.
SuiteOutcome run_suite(const std::string& name, uint64_t seed,
                       const nlohmann::json& params);

} // namespace wildram
