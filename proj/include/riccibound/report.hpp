#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace riccibound {

/// One verification check outcome as it appears in report.json.
struct CheckResult {
    std::string name;
    long trials = 0;
    double min_margin = 0.0;
    bool pass = false;
    bool exploratory = false;  // evidence-only entries never fail a run
    bool skipped = false;      // precondition not met
};

/// Serializes checks sorted by name; byte-stable for fixed inputs.
std::string report_to_json(std::vector<CheckResult> checks, std::uint64_t seed);

/// True when every non-exploratory check passed.
bool all_proved_checks_pass(const std::vector<CheckResult>& checks);

}  // namespace riccibound
