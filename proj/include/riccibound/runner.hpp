#pragma once

#include <string>
#include <vector>

#include "riccibound/report.hpp"
#include "riccibound/scenario.hpp"

namespace riccibound {

struct RunResult {
    std::vector<CheckResult> checks;
    int exit_code = 0;
};

/// Writes one CSV of (t, volume, ebg, bg) per declared space plus the
/// monotonicity gap reports into <out>/report.json.
RunResult run_bounds(const Scenario& scenario, const std::string& out_dir);

/// Runs every property suite and writes <out>/report.json. Exit code is
/// nonzero iff any proved-inequality check fails.
RunResult run_verify(const Scenario& scenario, const std::string& out_dir);

/// Jacobi suites only.
RunResult run_jacobi_lab(const Scenario& scenario, const std::string& out_dir);

/// Series checks plus a series.json with the exact coefficients per space.
RunResult run_series(const Scenario& scenario, const std::string& out_dir);

/// Large-radius checks only.
RunResult run_asymptotics(const Scenario& scenario, const std::string& out_dir);

}  // namespace riccibound
