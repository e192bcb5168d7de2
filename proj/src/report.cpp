#include "riccibound/report.hpp"

#include <json.hpp>

#include <algorithm>

namespace riccibound {

std::string report_to_json(std::vector<CheckResult> checks, std::uint64_t seed) {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    nlohmann::json out;
    out["seed"] = seed;
    out["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["trials"] = c.trials;
        e["min_margin"] = c.min_margin;
        e["pass"] = c.pass;
        if (c.exploratory) e["exploratory"] = true;
        if (c.skipped) e["skipped"] = true;
        out["checks"].push_back(e);
    }
    return out.dump(2) + "\n";
}

bool all_proved_checks_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.exploratory && !c.pass) return false;
    return true;
}

}  // namespace riccibound
