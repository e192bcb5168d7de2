#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "riccibound/runner.hpp"
#include "riccibound/scenario.hpp"

namespace {

riccibound::Scenario make_scenario(const std::string& path, std::optional<std::uint64_t> seed) {
    riccibound::Scenario scenario =
        path.empty() ? riccibound::Scenario::defaults() : riccibound::load_scenario(path);
    if (seed) {
        scenario.quadrature.seed = *seed;
        scenario.jacobi.seed = *seed;
    }
    scenario.validate();
    return scenario;
}

void print_checks(const riccibound::RunResult& result) {
    for (const auto& c : result.checks) {
        const char* status = c.pass ? "PASS" : "FAIL";
        if (c.skipped) status = "SKIP";
        if (c.exploratory) status = "INFO";
        std::printf("%-4s %-45s trials=%-6ld min_margin=% .3e\n", status, c.name.c_str(), c.trials,
                    c.min_margin);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geodesic-ball volume bounds: curves, series, and property suites"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string scenario_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    app.add_option("--scenario", scenario_path, "Scenario JSON file (defaults baked in)");
    app.add_option("--out", out_dir, "Output directory (overrides the scenario)");
    app.add_option("--seed", seed, "Override the scenario seeds");

    auto* bounds = app.add_subcommand("bounds", "Emit (t, volume, eBG, BG) CSV curves per space");
    auto* jacobi = app.add_subcommand("jacobi-lab", "Run the Jacobi property suites");
    auto* series = app.add_subcommand("series", "Exact small-ball series and fitted checks");
    auto* asym = app.add_subcommand("asymptotics", "Large-radius beam checks");
    auto* verify = app.add_subcommand("verify", "Run every suite and write report.json");

    CLI11_PARSE(app, argc, argv);

    try {
        const riccibound::Scenario scenario = make_scenario(scenario_path, seed);
        const std::string out = out_dir.empty() ? scenario.outputs : out_dir;
        riccibound::RunResult result;
        if (bounds->parsed()) result = riccibound::run_bounds(scenario, out);
        else if (jacobi->parsed()) result = riccibound::run_jacobi_lab(scenario, out);
        else if (series->parsed()) result = riccibound::run_series(scenario, out);
        else if (asym->parsed()) result = riccibound::run_asymptotics(scenario, out);
        else result = riccibound::run_verify(scenario, out);
        print_checks(result);
        return result.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
