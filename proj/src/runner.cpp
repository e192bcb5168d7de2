#include "riccibound/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "riccibound/curvature_invariants.hpp"
#include "riccibound/verify_suites.hpp"

namespace riccibound {

namespace {

namespace fs = std::filesystem;

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("csv emitter: non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_curve_csv(const fs::path& path, const BoundCurve& curve, bool arcsinh) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "t,volume,ebg,bg";
    if (arcsinh) out << ",asinh_volume,asinh_ebg,asinh_bg";
    out << "\n";
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        out << format_double(curve.times[i]) << ',' << format_double(curve.volume[i]) << ','
            << format_double(curve.ebg[i]) << ',' << format_double(curve.bg[i]);
        if (arcsinh)
            out << ',' << format_double(std::asinh(curve.volume[i])) << ','
                << format_double(std::asinh(curve.ebg[i])) << ','
                << format_double(std::asinh(curve.bg[i]));
        out << "\n";
    }
}

void write_report(const fs::path& dir, const std::vector<CheckResult>& checks,
                  std::uint64_t seed) {
    fs::create_directories(dir);
    std::ofstream out(dir / "report.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report.json in " + dir.string());
    out << report_to_json(checks, seed);
}

RunResult finish(const Scenario& scenario, const std::string& out_dir,
                 std::vector<CheckResult> checks) {
    write_report(out_dir, checks, scenario.quadrature.seed);
    RunResult res;
    res.exit_code = all_proved_checks_pass(checks) ? 0 : 1;
    res.checks = std::move(checks);
    return res;
}

}  // namespace

RunResult run_bounds(const Scenario& scenario, const std::string& out_dir) {
    scenario.validate();
    fs::create_directories(out_dir);
    std::vector<CheckResult> checks;
    for (const auto& decl : scenario.spaces) {
        const ProductSpace space(decl.factors);
        const BoundCurve csv_curve =
            product_bound_curve(space, scenario.grid(), scenario.quadrature);
        csv_curve.validate();
        write_curve_csv(fs::path(out_dir) / (decl.name + ".csv"), csv_curve,
                        scenario.arcsinh_columns);

        const BoundCurve fine_curve =
            product_bound_curve(space, scenario.fine_grid(), scenario.quadrature);
        const auto curve_checks = bounds_checks_for_curve("bounds." + decl.name, fine_curve);
        checks.insert(checks.end(), curve_checks.begin(), curve_checks.end());
    }
    return finish(scenario, out_dir, std::move(checks));
}

RunResult run_verify(const Scenario& scenario, const std::string& out_dir) {
    scenario.validate();
    return finish(scenario, out_dir, run_all_suites(scenario));
}

RunResult run_jacobi_lab(const Scenario& scenario, const std::string& out_dir) {
    scenario.validate();
    return finish(scenario, out_dir, jacobi_suite(scenario));
}

RunResult run_series(const Scenario& scenario, const std::string& out_dir) {
    scenario.validate();
    fs::create_directories(out_dir);

    // Exact coefficients per declared space, as JSON lines.
    std::ofstream series(fs::path(out_dir) / "series.json", std::ios::binary);
    series << "[\n";
    bool first = true;
    for (const auto& decl : scenario.spaces) {
        const ProductSpace space(decl.factors);
        if (space.total_dim() < 3) continue;
        const RiemannInvariants inv = invariants_from_product(space);
        const Rational lambda_min(ricci_spectrum(space).lambda_min());
        for (const auto& s :
             {gray_series(inv), bound_series(BoundKind::EBG, inv),
              bound_series(BoundKind::BG, inv, lambda_min), bound_series(BoundKind::HOfR, inv)}) {
            if (!first) series << ",\n";
            series << "  " << s.to_json();
            first = false;
        }
    }
    series << "\n]\n";

    return finish(scenario, out_dir, series_suite(scenario));
}

RunResult run_asymptotics(const Scenario& scenario, const std::string& out_dir) {
    scenario.validate();
    return finish(scenario, out_dir, asymptotics_suite(scenario));
}

}  // namespace riccibound
