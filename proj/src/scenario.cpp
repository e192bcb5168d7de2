#include "riccibound/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace riccibound {

void Scenario::validate() const {
    if (t_grid.start < 0.0) throw std::invalid_argument("scenario: t_grid.start must be >= 0");
    if (t_grid.points < 2) throw std::invalid_argument("scenario: t_grid.points must be >= 2");
    if (!(t_grid.stop > t_grid.start)) throw std::invalid_argument("scenario: t_grid.stop must exceed start");
    if (quadrature.nodes < 8) throw std::invalid_argument("scenario: quadrature.nodes must be >= 8");
    if (!(jacobi.horizon > 0.0) || !(jacobi.step > 0.0))
        throw std::invalid_argument("scenario: jacobi horizon and step must be positive");
    if (jacobi.trials < 1) throw std::invalid_argument("scenario: jacobi.trials must be >= 1");
    if (jacobi.p_list.empty()) throw std::invalid_argument("scenario: jacobi.p_list must not be empty");
    for (double p : jacobi.p_list)
        if (p < 1.0) throw std::invalid_argument("scenario: jacobi powers must be >= 1");
    if (random_spectra.count < 0) throw std::invalid_argument("scenario: random_spectra.count must be >= 0");
    if (random_spectra.dim < 2) throw std::invalid_argument("scenario: random_spectra.dim must be >= 2");
    for (const auto& s : spaces) ProductSpace(s.factors);  // construction validates
}

std::vector<double> Scenario::grid() const {
    std::vector<double> out(t_grid.points);
    const double h = (t_grid.stop - t_grid.start) / (t_grid.points - 1);
    for (int i = 0; i < t_grid.points; ++i) out[i] = t_grid.start + i * h;
    out.back() = t_grid.stop;
    return out;
}

std::vector<double> Scenario::fine_grid() const {
    const double span = t_grid.stop - t_grid.start;
    const int cells = std::max(t_grid.points - 1, static_cast<int>(std::ceil(span / 0.01)));
    std::vector<double> out(cells + 1);
    const double h = span / cells;
    for (int i = 0; i <= cells; ++i) out[i] = t_grid.start + i * h;
    out.back() = t_grid.stop;
    return out;
}

Scenario Scenario::defaults() {
    Scenario s;
    s.spaces = {
        {"h2xr2", {{2, -1.0}, {2, 0.0}}},
        {"h3xr2", {{3, -1.0}, {2, 0.0}}},
        {"r4", {{4, 0.0}}},
    };
    return s;
}

namespace {

using nlohmann::json;

SphereQuadratureMode parse_mode(const std::string& s) {
    if (s == "exact-reduced") return SphereQuadratureMode::ExactReduced;
    if (s == "monte-carlo") return SphereQuadratureMode::MonteCarlo;
    throw std::invalid_argument("scenario: unknown quadrature mode '" + s + "'");
}

std::string mode_name(SphereQuadratureMode m) {
    return m == SphereQuadratureMode::ExactReduced ? "exact-reduced" : "monte-carlo";
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
    const json j = json::parse(text);
    Scenario s = Scenario::defaults();
    if (j.contains("spaces")) {
        s.spaces.clear();
        int index = 0;
        for (const auto& sp : j.at("spaces")) {
            SpaceDecl decl;
            decl.name = sp.value("name", "space" + std::to_string(index++));
            for (const auto& f : sp.at("factors"))
                decl.factors.push_back({f.at("dim").get<int>(), f.at("curvature").get<double>()});
            s.spaces.push_back(std::move(decl));
        }
    }
    if (j.contains("t_grid")) {
        const auto& g = j.at("t_grid");
        s.t_grid.start = g.value("start", s.t_grid.start);
        s.t_grid.stop = g.value("stop", s.t_grid.stop);
        s.t_grid.points = g.value("points", s.t_grid.points);
    }
    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        if (q.contains("mode")) s.quadrature.mode = parse_mode(q.at("mode").get<std::string>());
        s.quadrature.nodes = q.value("nodes", s.quadrature.nodes);
        s.quadrature.seed = q.value("seed", s.quadrature.seed);
    }
    if (j.contains("jacobi")) {
        const auto& q = j.at("jacobi");
        s.jacobi.horizon = q.value("horizon", s.jacobi.horizon);
        s.jacobi.step = q.value("step", s.jacobi.step);
        s.jacobi.trials = q.value("trials", s.jacobi.trials);
        s.jacobi.seed = q.value("seed", s.jacobi.seed);
        if (q.contains("p_list")) s.jacobi.p_list = q.at("p_list").get<std::vector<double>>();
    }
    if (j.contains("random_spectra")) {
        const auto& q = j.at("random_spectra");
        s.random_spectra.count = q.value("count", s.random_spectra.count);
        s.random_spectra.dim = q.value("dim", s.random_spectra.dim);
        s.random_spectra.eigenvalue_min = q.value("eigenvalue_min", s.random_spectra.eigenvalue_min);
        s.random_spectra.eigenvalue_max = q.value("eigenvalue_max", s.random_spectra.eigenvalue_max);
    }
    s.outputs = j.value("outputs", s.outputs);
    s.arcsinh_columns = j.value("arcsinh_columns", s.arcsinh_columns);
    s.validate();
    return s;
}

std::string Scenario::to_json_text() const {
    json j;
    j["spaces"] = json::array();
    for (const auto& sp : spaces) {
        json f = json::array();
        for (const auto& fac : sp.factors) f.push_back({{"dim", fac.dim}, {"curvature", fac.curvature}});
        j["spaces"].push_back({{"name", sp.name}, {"factors", f}});
    }
    j["t_grid"] = {{"start", t_grid.start}, {"stop", t_grid.stop}, {"points", t_grid.points}};
    j["quadrature"] = {{"mode", mode_name(quadrature.mode)},
                       {"nodes", quadrature.nodes},
                       {"seed", quadrature.seed}};
    j["jacobi"] = {{"horizon", jacobi.horizon},
                   {"step", jacobi.step},
                   {"trials", jacobi.trials},
                   {"seed", jacobi.seed},
                   {"p_list", jacobi.p_list}};
    j["random_spectra"] = {{"count", random_spectra.count},
                           {"dim", random_spectra.dim},
                           {"eigenvalue_min", random_spectra.eigenvalue_min},
                           {"eigenvalue_max", random_spectra.eigenvalue_max}};
    j["outputs"] = outputs;
    j["arcsinh_columns"] = arcsinh_columns;
    return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return Scenario::from_json_text(buf.str());
}

}  // namespace riccibound
