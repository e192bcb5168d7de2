#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riccibound/model_spaces.hpp"
#include "riccibound/sn_kernel.hpp"

namespace riccibound {

/// Declarative run configuration; see scenarios/default.json for the schema.
struct Scenario {
    struct SpaceDecl {
        std::string name;
        std::vector<SpaceFactor> factors;
    };
    struct TGrid {
        double start = 0.1;
        double stop = 10.0;
        int points = 100;
    };
    struct JacobiConfig {
        double horizon = 5.0;
        double step = 1e-3;
        int trials = 1000;
        std::uint64_t seed = 4242;
        std::vector<double> p_list = {1.0, 2.0, 3.0, 5.0};
    };
    struct RandomSpectra {
        int count = 50;
        int dim = 4;
        double eigenvalue_min = -3.0;
        double eigenvalue_max = 1.0;
    };

    std::vector<SpaceDecl> spaces;
    TGrid t_grid;
    SphereQuadrature quadrature{SphereQuadratureMode::ExactReduced, 64, 20240817};
    JacobiConfig jacobi;
    RandomSpectra random_spectra;
    std::string outputs = "out";
    bool arcsinh_columns = false;

    void validate() const;
    std::vector<double> grid() const;

    /// Uniform refinement of [start, stop] with spacing <= 0.01, as the
    /// finite-difference monotonicity checks require.
    std::vector<double> fine_grid() const;

    static Scenario defaults();
    static Scenario from_json_text(const std::string& text);
    std::string to_json_text() const;
};

Scenario load_scenario(const std::string& path);

}  // namespace riccibound
