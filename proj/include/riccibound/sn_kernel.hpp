#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "riccibound/model_spaces.hpp"
#include "riccibound/numerics.hpp"

namespace riccibound {

enum class SphereQuadratureMode { ExactReduced, MonteCarlo };

/// How to average over departure directions. In exact-reduced mode the unit
/// sphere is reduced to the Dirichlet(1/2,...) law of squared components and
/// integrated with tensor-product Gauss-Jacobi rules when there are at most
/// three distinct eigenvalues; with more, or in monte-carlo mode, directions
/// are sampled (seeded; `nodes` is the sample count in monte-carlo mode).
struct SphereQuadrature {
    SphereQuadratureMode mode = SphereQuadratureMode::ExactReduced;
    int nodes = 64;
    std::uint64_t seed = 0;
};

/// Weighted points on the simplex {w_i >= 0, sum w_i = 1} approximating a
/// Dirichlet(alpha) law; weights sum to 1.
struct DirichletRule {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
};

DirichletRule dirichlet_rule(const std::vector<double>& alphas, const SphereQuadrature& quad);

/// Discrete direction measure on Ricci-form values. All the angular integrals
/// in the bounds reduce to weighted sums over (value, weight) nodes; weights
/// sum to Omega_{d-1}, so no further normalization is applied downstream.
struct SphereRule {
    std::vector<double> values;
    std::vector<double> weights;
    int dim = 0;

    std::size_t size() const { return values.size(); }
};

SphereRule build_sphere_rule(const RicciSpectrum& spectrum, const SphereQuadrature& quad);

/// Compress a large (Monte Carlo) rule into at most max_nodes weight-equal
/// bins; bin nodes are weight-averaged so linear statistics are preserved.
SphereRule bin_rule(const SphereRule& rule, std::size_t max_nodes);

/// Area element of the worst-direction comparison space,
/// Omega_{d-1} sn(lambda_min/(d-1), t)^{d-1}.
double bg_area(const RicciSpectrum& spectrum, double t);

/// int_0^t bg_area.
double bg_bound(const RicciSpectrum& spectrum, double t);

/// Direction-resolved area element: integral over bearings of
/// sn(Ric(X,X)/(d-1), t)^{d-1}.
double ebg_area(const SphereRule& rule, double t);
double ebg_area(const RicciSpectrum& spectrum, double t, const SphereQuadrature& quad);

/// int_0^t ebg_area.
double ebg_bound(const SphereRule& rule, double t);
double ebg_bound(const RicciSpectrum& spectrum, double t, const SphereQuadrature& quad);

/// Cumulative bound volumes on an ascending grid (rule built once by caller).
std::vector<double> ebg_bound_cumulative(const SphereRule& rule, const std::vector<double>& grid);
std::vector<double> bg_bound_cumulative(const RicciSpectrum& spectrum, const std::vector<double>& grid);

struct SphereAverage {
    double mean = 0.0;
    double std_error = 0.0;  // 0 in exact-reduced mode
    std::size_t samples = 0;
};

/// Normalized average over the unit sphere of f(Ric(X,X)).
SphereAverage sphere_average(const RicciSpectrum& spectrum,
                             const std::function<double(double)>& f,
                             const SphereQuadrature& quad);

struct BeamAsymptotics {
    double phi_max = 0.0;  // half-width of the dominant beam around the most negative axis
    double ratio = 0.0;    // large-radius eBG/BG for the one-negative-axis spectrum
};

/// Large-radius beam geometry for the maximally anisotropic spectrum:
/// phi_max^2 = (d-2)/((d-1)t), ratio = (2/Omega_{d-1})(2pi/((d-1)t))^{(d-1)/2}.
BeamAsymptotics beam_asymptotics(int d, double t);

/// Sampled (t, volume, eBG, BG) triple-curve. The volume column is empty when
/// no exact ground truth exists (bare spectra).
struct BoundCurve {
    std::vector<double> times;
    std::vector<double> volume;
    std::vector<double> ebg;
    std::vector<double> bg;

    /// Checks lengths, nonnegativity, and volume <= eBG <= BG within
    /// tolerance; throws on violation.
    void validate(double tol_scale = 1e-9) const;
};

/// Builds eBG and BG columns on the grid with a single sphere rule; the
/// volume column is left empty (product-space callers fill it in).
BoundCurve bound_curve(const RicciSpectrum& spectrum, const std::vector<double>& grid,
                       const SphereQuadrature& quad);

}  // namespace riccibound
