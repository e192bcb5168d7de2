#pragma once

#include <cstdint>
#include <vector>

#include "riccibound/bounds_monotonicity.hpp"
#include "riccibound/report.hpp"
#include "riccibound/scenario.hpp"

namespace riccibound {

/// Bound curve of a product space with the exact volume column filled in.
BoundCurve product_bound_curve(const ProductSpace& space, const std::vector<double>& grid,
                               const SphereQuadrature& quad);

/// Ordering plus the proved monotonicity checks for one sampled curve.
std::vector<CheckResult> bounds_checks_for_curve(const std::string& prefix,
                                                 const BoundCurve& curve);

/// Random spectrum with `dim` eigenvalues drawn uniformly from [lo, hi].
RicciSpectrum random_spectrum(int dim, double lo, double hi, std::uint64_t seed);

std::vector<CheckResult> bounds_suite(const Scenario& scenario);
std::vector<CheckResult> random_spectra_suite(const Scenario& scenario);
std::vector<CheckResult> jacobi_suite(const Scenario& scenario);
std::vector<CheckResult> series_suite(const Scenario& scenario);
std::vector<CheckResult> operator_suite(const Scenario& scenario);
std::vector<CheckResult> sphere_moment_suite(const Scenario& scenario);

struct AsymptoticsResult {
    double slope = 0.0;                // fitted d log(eBG/BG) / d log t
    double ratio_rel_err_at_100 = 0.0; // quadrature vs closed-form beam ratio
};

/// Large-radius behaviour for the one-negative-axis spectrum in dimension d.
AsymptoticsResult asymptotics_result(int d, int nodes);

std::vector<CheckResult> asymptotics_suite(const Scenario& scenario);

/// Root of vol(t) - vol_model(t) for the hyperbolic-times-flat counterexample
/// space against the scalar-curvature-matched model.
double appendix_crossing_root();

std::vector<CheckResult> crossing_suite();

/// Everything above, in a fixed order.
std::vector<CheckResult> run_all_suites(const Scenario& scenario);

}  // namespace riccibound
