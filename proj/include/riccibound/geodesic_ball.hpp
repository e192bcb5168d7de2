#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "riccibound/model_spaces.hpp"
#include "riccibound/sn_kernel.hpp"

namespace riccibound {

/// Curvature operator restricted to the normal space of a geodesic, given by
/// its eigenvalues: the sectional curvatures of the planes spanned by the
/// geodesic tangent and an orthonormal normal frame. Constant along geodesics
/// of product spaces. Each eigendirection with sectional curvature k evolves
/// as j'' = -k j; the trace equals Ric(tangent, tangent).
struct CurvatureOperator {
    std::vector<double> sectional;

    double ricci_trace() const;
    int dim() const { return static_cast<int>(sectional.size()) + 1; }
};

/// Squared projections of a unit direction onto the factors.
std::vector<double> factor_weights(const ProductSpace& space, const Direction& x);

/// Normal-space curvature operator for a geodesic of a product space leaving
/// with the given factor weights: factor i with curvature k_i and weight c_i
/// contributes eigenvalue k_i c_i with multiplicity dim_i - 1, plus one zero
/// eigenvalue per additional factor (the mixing directions).
CurvatureOperator normal_curvature(const ProductSpace& space, const std::vector<double>& weights);

struct OperatorJacobiSample {
    double t = 0.0;
    Eigen::MatrixXd J;
    Eigen::MatrixXd Jprime;
    double detJ = 0.0;
};

struct OperatorJacobiTrajectory {
    std::vector<OperatorJacobiSample> samples;
    std::optional<double> conjugate_time;
    int dim = 0;
};

/// Dense RK4 integration of the operator Jacobi equation J'' = M J with
/// M = -diag(sectional), J(0) = 0, J'(0) = id. The matrix path does not use
/// the diagonal shortcut, so det J can be validated against prod_i sn(k_i, t).
/// Integration halts at the first conjugate point (det J sign change,
/// bisected to 1e-10).
OperatorJacobiTrajectory solve_operator_jacobi(const CurvatureOperator& op, double horizon,
                                               double step);

struct ExpansionSample {
    double t = 0.0;
    double u = 0.0;           // (1/(d-1)) d/dt log det J
    double kappa_eff = 0.0;   // u' + u^2
    double cauchy_schwarz_gap = 0.0;  // tr(U^2) - (tr U)^2/(d-1), >= 0
};

/// Expansion scalar chain along a trajectory, truncated at the conjugate
/// point. kappa_eff <= -Ric/(d-1) with equality iff the Weingarten operator
/// is isotropic.
std::vector<ExpansionSample> expansion_chain(const OperatorJacobiTrajectory& traj,
                                             const CurvatureOperator& op);

/// Total geodesic-sphere area at radius t: the direction average of det J
/// over departure bearings, times the sphere measure. For product spaces
/// this equals d/dt of the exact ball volume before the cut locus.
double total_area(const ProductSpace& space, double t, const SphereQuadrature& quad);

struct RatioReport {
    std::string check;
    double min_upper_margin = 0.0;     // min over grid of 1 - ratio
    double min_monotone_margin = 0.0;  // min over grid of ratio(t_i) - ratio(t_{i+1})
    bool pass = false;
};

struct RatioMonotonicityReport {
    RatioReport per_direction;     // det J / sn_k^{d-1} per bearing
    RatioReport averaged_area;     // total area / direction-averaged sn^{d-1}
    RatioReport averaged_volume;   // exact volume / eBG volume
    RatioReport model_volume;      // exact volume / model volume at k_ref
    bool pass = false;
};

/// Ratio monotonicity along the grid: per-direction det J / sn_k^{d-1} is
/// <= 1 and nonincreasing for k_ref <= lambda_min/(d-1), and the
/// direction-averaged area and volume versions likewise. Grid must ascend
/// and stay within the focal range of every tested bearing.
RatioMonotonicityReport ratio_monotonicity(const ProductSpace& space, double k_ref,
                                           const std::vector<double>& grid,
                                           const SphereQuadrature& quad);

/// Ricci quadratic form on the flowed tangent at time t for the geodesic
/// leaving with direction x. Product-space geodesics do not turn, so the
/// factor weights of the tangent are conserved and the value is constant.
double ricci_form_along_flow(const ProductSpace& space, const Direction& x, double t);

/// CSV rows (t, detJ, u, kappa_eff) for inspection; header included.
std::string trajectory_csv(const OperatorJacobiTrajectory& traj, const CurvatureOperator& op);

}  // namespace riccibound
