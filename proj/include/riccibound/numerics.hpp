#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace riccibound {

/// Thrown when an adaptive quadrature cannot reach its target tolerance.
/// Carries the tolerance that was actually achieved.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// Comparison solution of the constant-coefficient Jacobi equation
/// j'' = k j with j(0)=0, j'(0)=1: sin/linear/sinh depending on the sign
/// of k, clamped to 0 for t >= pi/sqrt(k) when k > 0.
double sn(double k, double t);

/// d/dt sn(k,t); 0 past the conjugate clamp.
double sn_prime(double k, double t);

/// Area of the unit (d-1)-sphere in R^d: 2 pi^{d/2} / Gamma(d/2).
double unit_sphere_area(int d);

/// int_0^t sn(k,tau)^m dtau, evaluated in closed form (power-reduction
/// recurrence; single Gauss panel for small arguments where the recurrence
/// cancels). Serves as the machine-precision radial oracle.
double sn_power_integral(double k, int m, double t);

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule (Golub-Welsch).
GaussRule gauss_legendre(int n);

/// Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta on [-1,1].
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Gauss rule for the Beta(p,q) density on [0,1]; weights sum to 1.
GaussRule beta_rule(int n, double p, double q);

/// Cumulative radial integrals V(t_j) = int_0^{t_j} sum_i w_i sn(k_i,tau)^p dtau
/// on an ascending grid. Composite Gauss-Legendre on uniform panels of width
/// min(0.05, t_max/50); panel boundaries are aligned with the grid points and
/// with every positive-curvature conjugate clamp so each panel is smooth.
std::vector<double> cumulative_area_integral(const std::vector<double>& ks,
                                             const std::vector<double>& ws,
                                             int p,
                                             const std::vector<double>& grid);

/// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace riccibound
