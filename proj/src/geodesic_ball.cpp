#include "riccibound/geodesic_ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace riccibound {

double CurvatureOperator::ricci_trace() const {
    double acc = 0.0;
    for (double k : sectional) acc += k;
    return acc;
}

std::vector<double> factor_weights(const ProductSpace& space, const Direction& x) {
    if (x.dim() != space.total_dim())
        throw std::invalid_argument("factor_weights: dimension mismatch");
    std::vector<double> out;
    out.reserve(space.factors().size());
    std::size_t idx = 0;
    for (const auto& f : space.factors()) {
        double c = 0.0;
        for (int m = 0; m < f.dim; ++m, ++idx)
            c += x.components()[idx] * x.components()[idx];
        out.push_back(c);
    }
    return out;
}

CurvatureOperator normal_curvature(const ProductSpace& space, const std::vector<double>& weights) {
    if (weights.size() != space.factors().size())
        throw std::invalid_argument("normal_curvature: one weight per factor required");
    double total = 0.0;
    for (double c : weights) {
        if (c < 0.0) throw std::invalid_argument("normal_curvature: negative weight");
        total += c;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("normal_curvature: weights must sum to 1");

    CurvatureOperator op;
    const std::size_t nf = space.factors().size();
    for (std::size_t i = 0; i < nf; ++i) {
        const auto& f = space.factors()[i];
        for (int m = 0; m < f.dim - 1; ++m)
            op.sectional.push_back(f.curvature * weights[i]);
    }
    // Directions mixing the factor velocities see zero sectional curvature.
    for (std::size_t i = 0; i + 1 < nf; ++i) op.sectional.push_back(0.0);
    return op;
}

namespace {

struct MatrixState {
    Eigen::MatrixXd J;
    Eigen::MatrixXd P;
};

void matrix_rk4_step(const Eigen::MatrixXd& M, double h, MatrixState& s) {
    const Eigen::MatrixXd k1J = s.P, k1P = M * s.J;
    const Eigen::MatrixXd k2J = s.P + 0.5 * h * k1P, k2P = M * (s.J + 0.5 * h * k1J);
    const Eigen::MatrixXd k3J = s.P + 0.5 * h * k2P, k3P = M * (s.J + 0.5 * h * k2J);
    const Eigen::MatrixXd k4J = s.P + h * k3P, k4P = M * (s.J + h * k3J);
    s.J += h / 6.0 * (k1J + 2.0 * k2J + 2.0 * k3J + k4J);
    s.P += h / 6.0 * (k1P + 2.0 * k2P + 2.0 * k3P + k4P);
}

}  // namespace

OperatorJacobiTrajectory solve_operator_jacobi(const CurvatureOperator& op, double horizon,
                                               double step) {
    if (op.sectional.empty()) throw std::invalid_argument("solve_operator_jacobi: empty operator");
    if (!(horizon > 0.0) || !(step > 0.0))
        throw std::invalid_argument("solve_operator_jacobi: horizon and step must be positive");
    const int n = static_cast<int>(op.sectional.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = -op.sectional[i];

    OperatorJacobiTrajectory traj;
    traj.dim = n + 1;
    MatrixState s{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Identity(n, n)};
    traj.samples.push_back({0.0, s.J, s.P, 0.0});

    const int steps = std::max(1, static_cast<int>(std::ceil(horizon / step)));
    const double h = horizon / steps;
    double det_prev = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double ta = i * h;
        MatrixState prev = s;
        matrix_rk4_step(M, h, s);
        const double det = s.J.determinant();
        if (det_prev > 0.0 && det <= 0.0) {
            // Bisect the conjugate time; each probe is one RK4 step from the
            // last positive sample, accurate to O(h^5).
            double lo = 0.0, hi = h;
            for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
                const double mid = 0.5 * (lo + hi);
                MatrixState probe = prev;
                matrix_rk4_step(M, mid, probe);
                if (probe.J.determinant() > 0.0) lo = mid;
                else hi = mid;
            }
            traj.conjugate_time = ta + 0.5 * (lo + hi);
            return traj;
        }
        traj.samples.push_back({ta + h, s.J, s.P, det});
        det_prev = det;
    }
    return traj;
}

std::vector<ExpansionSample> expansion_chain(const OperatorJacobiTrajectory& traj,
                                             const CurvatureOperator& op) {
    const int n = static_cast<int>(op.sectional.size());
    const double d1 = static_cast<double>(n);  // d - 1
    const double ric = op.ricci_trace();
    std::vector<ExpansionSample> out;
    for (const auto& s : traj.samples) {
        if (s.t == 0.0 || s.detJ <= 0.0) continue;
        const Eigen::MatrixXd U = s.Jprime * s.J.inverse();
        const double tr = U.trace();
        const double tr2 = (U * U).trace();
        ExpansionSample e;
        e.t = s.t;
        e.u = tr / d1;
        e.kappa_eff = (-ric - tr2) / d1 + e.u * e.u;
        e.cauchy_schwarz_gap = tr2 - tr * tr / d1;
        out.push_back(e);
    }
    return out;
}

namespace {

// det J for a bearing of a product space, by the validated diagonal shortcut:
// each normal eigendirection contributes sn(k_i c_i, t), mixing directions
// contribute sn(0, t) = t.
double det_jacobi(const ProductSpace& space, const std::vector<double>& weights, double t) {
    double det = 1.0;
    const std::size_t nf = space.factors().size();
    for (std::size_t i = 0; i < nf; ++i) {
        const auto& f = space.factors()[i];
        if (f.dim > 1) det *= std::pow(sn(f.curvature * weights[i], t), f.dim - 1);
    }
    for (std::size_t i = 0; i + 1 < nf; ++i) det *= t;
    return det;
}

std::vector<double> factor_alphas(const ProductSpace& space) {
    std::vector<double> alphas;
    alphas.reserve(space.factors().size());
    for (const auto& f : space.factors()) alphas.push_back(0.5 * f.dim);
    return alphas;
}

double ricci_form_of_weights(const ProductSpace& space, const std::vector<double>& weights) {
    double acc = 0.0;
    for (std::size_t i = 0; i < space.factors().size(); ++i) {
        const auto& f = space.factors()[i];
        acc += (f.dim - 1) * f.curvature * weights[i];
    }
    return acc;
}

}  // namespace

double total_area(const ProductSpace& space, double t, const SphereQuadrature& quad) {
    if (t < 0.0) throw std::invalid_argument("total_area: negative radius");
    if (t == 0.0) return 0.0;
    const DirichletRule dr = dirichlet_rule(factor_alphas(space), quad);
    double acc = 0.0;
    for (std::size_t q = 0; q < dr.points.size(); ++q)
        acc += dr.weights[q] * det_jacobi(space, dr.points[q], t);
    return unit_sphere_area(space.total_dim()) * acc;
}

namespace {

RatioReport ratio_report(const std::string& name, const std::vector<std::vector<double>>& ratios) {
    RatioReport rep;
    rep.check = name;
    rep.min_upper_margin = std::numeric_limits<double>::infinity();
    rep.min_monotone_margin = std::numeric_limits<double>::infinity();
    for (const auto& series : ratios) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            rep.min_upper_margin = std::min(rep.min_upper_margin, 1.0 - series[i]);
            if (i + 1 < series.size())
                rep.min_monotone_margin =
                    std::min(rep.min_monotone_margin, series[i] - series[i + 1]);
        }
    }
    rep.pass = rep.min_upper_margin >= -1e-9 && rep.min_monotone_margin >= -1e-9;
    return rep;
}

}  // namespace

RatioMonotonicityReport ratio_monotonicity(const ProductSpace& space, double k_ref,
                                           const std::vector<double>& grid,
                                           const SphereQuadrature& quad) {
    if (grid.size() < 2) throw std::invalid_argument("ratio_monotonicity: grid too small");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("ratio_monotonicity: grid must strictly ascend");
    if (!(grid.front() > 0.0)) throw std::invalid_argument("ratio_monotonicity: grid must be positive");

    const RicciSpectrum spectrum = ricci_spectrum(space);
    const int d = space.total_dim();
    if (k_ref > spectrum.lambda_min() / (d - 1) + 1e-15)
        throw std::invalid_argument("ratio_monotonicity: k_ref must not exceed lambda_min/(d-1)");
    for (double t : grid)
        if (sn(k_ref, t) <= 0.0)
            throw std::invalid_argument("ratio_monotonicity: grid beyond the focal range of the reference space");

    const DirichletRule dr = dirichlet_rule(factor_alphas(space), quad);
    const double omega = unit_sphere_area(d);

    // Shared direction measure for numerators and denominators.
    SphereRule rule;
    rule.dim = d;
    for (std::size_t q = 0; q < dr.points.size(); ++q) {
        rule.values.push_back(ricci_form_of_weights(space, dr.points[q]));
        rule.weights.push_back(omega * dr.weights[q]);
    }

    std::vector<std::vector<double>> per_direction(dr.points.size());
    std::vector<double> area_ratio(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double t = grid[g];
        const double denom = std::pow(sn(k_ref, t), d - 1);
        double ta = 0.0;
        for (std::size_t q = 0; q < dr.points.size(); ++q) {
            const double det = det_jacobi(space, dr.points[q], t);
            per_direction[q].push_back(det / denom);
            ta += rule.weights[q] * det;
        }
        area_ratio[g] = ta / ebg_area(rule, t);
    }

    std::vector<double> vol_ratio(grid.size()), model_ratio(grid.size());
    const std::vector<double> ebg_vol = ebg_bound_cumulative(rule, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double v = exact_ball_volume(space, grid[g]);
        vol_ratio[g] = v / ebg_vol[g];
        model_ratio[g] = v / model_ball_volume(d, k_ref, grid[g]);
    }

    RatioMonotonicityReport rep;
    rep.per_direction = ratio_report("per_direction", per_direction);
    rep.averaged_area = ratio_report("averaged_area", {area_ratio});
    rep.averaged_volume = ratio_report("averaged_volume", {vol_ratio});
    rep.model_volume = ratio_report("model_volume", {model_ratio});
    rep.pass = rep.per_direction.pass && rep.averaged_area.pass && rep.averaged_volume.pass &&
               rep.model_volume.pass;
    return rep;
}

double ricci_form_along_flow(const ProductSpace& space, const Direction& x, double t) {
    if (t < 0.0) throw std::invalid_argument("ricci_form_along_flow: negative time");
    // Product geodesics do not turn: the per-factor speeds are conserved, so
    // the flowed tangent has the same factor weights as the initial one.
    return ricci_form_of_weights(space, factor_weights(space, x));
}

std::string trajectory_csv(const OperatorJacobiTrajectory& traj, const CurvatureOperator& op) {
    const auto chain = expansion_chain(traj, op);
    std::string out = "t,detJ,u,kappa_eff\n";
    char buf[160];
    std::size_t e = 0;
    for (const auto& s : traj.samples) {
        if (s.t == 0.0 || s.detJ <= 0.0) continue;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", s.t, s.detJ, chain[e].u,
                      chain[e].kappa_eff);
        out += buf;
        ++e;
    }
    return out;
}

}  // namespace riccibound
