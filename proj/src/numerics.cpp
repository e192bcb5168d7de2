#include "riccibound/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace riccibound {

namespace {
constexpr double kPi = std::numbers::pi;
}

double sn(double k, double t) {
    if (k > 0.0) {
        const double s = std::sqrt(k);
        if (s * t >= kPi) return 0.0;
        return std::sin(s * t) / s;
    }
    if (k < 0.0) {
        const double s = std::sqrt(-k);
        return std::sinh(s * t) / s;
    }
    return t;
}

double sn_prime(double k, double t) {
    if (k > 0.0) {
        const double s = std::sqrt(k);
        if (s * t >= kPi) return 0.0;
        return std::cos(s * t);
    }
    if (k < 0.0) {
        return std::cosh(std::sqrt(-k) * t);
    }
    return 1.0;
}

double unit_sphere_area(int d) {
    if (d < 1) throw std::invalid_argument("unit_sphere_area: d must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

namespace {

// int_0^x sinh^m(u) du by power reduction.
double sinh_power_integral(double x, int m) {
    if (m == 0) return x;
    const double sh = std::sinh(x), ch = std::cosh(x);
    double i_even = x;             // S_0
    double i_odd = ch - 1.0;       // S_1
    double result = (m % 2 == 0) ? i_even : i_odd;
    for (int n = 2; n <= m; ++n) {
        const double val = (std::pow(sh, n - 1) * ch - (n - 1) * ((n % 2 == 0) ? i_even : i_odd)) / n;
        if (n % 2 == 0) i_even = val; else i_odd = val;
        result = val;
    }
    return result;
}

// int_0^x sin^m(u) du, 0 <= x <= pi.
double sin_power_integral(double x, int m) {
    if (m == 0) return x;
    const double s = std::sin(x), c = std::cos(x);
    double i_even = x;
    double i_odd = 1.0 - c;
    double result = (m % 2 == 0) ? i_even : i_odd;
    for (int n = 2; n <= m; ++n) {
        const double val = (-std::pow(s, n - 1) * c + (n - 1) * ((n % 2 == 0) ? i_even : i_odd)) / n;
        if (n % 2 == 0) i_even = val; else i_odd = val;
        result = val;
    }
    return result;
}

// Single-panel Gauss fallback for small arguments where the recurrences
// subtract nearly-equal terms.
double small_panel_integral(double k, int m, double t) {
    static const GaussRule g = gauss_legendre(16);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double tau = 0.5 * t * (g.nodes[i] + 1.0);
        acc += g.weights[i] * std::pow(sn(k, tau), m);
    }
    return acc * 0.5 * t;
}

}  // namespace

double sn_power_integral(double k, int m, double t) {
    if (m < 0) throw std::invalid_argument("sn_power_integral: m must be >= 0");
    if (t <= 0.0) return 0.0;
    if (k == 0.0) return std::pow(t, m + 1) / (m + 1);
    const double a = std::sqrt(std::abs(k));
    const double x = std::min(a * t, k > 0.0 ? kPi : a * t);
    if (x < 0.5) return small_panel_integral(k, m, t);
    const double raw = (k > 0.0) ? sin_power_integral(x, m) : sinh_power_integral(x, m);
    return raw / std::pow(a, m + 1);
}

namespace {

GaussRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag, double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) jm(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) jm(i, i + 1) = jm(i + 1, i) = offdiag[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

GaussRule gauss_legendre(int n) {
    return gauss_jacobi(n, 0.0, 0.0);
}

GaussRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
    if (alpha <= -1.0 || beta <= -1.0) throw std::invalid_argument("gauss_jacobi: alpha,beta must be > -1");
    std::vector<double> diag(n), off(std::max(0, n - 1));
    const double ab = alpha + beta;
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag[k] = (beta * beta - alpha * alpha) / den;
    }
    if (n > 1) {
        off[0] = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) /
                           ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
        for (int k = 2; k < n; ++k) {
            const double q = 2.0 * k + ab;
            off[k - 1] = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                                   (q * q * (q + 1.0) * (q - 1.0)));
        }
    }
    const double mu0 = std::exp2(ab + 1.0) *
                       std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    return golub_welsch(diag, off, mu0);
}

GaussRule beta_rule(int n, double p, double q) {
    GaussRule gj = gauss_jacobi(n, q - 1.0, p - 1.0);
    GaussRule out;
    out.nodes.resize(gj.nodes.size());
    out.weights.resize(gj.weights.size());
    double total = 0.0;
    for (double w : gj.weights) total += w;
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
        out.nodes[i] = 0.5 * (gj.nodes[i] + 1.0);
        out.weights[i] = gj.weights[i] / total;
    }
    return out;
}

std::vector<double> cumulative_area_integral(const std::vector<double>& ks,
                                             const std::vector<double>& ws,
                                             int p,
                                             const std::vector<double>& grid) {
    if (ks.size() != ws.size()) throw std::invalid_argument("cumulative_area_integral: size mismatch");
    if (grid.empty()) return {};
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] < grid[i - 1]) throw std::invalid_argument("cumulative_area_integral: grid must ascend");
    if (grid.front() < 0.0) throw std::invalid_argument("cumulative_area_integral: negative radius");

    const double t_max = grid.back();
    std::vector<double> out(grid.size(), 0.0);
    if (t_max == 0.0) return out;
    const double width = std::min(0.05, t_max / 50.0);

    // Panel boundaries: 0, grid points, conjugate clamps of positive nodes.
    std::vector<double> bounds;
    bounds.push_back(0.0);
    for (double t : grid) bounds.push_back(t);
    for (double k : ks)
        if (k > 0.0) {
            const double tc = std::numbers::pi / std::sqrt(k);
            if (tc < t_max) bounds.push_back(tc);
        }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    static const GaussRule g = gauss_legendre(16);
    const auto area = [&](double tau) {
        double acc = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i)
            acc += ws[i] * std::pow(sn(ks[i], tau), p);
        return acc;
    };

    double running = 0.0;
    std::size_t gi = 0;
    while (gi < grid.size() && grid[gi] == 0.0) out[gi++] = 0.0;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        const double a = bounds[b], c = bounds[b + 1];
        const int panels = std::max(1, static_cast<int>(std::ceil((c - a) / width)));
        const double h = (c - a) / panels;
        for (int m = 0; m < panels; ++m) {
            const double lo = a + m * h;
            double acc = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i)
                acc += g.weights[i] * area(lo + 0.5 * h * (g.nodes[i] + 1.0));
            running += acc * 0.5 * h;
        }
        while (gi < grid.size() && grid[gi] == c) out[gi++] = running;
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace riccibound
