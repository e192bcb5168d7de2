#include "riccibound/model_spaces.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace riccibound {

ProductSpace::ProductSpace(std::vector<SpaceFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("ProductSpace: needs at least one factor");
    for (const auto& f : factors_) {
        if (f.dim < 1) throw std::invalid_argument("ProductSpace: factor dim must be >= 1");
        if (f.dim == 1 && f.curvature != 0.0)
            throw std::invalid_argument("ProductSpace: a 1-dimensional factor has no sectional curvature");
        if (!std::isfinite(f.curvature)) throw std::invalid_argument("ProductSpace: non-finite curvature");
        total_dim_ += f.dim;
    }
    if (total_dim_ < 2) throw std::invalid_argument("ProductSpace: total dimension must be >= 2");
}

RicciSpectrum::RicciSpectrum(std::vector<Block> blocks) {
    if (blocks.empty()) throw std::invalid_argument("RicciSpectrum: empty");
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.value < b.value; });
    for (const auto& b : blocks) {
        if (b.multiplicity < 1) throw std::invalid_argument("RicciSpectrum: multiplicity must be >= 1");
        if (!std::isfinite(b.value)) throw std::invalid_argument("RicciSpectrum: non-finite eigenvalue");
        if (!blocks_.empty() && blocks_.back().value == b.value)
            blocks_.back().multiplicity += b.multiplicity;
        else
            blocks_.push_back(b);
        dim_ += b.multiplicity;
    }
    if (dim_ < 2) throw std::invalid_argument("RicciSpectrum: dimension must be >= 2");
}

RicciSpectrum RicciSpectrum::from_eigenvalues(const std::vector<double>& values) {
    std::vector<Block> blocks;
    blocks.reserve(values.size());
    for (double v : values) blocks.push_back({v, 1});
    return RicciSpectrum(std::move(blocks));
}

std::vector<double> RicciSpectrum::expanded() const {
    std::vector<double> out;
    out.reserve(dim_);
    for (const auto& b : blocks_)
        for (int i = 0; i < b.multiplicity; ++i) out.push_back(b.value);
    return out;
}

Direction::Direction(std::vector<double> components) : components_(std::move(components)) {
    double norm2 = 0.0;
    for (double c : components_) norm2 += c * c;
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("Direction: not unit-normalized");
}

Direction Direction::normalized(std::vector<double> components) {
    double norm2 = 0.0;
    for (double c : components) norm2 += c * c;
    if (norm2 <= 0.0) throw std::invalid_argument("Direction: zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : components) c *= inv;
    return Direction(std::move(components));
}

RicciSpectrum ricci_spectrum(const ProductSpace& space) {
    std::vector<RicciSpectrum::Block> blocks;
    for (const auto& f : space.factors())
        blocks.push_back({(f.dim - 1) * f.curvature, f.dim});
    return RicciSpectrum(std::move(blocks));
}

double scalar_curvature(const RicciSpectrum& spectrum) {
    double r = 0.0;
    for (const auto& b : spectrum.blocks()) r += b.value * b.multiplicity;
    return r;
}

double ricci_quadratic_form(const RicciSpectrum& spectrum, const Direction& x) {
    if (x.dim() != spectrum.dim())
        throw std::invalid_argument("ricci_quadratic_form: dimension mismatch");
    double acc = 0.0;
    std::size_t i = 0;
    for (const auto& b : spectrum.blocks())
        for (int m = 0; m < b.multiplicity; ++m, ++i)
            acc += b.value * x.components()[i] * x.components()[i];
    return acc;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Geodesic-sphere area of radius tau inside one factor. A 1-dimensional
// factor contributes the two endpoints of an interval.
double factor_sphere_area(const SpaceFactor& f, double tau) {
    if (f.dim == 1) return 2.0;
    return unit_sphere_area(f.dim) * std::pow(sn(f.curvature, tau), f.dim - 1);
}

double factor_ball_volume(const SpaceFactor& f, double r) {
    if (r <= 0.0) return 0.0;
    if (f.dim == 1) return 2.0 * r;
    return unit_sphere_area(f.dim) * sn_power_integral(f.curvature, f.dim - 1, r);
}

double ball_volume_rec(std::span<const SpaceFactor> factors, double t, const ShellTolerance& tol) {
    if (t <= 0.0) return 0.0;
    if (factors.size() == 1) return factor_ball_volume(factors[0], t);

    const SpaceFactor& head = factors[0];
    double upper = t;
    if (head.curvature > 0.0) upper = std::min(upper, kPi / std::sqrt(head.curvature));

    // Shell radius tau = upper sin(phi): removes the square-root kink of the
    // co-radius sqrt(t^2 - tau^2) at tau = t, so the quadrature sees a smooth
    // integrand except at interior cut-locus clamps.
    const auto rest = factors.subspan(1);
    const auto integrand = [&](double phi) {
        const double s = std::sin(phi);
        const double tau = upper * s;
        const double r2 = t * t - tau * tau;
        const double r = r2 > 0.0 ? std::sqrt(r2) : 0.0;
        return upper * std::cos(phi) * factor_sphere_area(head, tau) * ball_volume_rec(rest, r, tol);
    };

    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, 0.5 * kPi, 12, tol.rel, &error);
    const double budget = std::max(tol.abs, tol.rel * std::abs(value));
    if (error > budget && error > 0.0)
        throw QuadratureError("exact_ball_volume: shell quadrature did not converge",
                              error / std::max(std::abs(value), 1e-300));
    return value;
}

}  // namespace

double exact_ball_volume(const ProductSpace& space, double t, ShellTolerance tol) {
    if (t < 0.0) throw std::invalid_argument("exact_ball_volume: negative radius");
    if (t == 0.0) return 0.0;
    return ball_volume_rec(std::span<const SpaceFactor>(space.factors()), t, tol);
}

double model_ball_volume(int d, double k, double t) {
    if (d < 2) throw std::invalid_argument("model_ball_volume: d must be >= 2");
    if (t < 0.0) throw std::invalid_argument("model_ball_volume: negative radius");
    return unit_sphere_area(d) * sn_power_integral(k, d - 1, t);
}

}  // namespace riccibound
