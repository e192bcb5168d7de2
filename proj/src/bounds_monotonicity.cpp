#include "riccibound/bounds_monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riccibound {

namespace {

double uniform_spacing(const std::vector<double>& grid) {
    if (grid.size() < 3) throw std::invalid_argument("gap check: need at least 3 grid points");
    const double h = grid[1] - grid[0];
    if (!(h > 0.0) || h > 0.01 + 1e-12)
        throw std::invalid_argument("gap check: grid too coarse (spacing must be <= 0.01)");
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (std::abs((grid[i + 1] - grid[i]) - h) > 1e-9 * std::max(1.0, h))
            throw std::invalid_argument("gap check: grid must be uniform");
    return h;
}

// Second-order finite-difference derivative; one-sided stencils at the ends.
std::vector<double> derivative(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return out;
}

double curve_scale(const BoundCurve& curve) {
    double scale = 0.0;
    for (double v : curve.bg) scale = std::max(scale, std::abs(v));
    for (double v : curve.ebg) scale = std::max(scale, std::abs(v));
    for (double v : curve.volume) scale = std::max(scale, std::abs(v));
    return scale;
}

}  // namespace

GapReport additive_gap_check(const BoundCurve& curve) {
    const double h = uniform_spacing(curve.times);
    const std::size_t n = curve.times.size();

    std::vector<double> bg_minus_ebg(n);
    for (std::size_t i = 0; i < n; ++i) bg_minus_ebg[i] = curve.bg[i] - curve.ebg[i];
    const std::vector<double> d1 = derivative(bg_minus_ebg, h);

    GapReport rep;
    rep.check_name = "additive_gap";
    rep.grid = curve.times;
    rep.margins = d1;
    rep.sub_margins["bg_minus_ebg"] = *std::min_element(d1.begin(), d1.end());

    if (!curve.volume.empty()) {
        std::vector<double> ebg_minus_vol(n);
        for (std::size_t i = 0; i < n; ++i) ebg_minus_vol[i] = curve.ebg[i] - curve.volume[i];
        const std::vector<double> d2 = derivative(ebg_minus_vol, h);
        for (std::size_t i = 0; i < n; ++i) rep.margins[i] = std::min(rep.margins[i], d2[i]);
        rep.sub_margins["ebg_minus_vol"] = *std::min_element(d2.begin(), d2.end());
    }

    rep.min_margin = *std::min_element(rep.margins.begin(), rep.margins.end());
    rep.scale = curve_scale(curve);
    rep.pass = rep.min_margin >= -1e-9 * rep.scale;
    return rep;
}

GapReport multiplicative_gap_check(const BoundCurve& curve) {
    const double h = uniform_spacing(curve.times);
    const std::size_t n = curve.times.size();
    for (double v : curve.ebg)
        if (!(v > 0.0)) throw std::invalid_argument("multiplicative_gap_check: eBG must be positive");

    std::vector<double> ratio(n);
    for (std::size_t i = 0; i < n; ++i) ratio[i] = curve.bg[i] / curve.ebg[i];
    const std::vector<double> dr = derivative(ratio, h);
    const std::vector<double> dbg = derivative(curve.bg, h);
    const std::vector<double> debg = derivative(curve.ebg, h);

    GapReport rep;
    rep.check_name = "multiplicative_gap";
    rep.grid = curve.times;
    rep.margins = dr;
    rep.min_margin = *std::min_element(dr.begin(), dr.end());
    rep.sub_margins["ratio_derivative"] = rep.min_margin;

    // Lambda lives on the volume scale, the ratio derivative on the ratio
    // scale; each is compared against its own scale.
    double lambda_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double lambda =
            curve.bg[i] > 0.0 ? dbg[i] / curve.bg[i] * curve.ebg[i] - debg[i] : 0.0;
        lambda_min = std::min(lambda_min, lambda);
    }
    rep.sub_margins["lambda"] = lambda_min;

    double ratio_scale = 0.0;
    for (double r : ratio) ratio_scale = std::max(ratio_scale, std::abs(r));
    rep.scale = ratio_scale;
    rep.pass = rep.min_margin >= -1e-9 * ratio_scale && lambda_min >= -1e-9 * curve_scale(curve);
    return rep;
}

GapReport empirical_ratio_probe(const BoundCurve& curve) {
    const double h = uniform_spacing(curve.times);
    const std::size_t n = curve.times.size();
    if (curve.volume.empty())
        throw std::invalid_argument("empirical_ratio_probe: volume column required");
    for (double v : curve.volume)
        if (!(v > 0.0)) throw std::invalid_argument("empirical_ratio_probe: volume must be positive");

    std::vector<double> ratio(n);
    for (std::size_t i = 0; i < n; ++i) ratio[i] = curve.ebg[i] / curve.volume[i];
    const std::vector<double> dr = derivative(ratio, h);

    GapReport rep;
    rep.check_name = "ebg_vol_ratio_probe";
    rep.grid = curve.times;
    rep.margins = dr;
    rep.min_margin = *std::min_element(dr.begin(), dr.end());
    rep.scale = curve_scale(curve);
    rep.exploratory = true;
    rep.pass = true;  // evidence only; the statement is open
    return rep;
}

}  // namespace riccibound
