#include "riccibound/curvature_invariants.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace riccibound {

RiemannInvariants decompose(int d, const Rational& R, const Rational& ric2,
                            const Rational& riem2, const Rational& boxR) {
    if (d < 3) throw std::invalid_argument("decompose: d must be >= 3");
    RiemannInvariants inv;
    inv.d = d;
    inv.R = R;
    inv.ric2 = ric2;
    inv.riem2 = riem2;
    inv.boxR = boxR;
    inv.s2 = 2 * R * R / Rational(d * (d - 1));
    inv.e2 = 4 * ric2 / Rational(d - 2) - 4 * R * R / Rational(d * (d - 2));
    inv.c2 = riem2 - 4 * ric2 / Rational(d - 2) + 2 * R * R / Rational((d - 1) * (d - 2));
    if (inv.s2 < 0 || inv.e2 < 0 || inv.c2 < 0)
        throw std::invalid_argument("decompose: inputs are not realizable curvature scalars");
    if (inv.s2 + inv.e2 + inv.c2 != riem2)
        throw std::logic_error("decompose: decomposition does not sum to riem2");
    return inv;
}

RiemannInvariants invariants_from_product(const ProductSpace& space) {
    Rational R = 0, ric2 = 0, riem2 = 0;
    for (const auto& f : space.factors()) {
        const Rational k(f.curvature);  // exact binary-to-rational conversion
        const int n = f.dim;
        R += Rational(n * (n - 1)) * k;
        ric2 += Rational(n * (n - 1) * (n - 1)) * k * k;
        riem2 += Rational(2 * n * (n - 1)) * k * k;
    }
    return decompose(space.total_dim(), R, ric2, riem2, 0);
}

namespace {

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

std::string SmallBallSeries::to_json() const {
    std::ostringstream os;
    os << "{\"d\":" << d << ",\"kind\":\"" << kind << "\",\"c2\":\"" << rational_string(c2)
       << "\",\"c4\":\"" << rational_string(c4) << "\"}";
    return os.str();
}

SmallBallSeries gray_series(int d, const Rational& R, const Rational& ric2,
                            const Rational& riem2, const Rational& boxR) {
    if (d < 2) throw std::invalid_argument("gray_series: d must be >= 2");
    SmallBallSeries s;
    s.d = d;
    s.kind = "volume";
    s.c2 = -R / Rational(6 * (d + 2));
    s.c4 = (5 * R * R + 8 * ric2 - 3 * riem2 - 18 * boxR) / Rational(360 * (d + 2) * (d + 4));
    return s;
}

SmallBallSeries gray_series(const RiemannInvariants& inv) {
    return gray_series(inv.d, inv.R, inv.ric2, inv.riem2, inv.boxR);
}

SmallBallSeries bound_series(BoundKind kind, const RiemannInvariants& inv,
                             const Rational& lambda_min) {
    const int d = inv.d;
    SmallBallSeries s;
    s.d = d;
    switch (kind) {
        case BoundKind::BG:
            s.kind = "bg";
            s.c2 = -Rational(d) * lambda_min / Rational(6 * (d + 2));
            s.c4 = Rational(d * (5 * d - 7)) * lambda_min * lambda_min /
                   Rational(360 * (d - 1) * (d + 4));
            break;
        case BoundKind::EBG:
            s.kind = "ebg";
            s.c2 = -inv.R / Rational(6 * (d + 2));
            s.c4 = Rational(5 * d - 7) * (inv.R * inv.R + 2 * inv.ric2) /
                   Rational(360 * (d - 1) * (d + 2) * (d + 4));
            break;
        case BoundKind::HOfR:
            s.kind = "h_of_r";
            s.c2 = -inv.R / Rational(6 * (d + 2));
            s.c4 = Rational(5 * d - 7) * inv.R * inv.R / Rational(360 * (d - 1) * d * (d + 4));
            break;
        default:
            throw std::invalid_argument("bound_series: unknown kind");
    }
    return s;
}

Rational series_gap(GapKind kind, const RiemannInvariants& inv) {
    const SmallBallSeries vol = gray_series(inv);
    switch (kind) {
        case GapKind::EbgMinusVol:
            return bound_series(BoundKind::EBG, inv).c4 - vol.c4;
        case GapKind::VolMinusHOfR:
            return vol.c4 - bound_series(BoundKind::HOfR, inv).c4;
    }
    throw std::invalid_argument("series_gap: unknown kind");
}

Rational series_gap_closed_form(GapKind kind, const RiemannInvariants& inv) {
    const int d = inv.d;
    switch (kind) {
        case GapKind::EbgMinusVol:
            return (Rational(d * (d + 1)) * inv.e2 + Rational(6 * (d - 1)) * inv.c2) /
                   Rational(720 * (d - 1) * (d + 2) * (d + 4));
        case GapKind::VolMinusHOfR:
            return (Rational(2 * d - 7) * inv.e2 - 3 * inv.c2) / Rational(360 * (d + 2) * (d + 4));
    }
    throw std::invalid_argument("series_gap_closed_form: unknown kind");
}

FittedSeries fit_series_coefficients(const std::vector<double>& times,
                                     const std::vector<double>& values, int d) {
    if (times.size() != values.size() || times.size() < 4)
        throw std::invalid_argument("fit_series_coefficients: need at least 4 samples");
    const double lead = unit_sphere_area(d) / d;
    const int n = static_cast<int>(times.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double t = times[i];
        const double t2 = t * t;
        A(i, 0) = t2;
        A(i, 1) = t2 * t2;
        A(i, 2) = t2 * t2 * t2;
        y(i) = values[i] / (lead * std::pow(t, d)) - 1.0;
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
    return {coef(0), coef(1)};
}

}  // namespace riccibound
