#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "riccibound/model_spaces.hpp"

namespace riccibound {

using Rational = boost::multiprecision::cpp_rational;

/// Quadratic curvature scalars and their decomposition into the traceful,
/// semitraceless and fully traceless squares s2, e2, c2 (which sum to riem2).
struct RiemannInvariants {
    int d = 0;
    Rational R;      // scalar curvature
    Rational ric2;   // Ric_{mn} Ric^{mn}
    Rational riem2;  // Riem_{mnrs} Riem^{mnrs}
    Rational boxR;   // Laplacian of R; 0 for homogeneous spaces
    Rational s2, e2, c2;
};

/// Builds the decomposition for d >= 3 and validates s2 + e2 + c2 = riem2
/// with each part nonnegative. Throws for d < 3 (e2 needs d-2) or for
/// non-realizable inputs.
RiemannInvariants decompose(int d, const Rational& R, const Rational& ric2,
                            const Rational& riem2, const Rational& boxR = 0);

/// Per-factor closed forms: a factor of dimension n and curvature k
/// contributes R += n(n-1)k, ric2 += n(n-1)^2 k^2, riem2 += 2n(n-1)k^2.
/// Factor curvatures are converted exactly from their binary representation.
RiemannInvariants invariants_from_product(const ProductSpace& space);

/// Small-ball volume series vol(t) = (Omega_{d-1}/d) t^d (1 + c2 t^2 + c4 t^4 + ...).
struct SmallBallSeries {
    int d = 0;
    std::string kind;
    Rational c2;
    Rational c4;

    std::string to_json() const;  // {"d":., "kind":., "c2":"p/q", "c4":"p/q"}
};

/// Exact small-ball expansion of the true volume:
/// c2 = -R/(6(d+2)), c4 = (5R^2 + 8 ric2 - 3 riem2 - 18 boxR)/(360(d+2)(d+4)).
SmallBallSeries gray_series(const RiemannInvariants& inv);
SmallBallSeries gray_series(int d, const Rational& R, const Rational& ric2,
                            const Rational& riem2, const Rational& boxR = 0);

enum class BoundKind { BG, EBG, HOfR };

/// Small-ball expansions of the bounds. BG needs the smallest Ricci
/// eigenvalue; eBG reproduces the exact c2 for every spectrum.
SmallBallSeries bound_series(BoundKind kind, const RiemannInvariants& inv,
                             const Rational& lambda_min = 0);

enum class GapKind { EbgMinusVol, VolMinusHOfR };

/// Exact t^4 gap coefficients between series, computed as the difference of
/// the two expansions and cross-checkable against the closed forms
///   eBG - vol:   (d(d+1) E^2 + 6(d-1) C^2) / (720 (d-1)(d+2)(d+4))
///   vol - H[R]: ((2d-7) E^2 - 3 C^2) / (360 (d+2)(d+4)).
Rational series_gap(GapKind kind, const RiemannInvariants& inv);

/// Closed-form route for the same gaps (invariant combinations above).
Rational series_gap_closed_form(GapKind kind, const RiemannInvariants& inv);

/// Least-squares fit of c2, c4 from a sampled volume curve, normalized by
/// the Euclidean leading term; a t^6 basis column absorbs the next order.
struct FittedSeries {
    double c2 = 0.0;
    double c4 = 0.0;
};
FittedSeries fit_series_coefficients(const std::vector<double>& times,
                                     const std::vector<double>& values, int d);

}  // namespace riccibound
