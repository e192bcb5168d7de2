#pragma once

#include <map>
#include <string>
#include <vector>

#include "riccibound/sn_kernel.hpp"

namespace riccibound {

/// Finite-difference margin report for one monotonicity check on a sampled
/// curve. pass <=> min_margin >= -1e-9 * curve scale; exploratory reports
/// are never failed.
struct GapReport {
    std::string check_name;
    std::vector<double> grid;
    std::vector<double> margins;
    double min_margin = 0.0;
    double scale = 0.0;
    bool pass = false;
    bool exploratory = false;
    std::map<std::string, double> sub_margins;
};

/// d/dt (BG - eBG) >= 0 and, when the volume column is present,
/// d/dt (eBG - volume) >= 0; margins are second-order centered differences
/// (one-sided at the endpoints). Requires a uniform grid with spacing
/// <= 0.01; throws otherwise.
GapReport additive_gap_check(const BoundCurve& curve);

/// d/dt (BG/eBG) >= 0, plus the log-derivative comparison
/// Lambda = BG'/BG * eBG - eBG' >= 0. Requires eBG > 0 on the grid.
GapReport multiplicative_gap_check(const BoundCurve& curve);

/// Empirical minimum of d/dt (eBG/volume); reported as evidence only and
/// never asserted, since this ratio monotonicity is an open statement.
GapReport empirical_ratio_probe(const BoundCurve& curve);

}  // namespace riccibound
