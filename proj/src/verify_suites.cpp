#include "riccibound/verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "riccibound/curvature_invariants.hpp"
#include "riccibound/geodesic_ball.hpp"
#include "riccibound/jacobi_engine.hpp"

namespace riccibound {

namespace {

CheckResult from_gap_report(const std::string& name, const GapReport& rep, long trials) {
    CheckResult c;
    c.name = name;
    c.trials = trials;
    c.min_margin = rep.min_margin;
    c.pass = rep.pass;
    c.exploratory = rep.exploratory;
    return c;
}

}  // namespace

BoundCurve product_bound_curve(const ProductSpace& space, const std::vector<double>& grid,
                               const SphereQuadrature& quad) {
    BoundCurve curve = bound_curve(ricci_spectrum(space), grid, quad);
    curve.volume.reserve(grid.size());
    for (double t : grid) curve.volume.push_back(exact_ball_volume(space, t));
    return curve;
}

std::vector<CheckResult> bounds_checks_for_curve(const std::string& prefix,
                                                 const BoundCurve& curve) {
    std::vector<CheckResult> out;
    const long n = static_cast<long>(curve.times.size());

    // Pointwise ordering volume <= eBG <= BG.
    double margin = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        margin = std::min(margin, curve.bg[i] - curve.ebg[i]);
        if (!curve.volume.empty()) margin = std::min(margin, curve.ebg[i] - curve.volume[i]);
        scale = std::max(scale, curve.bg[i]);
    }
    CheckResult ordering;
    ordering.name = prefix + ".ordering";
    ordering.trials = n;
    ordering.min_margin = margin;
    ordering.pass = margin >= -1e-9 * scale;
    out.push_back(ordering);

    out.push_back(from_gap_report(prefix + ".additive", additive_gap_check(curve), n));
    out.push_back(from_gap_report(prefix + ".multiplicative", multiplicative_gap_check(curve), n));
    if (!curve.volume.empty())
        out.push_back(from_gap_report(prefix + ".ratio_probe", empirical_ratio_probe(curve), n));
    return out;
}

std::vector<CheckResult> bounds_suite(const Scenario& scenario) {
    std::vector<CheckResult> out;
    const auto grid = scenario.fine_grid();
    for (const auto& decl : scenario.spaces) {
        const ProductSpace space(decl.factors);
        const BoundCurve curve = product_bound_curve(space, grid, scenario.quadrature);
        const auto checks = bounds_checks_for_curve("bounds." + decl.name, curve);
        out.insert(out.end(), checks.begin(), checks.end());
    }
    return out;
}

RicciSpectrum random_spectrum(int dim, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> eig(lo, hi);
    std::vector<double> values(dim);
    for (double& v : values) v = eig(rng);
    return RicciSpectrum::from_eigenvalues(values);
}

std::vector<CheckResult> random_spectra_suite(const Scenario& scenario) {
    const auto grid = scenario.fine_grid();
    const auto& cfg = scenario.random_spectra;
    double ordering_margin = std::numeric_limits<double>::infinity();
    double additive_margin = std::numeric_limits<double>::infinity();
    double multiplicative_margin = std::numeric_limits<double>::infinity();
    bool all_pass_add = true, all_pass_mul = true, all_pass_ord = true;

    std::uint64_t state = scenario.quadrature.seed ^ 0x517cc1b727220a95ULL;
    for (int i = 0; i < cfg.count; ++i) {
        const std::uint64_t seed = splitmix64(state);
        const RicciSpectrum spectrum =
            random_spectrum(cfg.dim, cfg.eigenvalue_min, cfg.eigenvalue_max, seed);
        SphereQuadrature quad = scenario.quadrature;
        quad.seed = seed ^ 0x2545f4914f6cdd1dULL;
        const BoundCurve curve = bound_curve(spectrum, grid, quad);

        double scale = 0.0;
        for (double v : curve.bg) scale = std::max(scale, v);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double m = (curve.bg[g] - curve.ebg[g]) / std::max(scale, 1e-300);
            ordering_margin = std::min(ordering_margin, m);
            if (m < -1e-9) all_pass_ord = false;
        }
        const GapReport add = additive_gap_check(curve);
        const GapReport mul = multiplicative_gap_check(curve);
        additive_margin = std::min(additive_margin, add.min_margin / std::max(add.scale, 1e-300));
        multiplicative_margin =
            std::min(multiplicative_margin, mul.min_margin / std::max(mul.scale, 1e-300));
        all_pass_add = all_pass_add && add.pass;
        all_pass_mul = all_pass_mul && mul.pass;
    }

    std::vector<CheckResult> out;
    out.push_back({"bounds.random_spectra.ordering", cfg.count, ordering_margin, all_pass_ord});
    out.push_back({"bounds.random_spectra.additive", cfg.count, additive_margin, all_pass_add});
    out.push_back(
        {"bounds.random_spectra.multiplicative", cfg.count, multiplicative_margin, all_pass_mul});
    return out;
}

namespace {

std::string power_label(double p) {
    std::ostringstream os;
    os << "p" << p;
    return os.str();
}

// Monotone family: a shared random base plus cumulative nonnegative offsets,
// so members are pointwise ordered as Theorem 1 requires.
ScheduleFamily random_monotone_family(std::uint64_t seed, int n, double horizon) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> offset(0.0, 1.5);
    std::bernoulli_distribution constant_case(0.5);

    ScheduleFamily family;
    family.weights.assign(n, 1.0 / n);
    if (constant_case(rng)) {
        std::uniform_real_distribution<double> level(-4.0, 4.0);
        std::vector<double> ls(n);
        for (double& l : ls) l = level(rng);
        std::sort(ls.rbegin(), ls.rend());
        for (double l : ls) family.members.push_back(KappaSchedule::constant(l));
        return family;
    }
    KappaSchedule current = random_schedule(rng(), horizon);
    // Build from the smallest member upward.
    std::vector<KappaSchedule> members;
    members.push_back(current);
    for (int i = 1; i < n; ++i) {
        KappaSchedule next = members.back();
        for (double& lv : next.levels) lv += offset(rng);
        for (auto& im : next.impulses) im.weight += offset(rng);
        members.push_back(next);
    }
    std::reverse(members.begin(), members.end());
    family.members = std::move(members);
    return family;
}

std::vector<ScheduleFamily::Shuffle> random_shuffles(std::mt19937_64& rng, int n, int max_count,
                                                     double horizon) {
    std::uniform_int_distribution<int> count(1, max_count);
    std::uniform_real_distribution<double> when(0.05 * horizon, 0.95 * horizon);
    const int m = count(rng);
    std::set<double> times;
    while (static_cast<int>(times.size()) < m) times.insert(when(rng));
    std::vector<ScheduleFamily::Shuffle> out;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (double t : times) {
        std::shuffle(perm.begin(), perm.end(), rng);
        out.push_back({t, perm});
    }
    return out;
}

}  // namespace

std::vector<CheckResult> jacobi_suite(const Scenario& scenario) {
    std::vector<CheckResult> out;
    const auto& cfg = scenario.jacobi;
    std::uint64_t state = cfg.seed;

    // Monotonicity lemma on ordered random pairs.
    {
        double min_margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        for (int i = 0; i < cfg.trials; ++i) {
            const auto [k1, k2] = random_ordered_pair(splitmix64(state), cfg.horizon);
            const VerifyReport rep = verify_monotonicity(k1, k2, cfg.horizon, cfg.step);
            min_margin = std::min(min_margin, rep.min_margin / std::max(rep.scale, 1e-300));
            pass = pass && rep.pass && !rep.skipped;
        }
        out.push_back({"jacobi.monotonicity", cfg.trials, min_margin, pass});
    }

    // A reversed pair exercises the skip path.
    {
        const auto [k1, k2] = random_ordered_pair(splitmix64(state), cfg.horizon);
        const VerifyReport rep = verify_monotonicity(k2, k1, cfg.horizon, cfg.step);
        CheckResult c;
        c.name = "jacobi.monotonicity.skip_diagnostic";
        c.trials = 1;
        c.min_margin = 0.0;
        c.pass = rep.skipped;  // the precondition check must have fired
        c.skipped = true;
        out.push_back(c);
    }

    // Shuffling lemma for each requested power.
    for (double p : cfg.p_list) {
        double min_margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        std::uint64_t pstate = cfg.seed ^ 0x9e3779b97f4a7c15ULL;
        for (int i = 0; i < cfg.trials; ++i) {
            const KappaSchedule k1 = random_schedule(splitmix64(pstate), cfg.horizon);
            const KappaSchedule k2 = random_schedule(splitmix64(pstate), cfg.horizon);
            const VerifyReport rep = verify_shuffling(k1, k2, p, cfg.horizon, cfg.step);
            min_margin = std::min(min_margin, rep.min_margin / std::max(rep.scale, 1e-300));
            pass = pass && rep.pass;
        }
        out.push_back({"jacobi.shuffling." + power_label(p), cfg.trials, min_margin, pass});
    }

    // Many-trajectory sorting: ordering the schedules maximizes sum j^p.
    {
        double min_margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        std::uint64_t sstate = cfg.seed ^ 0xd1b54a32d192ed03ULL;
        for (int i = 0; i < cfg.trials; ++i) {
            std::mt19937_64 rng(splitmix64(sstate));
            std::uniform_int_distribution<int> nn(3, 5);
            const int n = nn(rng);
            ScheduleFamily family;
            family.weights.assign(n, 1.0 / n);
            for (int m = 0; m < n; ++m) family.members.push_back(random_schedule(rng(), cfg.horizon));
            const ScheduleFamily sorted = sort_family(family);
            const double p = cfg.p_list[i % cfg.p_list.size()];
            const double s = 0.8 * cfg.horizon;
            const double tot_sorted = tot_functional(sorted, s, p, cfg.horizon, cfg.step);
            const double tot_raw = tot_functional(family, s, p, cfg.horizon, cfg.step);
            const double scale = std::max(tot_sorted, 1e-300);
            min_margin = std::min(min_margin, (tot_sorted - tot_raw) / scale);
            pass = pass && (tot_sorted - tot_raw >= -1e-9 * scale);
        }
        out.push_back({"jacobi.sorting", cfg.trials, min_margin, pass});
    }

    // Theorem 1: shuffling a monotone family never increases Tot.
    {
        double min_margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        std::uint64_t tstate = cfg.seed ^ 0x94d049bb133111ebULL;
        for (int i = 0; i < cfg.trials; ++i) {
            std::mt19937_64 rng(splitmix64(tstate));
            std::uniform_int_distribution<int> nn(2, 8);
            const int n = nn(rng);
            ScheduleFamily family = random_monotone_family(rng(), n, cfg.horizon);
            ScheduleFamily shuffled = family;
            shuffled.shuffles = random_shuffles(rng, n, 16, cfg.horizon);
            const double p = cfg.p_list[i % cfg.p_list.size()];
            const double s = 0.8 * cfg.horizon;
            const double tot0 = tot_functional(family, s, p, cfg.horizon, cfg.step);
            const double tots = tot_functional(shuffled, s, p, cfg.horizon, cfg.step);
            const double scale = std::max(tot0, 1e-300);
            min_margin = std::min(min_margin, (tot0 - tots) / scale);
            pass = pass && (tot0 - tots >= -1e-9 * scale);
        }
        out.push_back({"jacobi.tot_theorem1", cfg.trials, min_margin, pass});
    }

    // Refinement convergence proxy: a fixed shuffle with dyadic switch times
    // is approximated by step shuffles on ever finer partitions. The
    // approximation deficit against the target shuffle must be nonincreasing
    // and reach zero once the partition resolves every switch.
    {
        ScheduleFamily family;
        family.members = {KappaSchedule::constant(-1.0), KappaSchedule::constant(0.0),
                          KappaSchedule::constant(1.0)};
        family.weights.assign(3, 1.0 / 3.0);
        const double h = cfg.horizon;
        const std::vector<double> switch_times = {0.375 * h, 0.625 * h, 0.875 * h};
        const std::vector<std::vector<int>> switch_perms = {{1, 2, 0}, {2, 0, 1}, {0, 2, 1}};
        const auto shuffled_at = [&](int cells) {
            // sigma is sampled at the left edge of each partition cell.
            ScheduleFamily out = family;
            std::vector<int> active = {0, 1, 2};
            for (int c = 1; c < cells; ++c) {
                const double t = h * c / cells;
                std::vector<int> target = {0, 1, 2};
                for (std::size_t s = 0; s < switch_times.size(); ++s)
                    if (switch_times[s] <= t) target = switch_perms[s];
                if (target != active) {
                    out.shuffles.push_back({t, target});
                    active = target;
                }
            }
            return out;
        };
        const double p = 2.0;
        const double s = 0.9 * h;
        const double tot0 = tot_functional(family, s, p, cfg.horizon, cfg.step);
        ScheduleFamily target = family;
        for (std::size_t i = 0; i < switch_times.size(); ++i)
            target.shuffles.push_back({switch_times[i], switch_perms[i]});
        const double ref = tot_functional(target, s, p, cfg.horizon, cfg.step);
        double prev_err = std::numeric_limits<double>::infinity();
        double min_margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        for (int cells : {2, 4, 8, 16, 32}) {
            const double tot = tot_functional(shuffled_at(cells), s, p, cfg.horizon, cfg.step);
            pass = pass && (tot0 - tot >= -1e-9 * tot0);  // Theorem 1 along the way
            const double err = std::abs(tot - ref);
            if (std::isfinite(prev_err)) {
                min_margin = std::min(min_margin, (prev_err - err) / tot0);
                pass = pass && (err <= prev_err + 1e-9 * tot0);
            }
            prev_err = err;
        }
        pass = pass && prev_err <= 1e-9 * tot0;  // finest partition resolves the target exactly
        out.push_back({"jacobi.tot_refinement", 5, min_margin, pass});
    }

    // Exact two-impulse shuffle identity on parameter draws that keep all
    // four solutions alive through the probe time.
    {
        std::mt19937_64 rng(cfg.seed ^ 0xbf58476d1ce4e5b9ULL);
        std::uniform_real_distribution<double> coeff(-0.4, 2.0);
        std::uniform_real_distribution<double> when(2.0, 2.5);
        double max_err = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double a = coeff(rng), b = coeff(rng), A = coeff(rng), B = coeff(rng);
            const double t = when(rng);
            const double lhs = two_impulse_solution(A, B, t) + two_impulse_solution(a, b, t) -
                               two_impulse_solution(A, b, t) - two_impulse_solution(a, B, t);
            const double rhs = (A - a) * (B - b) * (t - 2.0);
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            max_err = std::max(max_err, std::abs(lhs - rhs) / scale);
        }
        out.push_back({"jacobi.two_impulse_identity", 100, -max_err, max_err <= 1e-12});
    }

    // Product-average property: j_av^n >= prod j_i while all members live.
    {
        double min_margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        std::uint64_t pstate = cfg.seed ^ 0x2545f4914f6cdd1dULL;
        const int trials = std::max(1, cfg.trials / 4);
        for (int i = 0; i < trials; ++i) {
            std::mt19937_64 rng(splitmix64(pstate));
            std::uniform_int_distribution<int> nn(2, 4);
            std::bernoulli_distribution constant_case(0.5);
            const int n = nn(rng);
            ScheduleFamily family;
            family.weights.assign(n, 1.0 / n);
            if (constant_case(rng)) {
                std::uniform_real_distribution<double> level(-4.0, 1.0);
                for (int m = 0; m < n; ++m)
                    family.members.push_back(KappaSchedule::constant(level(rng)));
            } else {
                for (int m = 0; m < n; ++m)
                    family.members.push_back(random_schedule(rng(), cfg.horizon));
            }
            const VerifyReport rep = product_average_check(family, cfg.horizon, cfg.step);
            min_margin = std::min(min_margin, rep.min_margin / std::max(rep.scale, 1e-300));
            pass = pass && rep.pass;
        }
        out.push_back({"jacobi.product_average", std::max(1, cfg.trials / 4), min_margin, pass});
    }

    return out;
}

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

std::vector<CheckResult> series_suite(const Scenario& scenario) {
    std::vector<CheckResult> out;

    const ProductSpace h2xr2({{2, -1.0}, {2, 0.0}});
    const RiemannInvariants inv = invariants_from_product(h2xr2);
    const SmallBallSeries vol = gray_series(inv);
    const SmallBallSeries ebg = bound_series(BoundKind::EBG, inv);
    const SmallBallSeries bg = bound_series(BoundKind::BG, inv, Rational(-1));

    // Exact rational coefficients for the worked example.
    {
        const bool ok = vol.c2 == Rational(1, 18) && vol.c4 == Rational(1, 720) &&
                        ebg.c2 == Rational(1, 18) && ebg.c4 == Rational(13, 6480) &&
                        bg.c2 == Rational(1, 9) && bg.c4 == Rational(13, 2160);
        out.push_back({"series.rationals", 6, ok ? 0.0 : -1.0, ok});
    }

    // Gap coefficients agree between the difference route and the invariant
    // closed forms, and the eBG series reproduces the exact c2, over random
    // product spaces.
    {
        bool ok = true;
        std::mt19937_64 rng(scenario.quadrature.seed ^ 0xa0761d6478bd642fULL);
        std::uniform_int_distribution<int> nfac(1, 3);
        std::uniform_int_distribution<int> fdim(1, 4);
        std::uniform_int_distribution<int> num(-3, 3);
        std::uniform_int_distribution<int> den(1, 4);
        int done = 0;
        while (done < 50) {
            std::vector<SpaceFactor> factors;
            const int nf = nfac(rng);
            int total = 0;
            for (int f = 0; f < nf; ++f) {
                const int dim = fdim(rng);
                const double k = dim == 1 ? 0.0 : static_cast<double>(num(rng)) / den(rng);
                factors.push_back({dim, k});
                total += dim;
            }
            if (total < 3) continue;
            ProductSpace space(factors);
            ++done;
            const RiemannInvariants ri = invariants_from_product(space);
            ok = ok && series_gap(GapKind::EbgMinusVol, ri) ==
                           series_gap_closed_form(GapKind::EbgMinusVol, ri);
            ok = ok && series_gap(GapKind::VolMinusHOfR, ri) ==
                           series_gap_closed_form(GapKind::VolMinusHOfR, ri);
            ok = ok && bound_series(BoundKind::EBG, ri).c2 == gray_series(ri).c2;
            ok = ok && series_gap(GapKind::EbgMinusVol, ri) >= 0;
        }
        out.push_back({"series.gap_consistency", 50, ok ? 0.0 : -1.0, ok});
    }

    // Numerically fitted coefficients from sampled curves on t in [0.01, 0.1].
    {
        std::vector<double> ts(25);
        for (std::size_t i = 0; i < ts.size(); ++i)
            ts[i] = 0.01 + (0.1 - 0.01) * static_cast<double>(i) / (ts.size() - 1);

        std::vector<double> vol_vals, grid = ts;
        for (double t : ts) vol_vals.push_back(exact_ball_volume(h2xr2, t, {1e-16, 1e-13}));
        const RicciSpectrum spectrum = ricci_spectrum(h2xr2);
        const SphereQuadrature fit_quad{SphereQuadratureMode::ExactReduced, 64, 0};
        const SphereRule rule = build_sphere_rule(spectrum, fit_quad);
        const std::vector<double> ebg_vals = ebg_bound_cumulative(rule, grid);
        const std::vector<double> bg_vals = bg_bound_cumulative(spectrum, grid);

        const auto fit_check = [&](const char* name, const std::vector<double>& vals,
                                   const SmallBallSeries& want) {
            const FittedSeries fit = fit_series_coefficients(ts, vals, 4);
            const double e2 = rel_err(fit.c2, static_cast<double>(want.c2));
            const double e4 = rel_err(fit.c4, static_cast<double>(want.c4));
            const double err = std::max(e2, e4);
            out.push_back({std::string("series.fit.") + name, static_cast<long>(ts.size()),
                           1e-4 - err, err <= 1e-4});
        };
        fit_check("volume", vol_vals, vol);
        fit_check("ebg", ebg_vals, ebg);
        fit_check("bg", bg_vals, bg);
    }

    return out;
}

std::vector<CheckResult> operator_suite(const Scenario& scenario) {
    std::vector<CheckResult> out;
    const double step = scenario.jacobi.step;

    struct Case {
        ProductSpace space;
        std::vector<double> weights;
        double horizon;
    };
    const std::vector<Case> cases = {
        {ProductSpace({{2, -1.0}, {2, 0.0}}), {1.0, 0.0}, 5.0},
        {ProductSpace({{2, -1.0}, {2, 0.0}}), {0.5, 0.5}, 5.0},
        {ProductSpace({{3, -1.0}, {2, 0.0}}), {0.25, 0.75}, 5.0},
        {ProductSpace({{3, -1.0}, {2, 0.0}}), {2.0 / 3.0, 1.0 / 3.0}, 5.0},
        {ProductSpace({{2, 1.0}}), {1.0}, 2.5},
    };

    // det J from the dense matrix ODE against the sn product.
    {
        double max_err = 0.0;
        for (const auto& c : cases) {
            const CurvatureOperator op = normal_curvature(c.space, c.weights);
            const OperatorJacobiTrajectory traj = solve_operator_jacobi(op, c.horizon, step);
            for (const auto& s : traj.samples) {
                if (s.t < 0.2) continue;
                double expect = 1.0;
                for (double k : op.sectional) expect *= sn(k, s.t);
                if (expect <= 0.0) continue;
                max_err = std::max(max_err, rel_err(s.detJ, expect));
            }
        }
        out.push_back({"operator.det_consistency", static_cast<long>(cases.size()), 1e-8 - max_err,
                       max_err <= 1e-8});
    }

    // kappa_eff = u' + u^2 never exceeds -Ric/(d-1), and the Cauchy-Schwarz
    // gap stays nonnegative.
    {
        double min_margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        for (const auto& c : cases) {
            const CurvatureOperator op = normal_curvature(c.space, c.weights);
            const OperatorJacobiTrajectory traj = solve_operator_jacobi(op, c.horizon, step);
            const double d1 = static_cast<double>(op.sectional.size());
            const double bound = -op.ricci_trace() / d1;
            for (const auto& e : expansion_chain(traj, op)) {
                min_margin = std::min(min_margin, bound - e.kappa_eff);
                pass = pass && (e.kappa_eff <= bound + 1e-9) && (e.cauchy_schwarz_gap >= -1e-9);
            }
        }
        out.push_back({"operator.kappa_eff", static_cast<long>(cases.size()), min_margin, pass});
    }

    // Total area against the centered difference of the exact ball volume.
    {
        const ProductSpace h2xr2({{2, -1.0}, {2, 0.0}});
        const ProductSpace h3xr2({{3, -1.0}, {2, 0.0}});
        double max_err = 0.0;
        const double fd_h = 1e-4;
        for (const ProductSpace* space : {&h2xr2, &h3xr2}) {
            for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
                const double ta = total_area(*space, t, scenario.quadrature);
                const double fd = (exact_ball_volume(*space, t + fd_h, {1e-14, 1e-12}) -
                                   exact_ball_volume(*space, t - fd_h, {1e-14, 1e-12})) /
                                  (2.0 * fd_h);
                max_err = std::max(max_err, rel_err(ta, fd));
            }
        }
        out.push_back({"operator.total_area", 10, 1e-6 - max_err, max_err <= 1e-6});
    }

    // Comparison-space ratio monotonicity, per direction and averaged.
    {
        std::vector<double> grid;
        for (double t = 0.1; t <= 5.0 + 1e-12; t += 0.05) grid.push_back(t);
        const ProductSpace h2xr2({{2, -1.0}, {2, 0.0}});
        const RatioMonotonicityReport rep =
            ratio_monotonicity(h2xr2, -1.0 / 3.0, grid, scenario.quadrature);
        const double margin =
            std::min({rep.per_direction.min_upper_margin, rep.per_direction.min_monotone_margin,
                      rep.averaged_area.min_upper_margin, rep.averaged_area.min_monotone_margin,
                      rep.averaged_volume.min_upper_margin, rep.averaged_volume.min_monotone_margin,
                      rep.model_volume.min_upper_margin, rep.model_volume.min_monotone_margin});
        out.push_back(
            {"operator.ratio_monotonicity", static_cast<long>(grid.size()), margin, rep.pass});
    }

    // Liouville-style histogram: the Ricci-form law over bearings is the same
    // at time t as at time 0 (no turning in product spaces).
    {
        const ProductSpace h2xr2({{2, -1.0}, {2, 0.0}});
        std::mt19937_64 rng(scenario.quadrature.seed ^ 0x8bb84b93962eacc9ULL);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<int> hist0(32, 0), hist3(32, 0);
        bool pass = true;
        for (int i = 0; i < 2000; ++i) {
            std::vector<double> comps(4);
            for (double& c : comps) c = normal(rng);
            const Direction x = Direction::normalized(comps);
            const double v0 = ricci_form_along_flow(h2xr2, x, 0.0);
            const double v3 = ricci_form_along_flow(h2xr2, x, 3.0);
            pass = pass && (v0 == v3);
            const auto bin = [](double v) {
                return std::min(31, std::max(0, static_cast<int>((v + 1.0) * 32.0)));
            };
            ++hist0[bin(v0)];
            ++hist3[bin(v3)];
        }
        pass = pass && (hist0 == hist3);
        out.push_back({"operator.liouville_histogram", 2000, pass ? 0.0 : -1.0, pass});
    }

    return out;
}

std::vector<CheckResult> sphere_moment_suite(const Scenario& scenario) {
    std::vector<CheckResult> out;

    // Moment identities for the first two powers of the Ricci form, checked
    // by Monte Carlo against the exact contractions in d = 3..8.
    {
        bool pass = true;
        double min_sigma_margin = std::numeric_limits<double>::infinity();
        std::uint64_t state = scenario.quadrature.seed ^ 0xe7037ed1a0b428dbULL;
        for (int d = 3; d <= 8; ++d) {
            const RicciSpectrum spectrum = random_spectrum(d, -3.0, 2.0, splitmix64(state));
            double lambda2 = 0.0;
            for (const auto& b : spectrum.blocks())
                lambda2 += b.value * b.value * b.multiplicity;
            const double r = scalar_curvature(spectrum);
            const double want1 = r / d;
            const double want2 = (r * r + 2.0 * lambda2) / (d * (d + 2));

            SphereQuadrature mc{SphereQuadratureMode::MonteCarlo, 200000, splitmix64(state)};
            const SphereAverage m1 = sphere_average(spectrum, [](double x) { return x; }, mc);
            const SphereAverage m2 = sphere_average(spectrum, [](double x) { return x * x; }, mc);
            min_sigma_margin =
                std::min(min_sigma_margin, 3.0 * m1.std_error - std::abs(m1.mean - want1));
            min_sigma_margin =
                std::min(min_sigma_margin, 3.0 * m2.std_error - std::abs(m2.mean - want2));
            pass = pass && std::abs(m1.mean - want1) <= 3.0 * m1.std_error &&
                   std::abs(m2.mean - want2) <= 3.0 * m2.std_error;
        }
        out.push_back({"sphere.moment_identities", 12, min_sigma_margin, pass});
    }

    // Exact-reduced and Monte Carlo averages agree within 3 standard errors
    // for a bound-shaped integrand.
    {
        const RicciSpectrum spectrum = ricci_spectrum(ProductSpace({{2, -1.0}, {2, 0.0}}));
        const auto f = [](double x) { return std::pow(sn(x / 3.0, 2.0), 3); };
        const SphereAverage exact = sphere_average(spectrum, f, scenario.quadrature);
        SphereQuadrature mc{SphereQuadratureMode::MonteCarlo, 400000,
                            scenario.quadrature.seed ^ 0x589965cc75374cc3ULL};
        const SphereAverage sampled = sphere_average(spectrum, f, mc);
        const double margin = 3.0 * sampled.std_error - std::abs(exact.mean - sampled.mean);
        out.push_back({"sphere.average_mc_agreement", static_cast<long>(sampled.samples), margin,
                       margin >= 0.0});
    }

    return out;
}

AsymptoticsResult asymptotics_result(int d, int nodes) {
    std::vector<double> eigenvalues(d, 0.0);
    eigenvalues[0] = -(d - 1.0);
    const RicciSpectrum spectrum = RicciSpectrum::from_eigenvalues(eigenvalues);
    const SphereQuadrature quad{SphereQuadratureMode::ExactReduced, nodes, 0};
    const SphereRule rule = build_sphere_rule(spectrum, quad);

    std::vector<double> ts;
    const int n = 15;
    for (int i = 0; i < n; ++i)
        ts.push_back(50.0 * std::pow(200.0 / 50.0, static_cast<double>(i) / (n - 1)));
    ts.push_back(100.0);  // keep the footnote probe on the grid
    std::sort(ts.begin(), ts.end());

    const std::vector<double> ebg = ebg_bound_cumulative(rule, ts);
    const std::vector<double> bg = bg_bound_cumulative(spectrum, ts);

    // Least-squares slope of log(ratio) against log t.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double x = std::log(ts[i]);
        const double y = std::log(ebg[i] / bg[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(ts.size());
    AsymptoticsResult res;
    res.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    const auto it = std::lower_bound(ts.begin(), ts.end(), 100.0);
    const std::size_t idx = static_cast<std::size_t>(it - ts.begin());
    const double ratio = ebg[idx] / bg[idx];
    res.ratio_rel_err_at_100 = rel_err(ratio, beam_asymptotics(d, 100.0).ratio);
    return res;
}

std::vector<CheckResult> asymptotics_suite(const Scenario& scenario) {
    (void)scenario;
    const int d = 4;
    const AsymptoticsResult res = asymptotics_result(d, 256);
    std::vector<CheckResult> out;
    const double slope_err = std::abs(res.slope - (-(d - 1) / 2.0));
    out.push_back({"asymptotics.slope", 16, 0.05 - slope_err, slope_err <= 0.05});
    out.push_back({"asymptotics.footnote_ratio", 1, 0.10 - res.ratio_rel_err_at_100,
                   res.ratio_rel_err_at_100 <= 0.10});
    return out;
}

double appendix_crossing_root() {
    const ProductSpace h3xr2({{3, -1.0}, {2, 0.0}});
    const double k_model = -6.0 / 20.0;  // scalar curvature -6 in dimension 5
    const auto f = [&](double t) {
        return exact_ball_volume(h3xr2, t) - model_ball_volume(5, k_model, t);
    };
    double lo = 6.0, hi = 8.0;
    double flo = f(lo);
    for (int i = 0; i < 80 && hi - lo > 1e-10; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<CheckResult> crossing_suite() {
    const double root = appendix_crossing_root();
    const double err = std::abs(root - 7.3216);
    return {{"appendix.crossing_root", 1, 5e-4 - err, err <= 5e-4}};
}

std::vector<CheckResult> run_all_suites(const Scenario& scenario) {
    std::vector<CheckResult> out;
    const auto append = [&](std::vector<CheckResult> v) {
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    };
    append(bounds_suite(scenario));
    append(random_spectra_suite(scenario));
    append(jacobi_suite(scenario));
    append(series_suite(scenario));
    append(operator_suite(scenario));
    append(sphere_moment_suite(scenario));
    append(asymptotics_suite(scenario));
    append(crossing_suite());
    return out;
}

}  // namespace riccibound
