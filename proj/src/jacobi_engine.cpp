#include "riccibound/jacobi_engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace riccibound {

KappaSchedule KappaSchedule::constant(double level) {
    KappaSchedule k;
    k.knots = {0.0};
    k.levels = {level};
    return k;
}

double KappaSchedule::smooth_at(double t) const {
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    const std::size_t idx = static_cast<std::size_t>(it - knots.begin());
    return levels[idx == 0 ? 0 : idx - 1];
}

void KappaSchedule::validate() const {
    if (knots.empty() || knots.front() != 0.0)
        throw std::invalid_argument("KappaSchedule: first knot must be 0");
    if (knots.size() != levels.size())
        throw std::invalid_argument("KappaSchedule: knots/levels size mismatch");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i] > knots[i - 1]))
            throw std::invalid_argument("KappaSchedule: knots must strictly increase");
    for (double v : levels)
        if (!std::isfinite(v)) throw std::invalid_argument("KappaSchedule: non-finite level");
    double prev = 0.0;
    for (const auto& im : impulses) {
        if (!(im.time > prev))
            throw std::invalid_argument("KappaSchedule: impulse times must be positive and increasing");
        if (!std::isfinite(im.weight))
            throw std::invalid_argument("KappaSchedule: non-finite impulse weight");
        prev = im.time;
    }
}

std::string schedule_to_json(const KappaSchedule& schedule) {
    nlohmann::json j;
    j["smooth"] = nlohmann::json::array();
    for (std::size_t i = 0; i < schedule.knots.size(); ++i)
        j["smooth"].push_back({schedule.knots[i], schedule.levels[i]});
    j["impulses"] = nlohmann::json::array();
    for (const auto& im : schedule.impulses) j["impulses"].push_back({im.time, im.weight});
    return j.dump();
}

KappaSchedule schedule_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    KappaSchedule out;
    for (const auto& cell : j.at("smooth")) {
        out.knots.push_back(cell.at(0).get<double>());
        out.levels.push_back(cell.at(1).get<double>());
    }
    if (j.contains("impulses"))
        for (const auto& im : j.at("impulses"))
            out.impulses.push_back({im.at(0).get<double>(), im.at(1).get<double>()});
    out.validate();
    return out;
}

namespace {

// One RK4 step for (j, p) with j' = p, p' = kappa j, constant kappa.
inline void rk4_step(double kappa, double h, double& j, double& p) {
    const double k1j = p, k1p = kappa * j;
    const double k2j = p + 0.5 * h * k1p, k2p = kappa * (j + 0.5 * h * k1j);
    const double k3j = p + 0.5 * h * k2p, k3p = kappa * (j + 0.5 * h * k2j);
    const double k4j = p + h * k3p, k4p = kappa * (j + h * k3j);
    j += h / 6.0 * (k1j + 2.0 * k2j + 2.0 * k3j + k4j);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
}

// Root of the cubic Hermite interpolant of j on [ta, tb], bracketed by a
// sign change; bisection to 1e-12.
double hermite_zero(double ta, double ja, double pa, double tb, double jb, double pb) {
    const double h = tb - ta;
    const auto eval = [&](double t) {
        const double s = (t - ta) / h;
        const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        const double h10 = s * (1.0 - s) * (1.0 - s);
        const double h01 = s * s * (3.0 - 2.0 * s);
        const double h11 = s * s * (s - 1.0);
        return h00 * ja + h10 * h * pa + h01 * jb + h11 * h * pb;
    };
    double lo = ta, hi = tb, flo = ja;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(mid);
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double JacobiSolution::value_at_or_after(double t) const {
    auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
    if (it == times.end()) throw std::out_of_range("JacobiSolution: t beyond solved horizon");
    return j[static_cast<std::size_t>(it - times.begin())];
}

JacobiSolution solve_jacobi(const KappaSchedule& schedule, double horizon, double step,
                            const std::vector<double>& extra_boundaries, double t0, double j0,
                            double jprime0) {
    schedule.validate();
    if (!(horizon > t0)) throw std::invalid_argument("solve_jacobi: horizon must exceed start");
    if (!(step > 0.0)) throw std::invalid_argument("solve_jacobi: step must be positive");
    if (step > horizon - t0) throw std::invalid_argument("solve_jacobi: step exceeds horizon");

    std::set<double> bounds;
    bounds.insert(t0);
    bounds.insert(horizon);
    for (double k : schedule.knots)
        if (k > t0 && k < horizon) bounds.insert(k);
    for (const auto& im : schedule.impulses)
        if (im.time > t0 && im.time < horizon) bounds.insert(im.time);
    for (double b : extra_boundaries)
        if (b > t0 && b < horizon) bounds.insert(b);

    JacobiSolution sol;
    sol.times.push_back(t0);
    sol.j.push_back(j0);
    sol.jprime.push_back(jprime0);

    double j = j0, p = jprime0;
    auto impulse_it = schedule.impulses.begin();
    while (impulse_it != schedule.impulses.end() && impulse_it->time <= t0) ++impulse_it;

    double seg_start = t0;
    for (auto it = std::next(bounds.begin()); it != bounds.end(); ++it) {
        const double seg_end = *it;
        const double kappa = schedule.smooth_at(0.5 * (seg_start + seg_end));
        const int n = std::max(1, static_cast<int>(std::ceil((seg_end - seg_start) / step)));
        const double h = (seg_end - seg_start) / n;
        for (int s = 0; s < n; ++s) {
            const double ta = seg_start + s * h;
            const double tb = (s + 1 == n) ? seg_end : ta + h;
            if (sol.stuck) {
                sol.times.push_back(tb);
                sol.j.push_back(0.0);
                sol.jprime.push_back(0.0);
                continue;
            }
            const double ja = j, pa = p;
            rk4_step(kappa, tb - ta, j, p);
            if (ja > 0.0 && j <= 0.0) {
                sol.first_zero = (j == 0.0) ? tb : hermite_zero(ta, ja, pa, tb, j, p);
                sol.stuck = true;
                j = 0.0;
                p = 0.0;
            }
            sol.times.push_back(tb);
            sol.j.push_back(j);
            sol.jprime.push_back(p);
        }
        // Impulse at the segment boundary: exact jump j' += a j. Once the
        // solution is stuck the zero wins and the jump is dropped, which is
        // recorded because the governing convention leaves the coincident
        // case undefined.
        if (impulse_it != schedule.impulses.end() && impulse_it->time == seg_end) {
            if (sol.stuck) {
                sol.impulse_at_zero = true;
            } else {
                p += impulse_it->weight * j;
                sol.jprime.back() = p;
            }
            ++impulse_it;
        }
        seg_start = seg_end;
    }
    return sol;
}

double two_impulse_solution(double a, double b, double t) {
    if (t < 0.0) throw std::invalid_argument("two_impulse_solution: negative time");
    // Segment [0,1]: j = t, no interior zero.
    if (t <= 1.0) return t;
    // Segment [1,2]: j = t + a(t-1), slope 1 + a from j(1) = 1.
    {
        const double slope = 1.0 + a;
        if (slope < 0.0) {
            const double root = 1.0 + 1.0 / (-slope);
            if (root <= 2.0 && t >= root) return 0.0;
        }
        if (t <= 2.0) return t + a * (t - 1.0);
    }
    const double j2 = 2.0 + a;
    if (j2 <= 0.0) return 0.0;  // zero reached at or before t = 2
    // Segment [2,inf): slope picks up b j(2).
    const double slope = 1.0 + a + b * j2;
    if (slope < 0.0) {
        const double root = 2.0 + j2 / (-slope);
        if (t >= root) return 0.0;
    }
    return t + a * (t - 1.0) + b * j2 * (t - 2.0);
}

namespace {

std::vector<double> union_knots(const KappaSchedule& k1, const KappaSchedule& k2) {
    std::set<double> s(k1.knots.begin(), k1.knots.end());
    s.insert(k2.knots.begin(), k2.knots.end());
    return {s.begin(), s.end()};
}

std::vector<double> union_impulse_times(const KappaSchedule& k1, const KappaSchedule& k2) {
    std::set<double> s;
    for (const auto& im : k1.impulses) s.insert(im.time);
    for (const auto& im : k2.impulses) s.insert(im.time);
    return {s.begin(), s.end()};
}

double impulse_weight_at(const KappaSchedule& k, double time) {
    for (const auto& im : k.impulses)
        if (im.time == time) return im.weight;
    return 0.0;
}

// Rebuild a schedule on an explicit knot set (levels resampled) and an
// explicit impulse-time set (missing impulses get weight 0).
KappaSchedule refine(const KappaSchedule& k, const std::vector<double>& knots,
                     const std::vector<double>& impulse_times) {
    KappaSchedule out;
    out.knots = knots;
    out.levels.reserve(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) out.levels.push_back(k.smooth_at(knots[i]));
    for (double t : impulse_times) out.impulses.push_back({t, impulse_weight_at(k, t)});
    return out;
}

}  // namespace

std::pair<KappaSchedule, KappaSchedule> merge_minmax(const KappaSchedule& k1,
                                                     const KappaSchedule& k2) {
    const auto knots = union_knots(k1, k2);
    const auto times = union_impulse_times(k1, k2);
    const KappaSchedule a = refine(k1, knots, times);
    const KappaSchedule b = refine(k2, knots, times);
    KappaSchedule kmax = a, kmin = a;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        kmax.levels[i] = std::max(a.levels[i], b.levels[i]);
        kmin.levels[i] = std::min(a.levels[i], b.levels[i]);
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        kmax.impulses[i].weight = std::max(a.impulses[i].weight, b.impulses[i].weight);
        kmin.impulses[i].weight = std::min(a.impulses[i].weight, b.impulses[i].weight);
    }
    return {kmax, kmin};
}

bool dominates(const KappaSchedule& k1, const KappaSchedule& k2) {
    const auto knots = union_knots(k1, k2);
    const auto times = union_impulse_times(k1, k2);
    const KappaSchedule a = refine(k1, knots, times);
    const KappaSchedule b = refine(k2, knots, times);
    for (std::size_t i = 0; i < knots.size(); ++i)
        if (a.levels[i] < b.levels[i]) return false;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (a.impulses[i].weight < b.impulses[i].weight) return false;
    return true;
}

namespace {

std::vector<double> shared_boundaries(const std::vector<const KappaSchedule*>& ks) {
    std::set<double> s;
    for (const auto* k : ks) {
        s.insert(k->knots.begin(), k->knots.end());
        for (const auto& im : k->impulses) s.insert(im.time);
    }
    return {s.begin(), s.end()};
}

}  // namespace

VerifyReport verify_monotonicity(const KappaSchedule& k1, const KappaSchedule& k2,
                                 double horizon, double step) {
    VerifyReport rep;
    rep.check = "monotonicity";
    if (!dominates(k1, k2)) {
        rep.skipped = true;
        return rep;
    }
    const auto bounds = shared_boundaries({&k1, &k2});
    const JacobiSolution s1 = solve_jacobi(k1, horizon, step, bounds);
    const JacobiSolution s2 = solve_jacobi(k2, horizon, step, bounds);
    double min_margin = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (std::size_t i = 0; i < s1.times.size(); ++i) {
        min_margin = std::min(min_margin, s1.j[i] - s2.j[i]);
        scale = std::max(scale, s1.j[i]);
    }
    rep.min_margin = min_margin;
    rep.scale = scale;
    rep.pass = min_margin >= -1e-9 * scale;
    return rep;
}

VerifyReport verify_shuffling(const KappaSchedule& k1, const KappaSchedule& k2, double p,
                              double horizon, double step) {
    if (p < 1.0) throw std::invalid_argument("verify_shuffling: p must be >= 1");
    VerifyReport rep;
    rep.check = "shuffling";
    const auto [kmax, kmin] = merge_minmax(k1, k2);
    const auto bounds = shared_boundaries({&k1, &k2});
    const JacobiSolution s1 = solve_jacobi(k1, horizon, step, bounds);
    const JacobiSolution s2 = solve_jacobi(k2, horizon, step, bounds);
    const JacobiSolution smax = solve_jacobi(kmax, horizon, step, bounds);
    const JacobiSolution smin = solve_jacobi(kmin, horizon, step, bounds);
    double min_margin = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (std::size_t i = 0; i < s1.times.size(); ++i) {
        const double lhs = std::pow(smax.j[i], p) + std::pow(smin.j[i], p);
        const double rhs = std::pow(s1.j[i], p) + std::pow(s2.j[i], p);
        min_margin = std::min(min_margin, lhs - rhs);
        scale = std::max(scale, lhs);
    }
    rep.min_margin = min_margin;
    rep.scale = scale;
    rep.pass = min_margin >= -1e-9 * scale;
    return rep;
}

void ScheduleFamily::validate() const {
    if (members.empty()) throw std::invalid_argument("ScheduleFamily: empty");
    if (weights.size() != members.size())
        throw std::invalid_argument("ScheduleFamily: weights size mismatch");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("ScheduleFamily: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("ScheduleFamily: weights must sum to 1");
    for (const auto& m : members) m.validate();
    double prev = 0.0;
    const int n = static_cast<int>(members.size());
    for (const auto& sh : shuffles) {
        if (!(sh.time > prev))
            throw std::invalid_argument("ScheduleFamily: shuffle times must be positive and increasing");
        prev = sh.time;
        if (static_cast<int>(sh.permutation.size()) != n)
            throw std::invalid_argument("ScheduleFamily: permutation size mismatch");
        std::vector<bool> seen(n, false);
        for (int idx : sh.permutation) {
            if (idx < 0 || idx >= n || seen[idx])
                throw std::invalid_argument("ScheduleFamily: not a permutation");
            seen[idx] = true;
        }
        // Measure preservation: a shuffle may only exchange equal weights.
        for (int i = 0; i < n; ++i)
            if (weights[i] != weights[sh.permutation[i]])
                throw std::invalid_argument("ScheduleFamily: shuffle does not preserve the weight measure");
    }
}

std::vector<KappaSchedule> apply_shuffles(const ScheduleFamily& family) {
    family.validate();
    const int n = static_cast<int>(family.members.size());
    if (family.shuffles.empty()) return family.members;

    // Common partition: member knots, impulse times, and shuffle times.
    std::set<double> knotset;
    std::set<double> timeset;
    for (const auto& m : family.members) {
        knotset.insert(m.knots.begin(), m.knots.end());
        for (const auto& im : m.impulses) timeset.insert(im.time);
    }
    for (const auto& sh : family.shuffles) knotset.insert(sh.time);
    const std::vector<double> knots(knotset.begin(), knotset.end());
    const std::vector<double> times(timeset.begin(), timeset.end());

    std::vector<KappaSchedule> refined;
    refined.reserve(n);
    for (const auto& m : family.members) refined.push_back(refine(m, knots, times));

    const auto active_member = [&](int traj, double t) {
        int m = traj;
        for (const auto& sh : family.shuffles) {
            if (sh.time <= t) m = sh.permutation[traj];
            else break;
        }
        return m;
    };

    std::vector<KappaSchedule> out(n);
    for (int i = 0; i < n; ++i) {
        out[i].knots = knots;
        out[i].levels.resize(knots.size());
        for (std::size_t c = 0; c < knots.size(); ++c)
            out[i].levels[c] = refined[active_member(i, knots[c])].levels[c];
        for (std::size_t c = 0; c < times.size(); ++c)
            out[i].impulses.push_back(
                {times[c], refined[active_member(i, times[c])].impulses[c].weight});
    }
    return out;
}

ScheduleFamily sort_family(const ScheduleFamily& family) {
    family.validate();
    ScheduleFamily out = family;
    out.shuffles.clear();
    const int n = static_cast<int>(out.members.size());
    // Bubble network of pairwise merges; comparators act cell-by-cell, so
    // n-1 passes order every cell simultaneously.
    for (int pass = 0; pass < n - 1; ++pass)
        for (int i = 0; i + 1 < n; ++i) {
            auto [kmax, kmin] = merge_minmax(out.members[i], out.members[i + 1]);
            out.members[i] = std::move(kmax);
            out.members[i + 1] = std::move(kmin);
        }
    return out;
}

double tot_functional(const ScheduleFamily& family, double s, double p, double horizon,
                      double step) {
    if (p < 1.0) throw std::invalid_argument("tot_functional: p must be >= 1");
    if (s > horizon) throw std::invalid_argument("tot_functional: s beyond horizon");
    if (!(s > 0.0)) throw std::invalid_argument("tot_functional: s must be positive");
    const auto schedules = apply_shuffles(family);
    double total = 0.0;
    for (std::size_t i = 0; i < schedules.size(); ++i) {
        const JacobiSolution sol = solve_jacobi(schedules[i], s, step);
        total += family.weights[i] * std::pow(sol.j.back(), p);
    }
    return total;
}

VerifyReport product_average_check(const ScheduleFamily& family, double horizon, double step) {
    family.validate();
    VerifyReport rep;
    rep.check = "product_average";
    const int n = static_cast<int>(family.members.size());

    // Schedule average on the refined common partition.
    std::set<double> knotset;
    std::set<double> timeset;
    for (const auto& m : family.members) {
        knotset.insert(m.knots.begin(), m.knots.end());
        for (const auto& im : m.impulses) timeset.insert(im.time);
    }
    const std::vector<double> knots(knotset.begin(), knotset.end());
    const std::vector<double> times(timeset.begin(), timeset.end());
    KappaSchedule avg;
    avg.knots = knots;
    avg.levels.assign(knots.size(), 0.0);
    for (double t : times) avg.impulses.push_back({t, 0.0});
    for (const auto& m : family.members) {
        const KappaSchedule r = refine(m, knots, times);
        for (std::size_t c = 0; c < knots.size(); ++c) avg.levels[c] += r.levels[c] / n;
        for (std::size_t c = 0; c < times.size(); ++c)
            avg.impulses[c].weight += r.impulses[c].weight / n;
    }

    std::vector<const KappaSchedule*> all;
    for (const auto& m : family.members) all.push_back(&m);
    all.push_back(&avg);
    const auto bounds = shared_boundaries(all);

    std::vector<JacobiSolution> sols;
    for (const auto& m : family.members) sols.push_back(solve_jacobi(m, horizon, step, bounds));
    const JacobiSolution sav = solve_jacobi(avg, horizon, step, bounds);

    double min_margin = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (std::size_t i = 0; i < sav.times.size(); ++i) {
        bool all_positive = true;
        double prod = 1.0;
        for (const auto& s : sols) {
            if (s.j[i] <= 0.0) {
                all_positive = false;
                break;
            }
            prod *= s.j[i];
        }
        if (i == 0 || !all_positive) continue;
        const double lhs = std::pow(sav.j[i], n);
        min_margin = std::min(min_margin, lhs - prod);
        scale = std::max(scale, lhs);
    }
    rep.min_margin = std::isfinite(min_margin) ? min_margin : 0.0;
    rep.scale = scale;
    rep.pass = rep.min_margin >= -1e-9 * scale;
    return rep;
}

KappaSchedule random_schedule(std::uint64_t seed, double horizon) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cells(1, 4);
    std::uniform_int_distribution<int> pulses(0, 3);
    std::uniform_real_distribution<double> level(-4.0, 4.0);
    std::uniform_real_distribution<double> weight(-3.0, 3.0);
    std::uniform_real_distribution<double> interior(0.05 * horizon, 0.95 * horizon);

    KappaSchedule k;
    const int nc = cells(rng);
    std::set<double> knotset{0.0};
    while (static_cast<int>(knotset.size()) < nc) knotset.insert(interior(rng));
    k.knots.assign(knotset.begin(), knotset.end());
    for (std::size_t i = 0; i < k.knots.size(); ++i) k.levels.push_back(level(rng));

    const int np = pulses(rng);
    std::set<double> timeset;
    while (static_cast<int>(timeset.size()) < np) timeset.insert(interior(rng));
    for (double t : timeset) k.impulses.push_back({t, weight(rng)});
    return k;
}

std::pair<KappaSchedule, KappaSchedule> random_ordered_pair(std::uint64_t seed, double horizon) {
    const KappaSchedule k2 = random_schedule(seed, horizon);
    std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
    std::uniform_real_distribution<double> offset(0.0, 2.0);
    KappaSchedule k1 = k2;
    for (double& lv : k1.levels) lv += offset(rng);
    for (auto& im : k1.impulses) im.weight += offset(rng);
    return {k1, k2};
}

}  // namespace riccibound
