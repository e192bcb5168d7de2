#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riccibound {

/// Coefficient schedule for the scalar Jacobi equation j'' = kappa(t) j.
/// The smooth part is piecewise constant: levels[i] applies on
/// [knots[i], knots[i+1]), the last level extends to infinity. Impulses are
/// Dirac terms a delta(t - s) applied as exact jumps j' += a j(s).
///
/// Sign convention: when modeling geometry, kappa = -Ric(X,X)/(d-1).
struct KappaSchedule {
    std::vector<double> knots;   // ascending, knots.front() == 0
    std::vector<double> levels;  // one per knot
    struct Impulse {
        double time = 0.0;
        double weight = 0.0;
    };
    std::vector<Impulse> impulses;  // strictly increasing positive times

    static KappaSchedule constant(double level);

    double smooth_at(double t) const;
    void validate() const;
};

/// {"smooth": [[t_start, level], ...], "impulses": [[t, w], ...]}
std::string schedule_to_json(const KappaSchedule& schedule);
KappaSchedule schedule_from_json(const std::string& text);

/// Sampled Jacobi solution with the stick-at-zero rule: after the first
/// interior zero the solution is identically zero.
struct JacobiSolution {
    std::vector<double> times;
    std::vector<double> j;
    std::vector<double> jprime;
    std::optional<double> first_zero;
    bool stuck = false;
    /// Set when an impulse arrived at or after the first zero and was
    /// dropped: the zero is processed first (stick wins), a case the
    /// governing convention leaves undefined.
    bool impulse_at_zero = false;

    double value_at_or_after(double t) const;  // nearest grid sample >= t
};

/// Integrates j'' = kappa(t) j with fixed-step RK4 on smooth segments;
/// segment boundaries sit at every knot, impulse time, and extra_boundaries
/// entry, so two schedules solved with the same boundary set share their
/// sample grid exactly. Initial conditions default to j(0)=0, j'(0)=1.
JacobiSolution solve_jacobi(const KappaSchedule& schedule, double horizon, double step,
                            const std::vector<double>& extra_boundaries = {},
                            double t0 = 0.0, double j0 = 0.0, double jprime0 = 1.0);

/// Closed-form solution for kappa(t) = a delta(t-1) + b delta(t-2) with the
/// stick rule applied at analytically computed zeros.
double two_impulse_solution(double a, double b, double t);

/// Pointwise max/min of two schedules on the refined common partition and
/// the union of impulse times. kmax + kmin = k1 + k2 pointwise.
std::pair<KappaSchedule, KappaSchedule> merge_minmax(const KappaSchedule& k1,
                                                     const KappaSchedule& k2);

/// True when k1 >= k2 pointwise: every refined level and every impulse weight.
bool dominates(const KappaSchedule& k1, const KappaSchedule& k2);

struct VerifyReport {
    std::string check;
    bool skipped = false;  // precondition not met
    double min_margin = 0.0;
    double scale = 0.0;
    bool pass = true;
};

/// Checks kappa1 >= kappa2 pointwise implies j1 >= j2 on the grid; when the
/// schedules are not ordered the check is skipped with a diagnostic.
VerifyReport verify_monotonicity(const KappaSchedule& k1, const KappaSchedule& k2,
                                 double horizon, double step);

/// Checks j_max^p + j_min^p >= j1^p + j2^p on the grid, where (kmax, kmin) is
/// the merged pair; covers every era of the stick rule that the schedules
/// reach.
VerifyReport verify_shuffling(const KappaSchedule& k1, const KappaSchedule& k2, double p,
                              double horizon, double step);

/// A weighted family of schedules, optionally shuffled: at each shuffle time
/// the permutation redefines which trajectory follows which schedule
/// (trajectory i follows member sigma(i)); sigma at t=0 is the identity.
struct ScheduleFamily {
    std::vector<KappaSchedule> members;
    std::vector<double> weights;  // nonnegative, sum to 1 within 1e-12
    struct Shuffle {
        double time = 0.0;
        std::vector<int> permutation;
    };
    std::vector<Shuffle> shuffles;  // strictly increasing positive times

    void validate() const;
};

/// Effective per-trajectory schedules after applying the shuffles.
std::vector<KappaSchedule> apply_shuffles(const ScheduleFamily& family);

/// Orders the family so that at every instant trajectory i follows the i-th
/// largest coefficient, realized by bubble passes of pairwise merge_minmax.
ScheduleFamily sort_family(const ScheduleFamily& family);

/// Weighted total solution sum_i w_i j_i(s)^p of the (shuffled) family.
/// Throws if s exceeds the solved horizon.
double tot_functional(const ScheduleFamily& family, double s, double p, double horizon,
                      double step);

/// Checks j_av(t)^n >= prod_i j_i(t) on the grid while all members are
/// positive, where j_av follows the schedule average.
VerifyReport product_average_check(const ScheduleFamily& family, double horizon, double step);

/// Randomized schedule generator used by the property suites: smooth levels
/// uniform in [-4,4] on up to 4 cells, up to 3 impulses with weights uniform
/// in [-3,3].
KappaSchedule random_schedule(std::uint64_t seed, double horizon);

/// Ordered pair k1 >= k2: k2 random, k1 adds nonnegative level/impulse
/// offsets uniform in [0,2] on the refined partition.
std::pair<KappaSchedule, KappaSchedule> random_ordered_pair(std::uint64_t seed, double horizon);

}  // namespace riccibound
