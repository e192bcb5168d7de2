#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "riccibound/jacobi_engine.hpp"

using namespace riccibound;

namespace {

constexpr double kPi = std::numbers::pi;

KappaSchedule two_impulse_schedule(double a, double b) {
    KappaSchedule k = KappaSchedule::constant(0.0);
    k.impulses = {{1.0, a}, {2.0, b}};
    return k;
}

}  // namespace

TEST_CASE("free solution and constant coefficients") {
    const JacobiSolution free = solve_jacobi(KappaSchedule::constant(0.0), 3.0, 1e-3);
    for (std::size_t i = 0; i < free.times.size(); ++i)
        CHECK(free.j[i] == doctest::Approx(free.times[i]).epsilon(1e-12));
    CHECK_FALSE(free.stuck);

    const JacobiSolution circ = solve_jacobi(KappaSchedule::constant(-1.0), 6.0, 1e-3);
    REQUIRE(circ.stuck);
    CHECK(*circ.first_zero == doctest::Approx(kPi).epsilon(1e-8));
    for (std::size_t i = 0; i < circ.times.size(); ++i) {
        const double t = circ.times[i];
        if (t < kPi - 1e-3)
            CHECK(circ.j[i] == doctest::Approx(std::sin(t)).epsilon(1e-9));
        else if (t > kPi)
            CHECK(circ.j[i] == 0.0);
    }

    const JacobiSolution grow = solve_jacobi(KappaSchedule::constant(1.0), 3.0, 1e-3);
    CHECK(grow.j.back() == doctest::Approx(std::sinh(3.0)).epsilon(1e-10));
}

TEST_CASE("solver rejects bad inputs") {
    CHECK_THROWS_AS(solve_jacobi(KappaSchedule::constant(0.0), 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_jacobi(KappaSchedule::constant(0.0), 1.0, 0.0), std::invalid_argument);
    KappaSchedule bad = KappaSchedule::constant(std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(solve_jacobi(bad, 1.0, 1e-3), std::invalid_argument);
}

TEST_CASE("impulses jump the derivative by weight times value") {
    KappaSchedule k = KappaSchedule::constant(0.0);
    k.impulses = {{1.0, 0.75}};
    const JacobiSolution sol = solve_jacobi(k, 2.0, 1e-3);
    // j(1) = 1, so j' jumps from 1 to 1.75 and j(2) = 1 + 1.75.
    CHECK(sol.j.back() == doctest::Approx(2.75).epsilon(1e-12));
}

TEST_CASE("two-impulse solution against the distributional closed form") {
    // Pre-zero profile for a = b = 1.
    CHECK(two_impulse_solution(1.0, 1.0, 0.5) == doctest::Approx(0.5));
    CHECK(two_impulse_solution(1.0, 1.0, 1.5) == doctest::Approx(2.0));
    CHECK(two_impulse_solution(1.0, 1.0, 3.0) == doctest::Approx(8.0));
    CHECK(two_impulse_solution(0.0, 0.0, 2.7) == doctest::Approx(2.7));

    // Stick rule engages between the impulses for strong negative a.
    CHECK(two_impulse_solution(-3.0, 0.0, 1.5) == 0.0);
    CHECK(two_impulse_solution(-3.0, 5.0, 4.0) == 0.0);  // still stuck after

    // Cross-check the closed form against the ODE path on random draws.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double a = coeff(rng), b = coeff(rng);
        const JacobiSolution sol = solve_jacobi(two_impulse_schedule(a, b), 3.0, 1e-4);
        for (double t : {0.7, 1.6, 2.4, 3.0}) {
            const double want = two_impulse_solution(a, b, t);
            const double got = sol.value_at_or_after(t);
            CHECK(got == doctest::Approx(want).epsilon(1e-6));
        }
    }
}

TEST_CASE("two-impulse shuffle identity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coeff(-0.4, 2.0);
    std::uniform_real_distribution<double> when(2.0, 2.5);
    for (int i = 0; i < 100; ++i) {
        const double a = coeff(rng), b = coeff(rng), A = coeff(rng), B = coeff(rng);
        const double t = when(rng);
        const double lhs = two_impulse_solution(A, B, t) + two_impulse_solution(a, b, t) -
                           two_impulse_solution(A, b, t) - two_impulse_solution(a, B, t);
        CHECK(lhs == doctest::Approx((A - a) * (B - b) * (t - 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("merge minmax") {
    // The impulsive quadruple from the worked two-impulse figure.
    KappaSchedule kpm = two_impulse_schedule(1.0, -1.0);
    KappaSchedule kmp = two_impulse_schedule(-1.0, 1.0);
    const auto [kmax, kmin] = merge_minmax(kpm, kmp);
    CHECK(kmax.impulses[0].weight == 1.0);
    CHECK(kmax.impulses[1].weight == 1.0);
    CHECK(kmin.impulses[0].weight == -1.0);
    CHECK(kmin.impulses[1].weight == -1.0);

    const auto [cmax, cmin] = merge_minmax(KappaSchedule::constant(3.0), KappaSchedule::constant(-1.0));
    CHECK(cmax.levels[0] == 3.0);
    CHECK(cmin.levels[0] == -1.0);

    // kmax + kmin = k1 + k2 on the refined partition, for random schedules.
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const KappaSchedule k1 = random_schedule(rng(), 5.0);
        const KappaSchedule k2 = random_schedule(rng(), 5.0);
        const auto [mx, mn] = merge_minmax(k1, k2);
        for (std::size_t c = 0; c < mx.knots.size(); ++c) {
            const double mid = mx.knots[c] + 1e-6;
            CHECK(mx.levels[c] + mn.levels[c] ==
                  doctest::Approx(k1.smooth_at(mid) + k2.smooth_at(mid)).epsilon(1e-12));
        }
        for (std::size_t c = 0; c < mx.impulses.size(); ++c) {
            CHECK(mx.impulses[c].weight >= mn.impulses[c].weight);
            double w1 = 0.0, w2 = 0.0;
            for (const auto& im : k1.impulses)
                if (im.time == mx.impulses[c].time) w1 = im.weight;
            for (const auto& im : k2.impulses)
                if (im.time == mx.impulses[c].time) w2 = im.weight;
            CHECK(mx.impulses[c].weight + mn.impulses[c].weight ==
                  doctest::Approx(w1 + w2).epsilon(1e-14));
        }
    }

    // Merging a schedule with itself is the identity.
    const KappaSchedule k = random_schedule(42, 5.0);
    const auto [same_max, same_min] = merge_minmax(k, k);
    CHECK(same_max.levels == same_min.levels);
    for (std::size_t c = 0; c < same_max.impulses.size(); ++c)
        CHECK(same_max.impulses[c].weight == same_min.impulses[c].weight);
}

TEST_CASE("monotonicity lemma") {
    // The figure pair: both impulses up versus both down.
    const VerifyReport fig =
        verify_monotonicity(two_impulse_schedule(1.0, 1.0), two_impulse_schedule(-1.0, -1.0), 4.0, 1e-3);
    CHECK_FALSE(fig.skipped);
    CHECK(fig.pass);

    // Identical schedules integrate identically.
    const KappaSchedule k = random_schedule(99, 5.0);
    const VerifyReport same = verify_monotonicity(k, k, 5.0, 1e-3);
    CHECK(same.min_margin == 0.0);

    // Reversed pair is skipped with a diagnostic.
    const auto [k1, k2] = random_ordered_pair(123, 5.0);
    CHECK(verify_monotonicity(k2, k1, 5.0, 1e-3).skipped);
    CHECK(verify_monotonicity(k1, k2, 5.0, 1e-3).pass);
}

TEST_CASE("ordered solutions can have crossing derivatives") {
    // a1 = 2, a2 = 1, shared strong negative second impulse: j1 stays above j2
    // although its post-impulse slope is more negative.
    KappaSchedule k1 = two_impulse_schedule(2.0, -100.0);
    KappaSchedule k2 = two_impulse_schedule(1.0, -100.0);
    const std::vector<double> bounds = {1.0, 2.0};
    const JacobiSolution s1 = solve_jacobi(k1, 2.5, 1e-4, bounds);
    const JacobiSolution s2 = solve_jacobi(k2, 2.5, 1e-4, bounds);
    bool derivative_crossed = false;
    for (std::size_t i = 0; i < s1.times.size(); ++i) {
        CHECK(s1.j[i] >= s2.j[i] - 1e-12);
        const bool alive = !s1.first_zero || s1.times[i] < *s1.first_zero;
        if (s1.times[i] > 2.0 && alive && s1.jprime[i] < s2.jprime[i]) derivative_crossed = true;
    }
    // Both solutions die shortly after the t = 2 impulse.
    CHECK(s1.first_zero.has_value());
    CHECK(s2.first_zero.has_value());
    CHECK(*s2.first_zero <= *s1.first_zero + 1e-9);
    CHECK(derivative_crossed);
}

TEST_CASE("late-start monotonicity variant") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lvl(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double T = 0.5;
        KappaSchedule k1 = KappaSchedule::constant(lvl(rng));
        KappaSchedule k2 = k1;
        k2.levels[0] -= std::abs(lvl(rng));  // k1 >= k2 everywhere
        // Later start with ordered values and ordered logarithmic slopes.
        const double j1T = 1.0, j2T = 0.8, u1 = 0.5, u2 = 0.2;
        const JacobiSolution s1 = solve_jacobi(k1, 4.0, 1e-3, {}, T, j1T, u1 * j1T);
        const JacobiSolution s2 = solve_jacobi(k2, 4.0, 1e-3, {}, T, j2T, u2 * j2T);
        for (std::size_t i = 0; i < s1.times.size(); ++i)
            CHECK(s1.j[i] >= s2.j[i] - 1e-9);
    }
}

TEST_CASE("shuffling lemma, figure quadruple and eras") {
    const VerifyReport fig = verify_shuffling(two_impulse_schedule(1.0, -1.0),
                                              two_impulse_schedule(-1.0, 1.0), 1.0, 4.0, 1e-3);
    CHECK(fig.pass);

    // Equal schedules give exact equality.
    const KappaSchedule k = random_schedule(404, 5.0);
    CHECK(verify_shuffling(k, k, 2.0, 5.0, 1e-3).min_margin == 0.0);

    // A pair driving j_min and one of j1/j2 to zero still satisfies the lemma.
    KappaSchedule hard1 = KappaSchedule::constant(-2.5);
    hard1.impulses = {{1.0, -3.0}};
    KappaSchedule hard2 = KappaSchedule::constant(1.0);
    hard2.impulses = {{1.5, -2.0}};
    for (double p : {1.0, 2.0, 3.0, 5.0}) {
        const VerifyReport rep = verify_shuffling(hard1, hard2, p, 6.0, 1e-3);
        CHECK(rep.pass);
    }
    // Sanity: those schedules do produce sticking solutions.
    CHECK(solve_jacobi(hard1, 6.0, 1e-3).stuck);
}

TEST_CASE("shuffling lemma randomized eras coverage") {
    std::mt19937_64 rng(2025);
    int stuck_min = 0, stuck_member = 0;
    for (int i = 0; i < 200; ++i) {
        const KappaSchedule k1 = random_schedule(rng(), 5.0);
        const KappaSchedule k2 = random_schedule(rng(), 5.0);
        for (double p : {1.0, 2.0, 3.0, 5.0}) {
            const VerifyReport rep = verify_shuffling(k1, k2, p, 5.0, 1e-3);
            CHECK(rep.pass);
        }
        const auto [kmax, kmin] = merge_minmax(k1, k2);
        if (solve_jacobi(kmin, 5.0, 1e-3).stuck) ++stuck_min;
        if (solve_jacobi(k1, 5.0, 1e-3).stuck || solve_jacobi(k2, 5.0, 1e-3).stuck) ++stuck_member;
    }
    // The generator must exercise the later eras of the proof.
    CHECK(stuck_min > 20);
    CHECK(stuck_member > 10);
}

TEST_CASE("stick rule holds on the grid") {
    KappaSchedule k = KappaSchedule::constant(-4.0);
    const JacobiSolution sol = solve_jacobi(k, 5.0, 1e-3);
    REQUIRE(sol.stuck);
    bool seen_zero = false;
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        if (sol.times[i] >= *sol.first_zero) {
            CHECK(sol.j[i] == 0.0);
            seen_zero = true;
        } else {
            CHECK(sol.j[i] >= 0.0);
        }
    }
    CHECK(seen_zero);
}

TEST_CASE("impulse arriving at or after the zero is dropped with a diagnostic") {
    // kappa = -1 sticks at pi; an impulse beyond that point must be dropped.
    KappaSchedule k = KappaSchedule::constant(-1.0);
    k.impulses = {{3.5, 5.0}};
    const JacobiSolution sol = solve_jacobi(k, 5.0, 1e-3);
    CHECK(sol.stuck);
    CHECK(sol.impulse_at_zero);
    CHECK(sol.j.back() == 0.0);

    // The same impulse before the zero is applied, not dropped.
    k.impulses = {{1.0, 5.0}};
    const JacobiSolution live = solve_jacobi(k, 2.0, 1e-3);
    CHECK_FALSE(live.impulse_at_zero);
    CHECK(live.j.back() > 1.0);
}

TEST_CASE("step halving changes pre-zero values at fourth order") {
    std::mt19937_64 rng(606);
    for (int i = 0; i < 20; ++i) {
        const KappaSchedule k = random_schedule(rng(), 4.0);
        const JacobiSolution coarse = solve_jacobi(k, 4.0, 2e-3);
        // Sharing the coarse sample times as boundaries makes the two grids
        // comparable point for point.
        const JacobiSolution fine = solve_jacobi(k, 4.0, 1e-3, coarse.times);
        double scale = 0.0;
        for (double v : coarse.j) scale = std::max(scale, std::abs(v));
        double zero_guard = 4.0;
        if (coarse.first_zero) zero_guard = *coarse.first_zero - 0.05;
        if (fine.first_zero) zero_guard = std::min(zero_guard, *fine.first_zero - 0.05);
        for (std::size_t ci = 0; ci < coarse.times.size(); ++ci) {
            if (coarse.times[ci] >= zero_guard) break;
            const double ref = fine.value_at_or_after(coarse.times[ci]);
            CHECK(std::abs(coarse.j[ci] - ref) <= 1e-8 * std::max(scale, 1.0));
        }
    }
}

TEST_CASE("sum coefficient identity from the shuffling proof") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const KappaSchedule k1 = random_schedule(rng(), 4.0);
        const KappaSchedule k2 = random_schedule(rng(), 4.0);
        std::set<double> bounds;
        bounds.insert(k1.knots.begin(), k1.knots.end());
        bounds.insert(k2.knots.begin(), k2.knots.end());
        for (const auto& im : k1.impulses) bounds.insert(im.time);
        for (const auto& im : k2.impulses) bounds.insert(im.time);
        const std::vector<double> bv(bounds.begin(), bounds.end());
        const JacobiSolution s1 = solve_jacobi(k1, 4.0, 1e-3, bv);
        const JacobiSolution s2 = solve_jacobi(k2, 4.0, 1e-3, bv);
        for (std::size_t i = 0; i < s1.times.size(); ++i) {
            const double t = s1.times[i];
            if (s1.stuck && t >= *s1.first_zero) break;
            if (s2.stuck && t >= *s2.first_zero) break;
            bool at_impulse = false;
            for (const auto& im : k1.impulses) at_impulse |= std::abs(im.time - t) < 1e-9;
            for (const auto& im : k2.impulses) at_impulse |= std::abs(im.time - t) < 1e-9;
            if (at_impulse || s1.j[i] + s2.j[i] < 1e-6) continue;
            const double ka = k1.smooth_at(t), kb = k2.smooth_at(t);
            const double coeff = 0.5 * (ka + kb) +
                                 0.5 * (ka - kb) * (s1.j[i] - s2.j[i]) / (s1.j[i] + s2.j[i]);
            const double direct = (ka * s1.j[i] + kb * s2.j[i]) / (s1.j[i] + s2.j[i]);
            CHECK(coeff == doctest::Approx(direct).epsilon(1e-10));
        }
    }
}

TEST_CASE("family sorting") {
    // Three constants sort into max/mid/min.
    ScheduleFamily family;
    family.members = {KappaSchedule::constant(0.0), KappaSchedule::constant(2.0),
                      KappaSchedule::constant(-1.0)};
    family.weights.assign(3, 1.0 / 3.0);
    const ScheduleFamily sorted = sort_family(family);
    CHECK(sorted.members[0].levels[0] == 2.0);
    CHECK(sorted.members[1].levels[0] == 0.0);
    CHECK(sorted.members[2].levels[0] == -1.0);

    // Already sorted family is unchanged.
    const ScheduleFamily again = sort_family(sorted);
    for (int i = 0; i < 3; ++i) CHECK(again.members[i].levels == sorted.members[i].levels);

    // Sorting maximizes the total for higher powers too.
    std::mt19937_64 rng(7070);
    for (int trial = 0; trial < 25; ++trial) {
        ScheduleFamily f;
        f.weights.assign(5, 0.2);
        for (int m = 0; m < 5; ++m) f.members.push_back(random_schedule(rng(), 4.0));
        const ScheduleFamily fs = sort_family(f);
        for (double p : {1.0, 2.0, 5.0}) {
            const double tot_sorted = tot_functional(fs, 3.5, p, 4.0, 1e-3);
            const double tot_raw = tot_functional(f, 3.5, p, 4.0, 1e-3);
            CHECK(tot_sorted >= tot_raw - 1e-9 * std::max(tot_sorted, 1.0));
        }
    }
}

TEST_CASE("tot functional closed form and shuffle invariances") {
    ScheduleFamily family;
    family.members = {KappaSchedule::constant(-1.0), KappaSchedule::constant(0.0),
                      KappaSchedule::constant(1.0)};
    family.weights.assign(3, 1.0 / 3.0);
    const double s = 2.0;
    for (double p : {1.0, 2.0, 3.0}) {
        const double want = (std::pow(std::sin(s), p) + std::pow(s, p) + std::pow(std::sinh(s), p)) / 3.0;
        CHECK(tot_functional(family, s, p, 3.0, 1e-3) == doctest::Approx(want).epsilon(1e-9));
    }
    CHECK_THROWS_AS(tot_functional(family, 4.0, 1.0, 3.0, 1e-3), std::invalid_argument);

    // Single member: shuffling cannot change anything.
    ScheduleFamily single;
    single.members = {KappaSchedule::constant(-0.5)};
    single.weights = {1.0};
    ScheduleFamily shuffled = single;
    shuffled.shuffles = {{1.0, {0}}};
    CHECK(tot_functional(single, 2.0, 2.0, 3.0, 1e-3) ==
          tot_functional(shuffled, 2.0, 2.0, 3.0, 1e-3));
}

TEST_CASE("constant families dominate their shuffles") {
    ScheduleFamily family;
    family.members = {KappaSchedule::constant(-1.0), KappaSchedule::constant(0.0),
                      KappaSchedule::constant(1.0)};
    family.weights.assign(3, 1.0 / 3.0);
    const double s = 2.8, horizon = 3.0;
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> when(0.1, 2.7);
    for (int trial = 0; trial < 100; ++trial) {
        ScheduleFamily shuffled = family;
        std::set<double> times;
        std::uniform_int_distribution<int> count(1, 16);
        const int m = count(rng);
        while (static_cast<int>(times.size()) < m) times.insert(when(rng));
        std::vector<int> perm = {0, 1, 2};
        for (double t : times) {
            std::shuffle(perm.begin(), perm.end(), rng);
            shuffled.shuffles.push_back({t, perm});
        }
        for (double p : {1.0, 2.0}) {
            const double tot0 = tot_functional(family, s, p, horizon, 1e-3);
            const double tots = tot_functional(shuffled, s, p, horizon, 1e-3);
            CHECK(tot0 >= tots - 1e-9 * tot0);
        }
    }
}

TEST_CASE("family validation") {
    ScheduleFamily family;
    family.members = {KappaSchedule::constant(0.0), KappaSchedule::constant(1.0)};
    family.weights = {0.5, 0.6};
    CHECK_THROWS_AS(family.validate(), std::invalid_argument);
    family.weights = {0.5, 0.5};
    CHECK_NOTHROW(family.validate());
    family.shuffles = {{1.0, {1, 1}}};
    CHECK_THROWS_AS(family.validate(), std::invalid_argument);
    family.shuffles = {{1.0, {1, 0}}};
    CHECK_NOTHROW(family.validate());
    // Unequal weights may not be exchanged.
    family.weights = {0.3, 0.7};
    CHECK_THROWS_AS(family.validate(), std::invalid_argument);
}

TEST_CASE("schedule json round trip") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 20; ++i) {
        const KappaSchedule k = random_schedule(rng(), 5.0);
        const KappaSchedule back = schedule_from_json(schedule_to_json(k));
        CHECK(back.knots == k.knots);
        CHECK(back.levels == k.levels);
        REQUIRE(back.impulses.size() == k.impulses.size());
        for (std::size_t c = 0; c < k.impulses.size(); ++c) {
            CHECK(back.impulses[c].time == k.impulses[c].time);
            CHECK(back.impulses[c].weight == k.impulses[c].weight);
        }
    }
    CHECK_THROWS(schedule_from_json("{\"smooth\": [[0.5, 1.0]]}"));  // first knot must be 0
}

TEST_CASE("product average property") {
    // Identical members give exact equality.
    ScheduleFamily same;
    same.members = {KappaSchedule::constant(-2.0), KappaSchedule::constant(-2.0)};
    same.weights = {0.5, 0.5};
    const VerifyReport eq = product_average_check(same, 3.0, 1e-3);
    CHECK(eq.pass);
    CHECK(std::abs(eq.min_margin) <= 1e-12 * std::max(eq.scale, 1.0));

    // The worked pair {-4, 0}: j_av^2 >= j1 j2 with the average schedule -2.
    ScheduleFamily pair;
    pair.members = {KappaSchedule::constant(-4.0), KappaSchedule::constant(0.0)};
    pair.weights = {0.5, 0.5};
    CHECK(product_average_check(pair, 3.0, 1e-3).pass);
    // Spot value: j_av(1)^2 vs j1(1) j2(1) from the closed forms.
    const double javg = std::sinh(std::sqrt(2.0)) / std::sqrt(2.0);
    const double j1 = std::sinh(2.0) / 2.0;
    CHECK(javg * javg >= j1 * 1.0);

    // Random constant families of four members.
    std::mt19937_64 rng(515);
    std::uniform_real_distribution<double> lvl(-4.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ScheduleFamily f;
        f.weights.assign(4, 0.25);
        for (int m = 0; m < 4; ++m) f.members.push_back(KappaSchedule::constant(lvl(rng)));
        CHECK(product_average_check(f, 4.0, 1e-3).pass);
    }
}
