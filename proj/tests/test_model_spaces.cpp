#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "riccibound/model_spaces.hpp"

using namespace riccibound;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form ball volumes used as ground truth throughout the suite.
double h2xr2_volume(double t) {
    return 2.0 * kPi * kPi * (2.0 * t * std::sinh(t) - 2.0 * std::cosh(t) - t * t + 2.0);
}

double h3xr2_volume(double t) {
    return kPi * kPi / 6.0 * (-8.0 * t * t * t - 3.0 * std::sinh(2.0 * t) + 6.0 * t * std::cosh(2.0 * t));
}

const ProductSpace h2xr2({{2, -1.0}, {2, 0.0}});
const ProductSpace h3xr2({{3, -1.0}, {2, 0.0}});

}  // namespace

TEST_CASE("product space construction enforces the factor invariants") {
    CHECK_THROWS_AS(ProductSpace({{1, -1.0}}), std::invalid_argument);  // curved line
    CHECK_THROWS_AS(ProductSpace({{0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ProductSpace({{1, 0.0}}), std::invalid_argument);  // total dim 1
    CHECK_THROWS_AS(ProductSpace({}), std::invalid_argument);
    CHECK(ProductSpace({{1, 0.0}, {1, 0.0}}).total_dim() == 2);
}

TEST_CASE("ricci spectrum of products") {
    const RicciSpectrum s = ricci_spectrum(h2xr2);
    REQUIRE(s.blocks().size() == 2);
    CHECK(s.blocks()[0].value == -1.0);
    CHECK(s.blocks()[0].multiplicity == 2);
    CHECK(s.blocks()[1].value == 0.0);
    CHECK(s.blocks()[1].multiplicity == 2);
    CHECK(s.dim() == 4);

    const RicciSpectrum flat = ricci_spectrum(ProductSpace({{4, 0.0}}));
    REQUIRE(flat.blocks().size() == 1);
    CHECK(flat.blocks()[0].value == 0.0);
    CHECK(flat.blocks()[0].multiplicity == 4);

    const RicciSpectrum s3 = ricci_spectrum(h3xr2);
    REQUIRE(s3.blocks().size() == 2);
    CHECK(s3.blocks()[0].value == -2.0);
    CHECK(s3.blocks()[0].multiplicity == 3);
    CHECK(scalar_curvature(s3) == doctest::Approx(-6.0).epsilon(1e-14));
}

TEST_CASE("scalar curvature") {
    CHECK(scalar_curvature(ricci_spectrum(h2xr2)) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(scalar_curvature(ricci_spectrum(ProductSpace({{5, 0.0}}))) == 0.0);
    CHECK(scalar_curvature(RicciSpectrum({{1.0, 2}})) == doctest::Approx(2.0));  // unit 2-sphere
}

TEST_CASE("ricci quadratic form") {
    const RicciSpectrum s = ricci_spectrum(h2xr2);
    for (double theta : {0.0, 0.3, 1.1, kPi / 2}) {
        const Direction x({std::cos(theta), 0.0, std::sin(theta), 0.0});
        CHECK(ricci_quadratic_form(s, x) ==
              doctest::Approx(-std::cos(theta) * std::cos(theta)).epsilon(1e-12));
    }
    // Pure eigendirection of the smallest eigenvalue.
    const RicciSpectrum s5 = ricci_spectrum(h3xr2);
    CHECK(ricci_quadratic_form(s5, Direction({1, 0, 0, 0, 0})) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(ricci_quadratic_form(s, Direction({1, 0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(Direction({1.0, 0.5, 0, 0}), std::invalid_argument);
}

TEST_CASE("ricci form invariant under block sign flips and permutations") {
    const RicciSpectrum s = ricci_spectrum(h3xr2);  // blocks of size 3 and 2
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> c(5);
        for (double& v : c) v = normal(rng);
        const Direction x = Direction::normalized(c);
        const double base = ricci_quadratic_form(s, x);

        std::vector<double> mut = x.components();
        std::swap(mut[0], mut[2]);   // permute inside the first block
        mut[1] = -mut[1];            // sign flip
        std::swap(mut[3], mut[4]);   // permute inside the second block
        mut[4] = -mut[4];
        CHECK(ricci_quadratic_form(s, Direction(mut)) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("exact ball volume matches the closed forms for the worked products") {
    for (int i = 0; i <= 40; ++i) {
        const double t = 0.1 + i * (10.0 - 0.1) / 40;
        CHECK(exact_ball_volume(h2xr2, t) == doctest::Approx(h2xr2_volume(t)).epsilon(1e-8));
        CHECK(exact_ball_volume(h3xr2, t) == doctest::Approx(h3xr2_volume(t)).epsilon(1e-8));
    }
}

TEST_CASE("positive-curvature factors saturate at the cut locus") {
    const ProductSpace sphere({{2, 1.0}});
    CHECK(exact_ball_volume(sphere, kPi) == doctest::Approx(4.0 * kPi).epsilon(1e-10));
    CHECK(exact_ball_volume(sphere, 7.0) == doctest::Approx(4.0 * kPi).epsilon(1e-10));

    // A sphere factor in a product keeps the shell decomposition bounded.
    const ProductSpace s2xr2({{2, 1.0}, {2, 0.0}});
    const double v1 = exact_ball_volume(s2xr2, 8.0);
    const double v2 = exact_ball_volume(s2xr2, 9.0);
    CHECK(v2 >= v1);
    CHECK(v1 <= 4.0 * kPi * kPi * 8.0 * 8.0);
}

TEST_CASE("exact ball volume basics") {
    CHECK(exact_ball_volume(h2xr2, 0.0) == 0.0);
    CHECK_THROWS_AS(exact_ball_volume(h2xr2, -1.0), std::invalid_argument);

    double prev = 0.0;
    for (int i = 1; i <= 30; ++i) {
        const double v = exact_ball_volume(h3xr2, 0.3 * i);
        CHECK(v >= prev);
        prev = v;
    }

    // Euclidean leading behaviour at small radius.
    const double t = 1e-3;
    const double lead = unit_sphere_area(4) / 4.0 * std::pow(t, 4);
    CHECK(exact_ball_volume(h2xr2, t) == doctest::Approx(lead).epsilon(1e-5));
}

TEST_CASE("three-factor recursion agrees with the equivalent two-factor product") {
    // R^2 split into R^1 x R^1 must not change any ball volume.
    const ProductSpace split({{2, -1.0}, {1, 0.0}, {1, 0.0}});
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        CHECK(exact_ball_volume(split, t) ==
              doctest::Approx(exact_ball_volume(h2xr2, t)).epsilon(1e-8));
    }
}

TEST_CASE("counterexample space straddles its scalar-matched model") {
    // Below t ~ 7.32 the true volume exceeds the model matched on scalar
    // curvature alone; above it the model wins.
    CHECK(exact_ball_volume(h3xr2, 7.0) > model_ball_volume(5, -0.3, 7.0));
    CHECK(exact_ball_volume(h3xr2, 7.7) < model_ball_volume(5, -0.3, 7.7));
}

TEST_CASE("the worked product happens to respect its scalar-matched model") {
    // vol <= 96 pi^2 (2 + cosh(x)) sinh^4(x/2), x = t/sqrt(6); the matched
    // model has k = -2/12 = -1/6 in dimension 4.
    for (double t : {0.5, 1.5, 3.0, 6.0, 9.0}) {
        const double x = t / std::sqrt(6.0);
        const double model = 96.0 * kPi * kPi * (2.0 + std::cosh(x)) * std::pow(std::sinh(x / 2), 4);
        CHECK(model_ball_volume(4, -1.0 / 6.0, t) == doctest::Approx(model).epsilon(1e-12));
        CHECK(exact_ball_volume(h2xr2, t) <= model * (1.0 + 1e-12));
    }
}

TEST_CASE("shell quadrature reports the achieved tolerance when starved") {
    try {
        exact_ball_volume(h3xr2, 5.0, {1e-300, 1e-18});
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.achieved_tolerance > 1e-18);
        CHECK(e.achieved_tolerance < 1e-6);
    }
}

TEST_CASE("model ball volumes") {
    for (double t : {0.3, 1.0, 2.7}) {
        CHECK(model_ball_volume(2, -1.0, t) ==
              doctest::Approx(2.0 * kPi * (std::cosh(t) - 1.0)).epsilon(1e-13));
        if (t <= kPi)
            CHECK(model_ball_volume(2, 1.0, t) ==
                  doctest::Approx(2.0 * kPi * (1.0 - std::cos(t))).epsilon(1e-13));
    }
    // The five-dimensional space matching scalar curvature -6 has
    // k = -6/(5*4) = -3/10 and a sinh-power closed form.
    for (double t : {0.8, 2.0, 5.0}) {
        const double a = std::sqrt(6.0 / 5.0);
        const double want = 25.0 / 81.0 * kPi * kPi *
                            (36.0 * t + std::sqrt(30.0) * (std::sinh(2.0 * a * t) -
                                                           8.0 * std::sinh(a * t)));
        CHECK(model_ball_volume(5, -0.3, t) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(model_ball_volume(1, 0.0, 1.0), std::invalid_argument);

    // Same value through the shell-decomposition route.
    for (double t : {0.5, 1.5, 3.0}) {
        CHECK(model_ball_volume(3, -1.0, t) ==
              doctest::Approx(exact_ball_volume(ProductSpace({{3, -1.0}}), t)).epsilon(1e-10));
    }
}
