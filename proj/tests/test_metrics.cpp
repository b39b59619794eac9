#include <doctest.h>

#include <cmath>

#include "weakconv/metrics.hpp"
#include "weakconv/rng.hpp"

using namespace weakconv;

namespace {
const PNormSpace kPlane = make_space(2, 2.0);
}

TEST_CASE("Hausdorff distance basics") {
    auto b1 = make_ball(kPlane, {0.0, 0.0}, 1.0);
    auto b2 = make_ball(kPlane, {1.0, 0.0}, 1.0);
    auto pt = make_point_cloud(kPlane, {{0.0, 0.0}});
    CHECK(hausdorff_distance(*b1, *b1) <= 1e-9);
    CHECK(hausdorff_distance(*b1, *b2) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(hausdorff_distance(*pt, *b1) == doctest::Approx(1.0).epsilon(1e-6));
    auto outside = make_curve_set(kPlane, Curve2D::circle({0.0, 0.0}, 1.0),
                                  CurveSide::Outside);
    CHECK_THROWS_AS(hausdorff_distance(*outside, *b1), DomainError);
}

TEST_CASE("Hausdorff symmetry and triangle inequality on sampled sets") {
    auto a = make_ball(kPlane, {0.0, 0.0}, 1.0);
    auto b = make_polytope(kPlane, {{-0.5, -0.5}, {1.5, -0.2}, {0.4, 1.2}});
    auto c = make_ball(kPlane, {0.8, 0.3}, 0.6);
    const double hab = hausdorff_distance(*a, *b);
    const double hba = hausdorff_distance(*b, *a);
    const double hbc = hausdorff_distance(*b, *c);
    const double hac = hausdorff_distance(*a, *c);
    CHECK(std::fabs(hab - hba) <= 2e-6);
    CHECK(hac <= hab + hbc + 2e-6);
}

TEST_CASE("Minkowski gauge on bodies around the origin") {
    auto unit = make_ball(kPlane, {0.0, 0.0}, 1.0);
    auto b2 = make_ball(kPlane, {0.0, 0.0}, 2.0);
    CHECK(minkowski_gauge(*unit, {2.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(minkowski_gauge(*b2, {1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(minkowski_gauge(*unit, {0.0, 0.0}) == 0.0);
    SUBCASE("positive homogeneity") {
        auto ellipse = make_curve_set(kPlane, Curve2D::ellipse({0.0, 0.0}, 1.5, 1.0),
                                      CurveSide::Inside);
        Rng rng = make_rng(3);
        for (int i = 0; i < 50; ++i) {
            const Vec x{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
            const double t = uniform(rng, 0.1, 3.0);
            CHECK(minkowski_gauge(*ellipse, t * x) ==
                  doctest::Approx(t * minkowski_gauge(*ellipse, x)).epsilon(1e-7));
        }
    }
    SUBCASE("origin must be interior") {
        auto shifted = make_ball(kPlane, {5.0, 0.0}, 1.0);
        CHECK_THROWS_AS(minkowski_gauge(*shifted, {1.0, 0.0}), PreconditionError);
    }
    SUBCASE("body diameter of the unit ball") {
        CHECK(b_diameter(*unit, *unit) == doctest::Approx(2.0).epsilon(2e-3));
    }
}

TEST_CASE("closed convex hulls") {
    SUBCASE("hull of the unit circle fills the disk") {
        auto circle = make_curve_set(kPlane, Curve2D::circle({0.0, 0.0}, 1.0));
        auto hull = closed_convex_hull(circle);
        auto disk = make_ball(kPlane, {0.0, 0.0}, 1.0);
        CHECK(hausdorff_distance(*hull, *disk) <= 1e-3);
    }
    SUBCASE("convex sets are fixed points") {
        auto ball = make_ball(kPlane, {0.3, 0.1}, 0.7);
        CHECK(closed_convex_hull(ball).get() == ball.get());
    }
    SUBCASE("two points hull to a segment") {
        auto two = make_point_cloud(kPlane, {{0.0, 0.0}, {1.0, 1.0}});
        auto hull = closed_convex_hull(two);
        CHECK(hull->contains({0.5, 0.5}, 1e-9));
        CHECK(hull->distance({1.0, 0.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    }
    SUBCASE("hull of an arc is the chord cap") {
        auto arc = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -0.5, 0.5));
        auto hull = closed_convex_hull(arc);
        CHECK(hull->convex_hint());
        CHECK(hull->contains({0.95, 0.0}, 1e-9));          // between chord and arc
        CHECK_FALSE(hull->contains({0.8, 0.0}, 1e-9));     // behind the chord
        const Vec np = hull->nearest_point({0.0, 0.0});
        CHECK(np[0] == doctest::Approx(std::cos(0.5)).epsilon(1e-9));
        CHECK(np[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    }
}

TEST_CASE("strongly convex segment membership") {
    SUBCASE("midpoint and endpoints belong") {
        CHECK(strongly_convex_segment_contains(kPlane, 1.0, {-0.5, 0.0}, {0.5, 0.0},
                                               {0.0, 0.0}));
        CHECK(strongly_convex_segment_contains(kPlane, 1.0, {-0.5, 0.0}, {0.5, 0.0},
                                               {-0.5, 0.0}));
    }
    SUBCASE("lens height limit") {
        // the spindle over these endpoints tops out near 1 - sqrt(3)/2
        CHECK_FALSE(strongly_convex_segment_contains(kPlane, 1.0, {-0.5, 0.0}, {0.5, 0.0},
                                                     {0.0, 0.2}));
        CHECK(strongly_convex_segment_contains(kPlane, 1.0, {-0.5, 0.0}, {0.5, 0.0},
                                               {0.0, 0.12}));
    }
    SUBCASE("endpoints farther apart than 2d are rejected") {
        CHECK_THROWS_AS(strongly_convex_segment_contains(kPlane, 0.4, {-0.5, 0.0},
                                                         {0.5, 0.0}, {0.0, 0.0}),
                        PreconditionError);
    }
    SUBCASE("open variant excludes the extreme points") {
        CHECK_FALSE(strongly_convex_segment_contains_open(kPlane, 1.0, {-0.5, 0.0},
                                                          {0.5, 0.0}, {-0.5, 0.0}));
        CHECK(strongly_convex_segment_contains_open(kPlane, 1.0, {-0.5, 0.0}, {0.5, 0.0},
                                                    {0.0, 0.0}));
    }
}

TEST_CASE("Vial-style weak convexity checks") {
    SUBCASE("convex sets pass for every constant") {
        auto ball = make_ball(kPlane, {0.0, 0.0}, 1.0);
        CHECK(vial_weakly_convex_check(ball, 0.7, 60).pass);
        CHECK(vial_weakly_convex_check(ball, 3.0, 60).pass);
    }
    SUBCASE("unit circle passes below its reach") {
        auto circle = make_curve_set(kPlane, Curve2D::circle({0.0, 0.0}, 1.0));
        CHECK(vial_weakly_convex_check(circle, 0.99, 60).pass);
    }
    SUBCASE("small constants shrink the admissible pair window") {
        auto circle = make_curve_set(kPlane, Curve2D::circle({0.0, 0.0}, 1.0));
        auto rep = vial_weakly_convex_check(circle, 0.4, 80);
        CHECK(rep.pass);  // all admissible chords stay below 2R
        CHECK(rep.note.find("outside 2R window") != std::string::npos);
    }
}
