#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weakconv/rng.hpp"
#include "weakconv/set_oracle.hpp"

using namespace weakconv;

namespace {
const PNormSpace kPlane = make_space(2, 2.0);
}

TEST_CASE("ball distances are exact in every p-norm") {
    for (double p : {1.5, 2.0, 3.0}) {
        const PNormSpace space = make_space(2, p);
        auto ball = make_ball(space, {0.0, 0.0}, 1.0);
        CHECK(ball->distance({2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(ball->distance({0.3, 0.1}) == 0.0);
        CHECK(ball->contains({0.3, 0.1}, 1e-12));
        CHECK(ball->boundary_distance({0.25, 0.0}) == doctest::Approx(0.75));
    }
}

TEST_CASE("cavern of the unit disk") {
    auto cavern = make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                              make_ball(kPlane, {0.0, 0.0}, 3.0));
    CHECK(cavern->distance({0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cavern->distance({2.0, 0.0}) == 0.0);
    CHECK(cavern->contains({1.0, 0.0}));
    CHECK_FALSE(cavern->contains({0.2, 0.0}));
    // nonconvex body is rejected
    CHECK_THROWS_AS(make_cavern(kPlane, cavern, make_ball(kPlane, {0.0, 0.0}, 3.0)),
                    PreconditionError);
}

TEST_CASE("contains and distance stay consistent on random probes") {
    auto arc = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -0.4, 0.4));
    auto cavern = make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                              make_ball(kPlane, {0.0, 0.0}, 3.0));
    auto poly = make_polytope(kPlane, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
    Rng rng = make_rng(17);
    for (const auto& oracle : {arc, cavern, poly}) {
        for (int i = 0; i < 200; ++i) {
            const Vec x{uniform(rng, -2.5, 2.5), uniform(rng, -2.5, 2.5)};
            const double d = oracle->distance(x);
            if (d <= 1e-12) CHECK(oracle->contains(x, 1e-9));
            if (oracle->contains(x, 0.0)) CHECK(d <= 1e-9);
        }
    }
}

TEST_CASE("boundary samples hug the boundary") {
    auto ball = make_ball(kPlane, {0.5, 0.0}, 2.0);
    for (const auto& s : ball->boundary_samples(64))
        CHECK(ball->boundary_distance(s) <= 1e-9);
    auto poly = make_polytope(kPlane, {{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}});
    for (const auto& s : poly->boundary_samples(60))
        CHECK(poly->boundary_distance(s) <= 1e-9);
}

TEST_CASE("distance is 1-Lipschitz on sampled pairs") {
    auto cavern = make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                              make_ball(kPlane, {0.0, 0.0}, 3.0));
    Rng rng = make_rng(23);
    for (int i = 0; i < 200; ++i) {
        const Vec x{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
        const Vec y{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
        CHECK(std::fabs(cavern->distance(x) - cavern->distance(y)) <=
              kPlane.dist(x, y) + 1e-9);
    }
}

TEST_CASE("union and intersection combinators") {
    auto b1 = make_ball(kPlane, {0.0, 0.0}, 1.0);
    auto b2 = make_ball(kPlane, {1.5, 0.0}, 1.0);
    auto u = make_union(kPlane, {b1, b2});
    auto inter = make_intersection(kPlane, {b1, b2});
    Rng rng = make_rng(31);
    for (int i = 0; i < 200; ++i) {
        const Vec x{uniform(rng, -3.0, 4.0), uniform(rng, -3.0, 3.0)};
        CHECK(u->distance(x) ==
              doctest::Approx(std::min(b1->distance(x), b2->distance(x))).epsilon(1e-12));
        CHECK(inter->contains(x, 1e-9) == (b1->contains(x, 1e-9) && b2->contains(x, 1e-9)));
    }
}

TEST_CASE("intersection corners are located exactly") {
    // lens tips of two overlapping circles
    auto cavern = make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                              make_ball(kPlane, {0.0, 0.0}, 3.0));
    auto small = make_ball(kPlane, {1.2, 0.0}, 0.4);
    auto lens = make_intersection(kPlane, {cavern, small});
    const double x0 = (1.0 + 1.44 - 0.16) / 2.4;
    const double y0 = std::sqrt(1.0 - x0 * x0);
    bool top = false, bottom = false;
    for (const auto& s : lens->boundary_samples(32)) {
        if (norm2(s - Vec{x0, y0}) <= 1e-8) top = true;
        if (norm2(s - Vec{x0, -y0}) <= 1e-8) bottom = true;
    }
    CHECK(top);
    CHECK(bottom);
}

TEST_CASE("intersection nearest point handles the crescent") {
    auto cavern = make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                              make_ball(kPlane, {0.0, 0.0}, 3.0));
    auto small = make_ball(kPlane, {1.2, 0.0}, 0.4);
    auto lens = make_intersection(kPlane, {cavern, small});
    // every nearest crescent point from the origin sits on the unit circle
    const Vec np = lens->nearest_point({0.0, 0.0});
    CHECK(norm2(np) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(lens->contains(np, 1e-7));
    CHECK(lens->distance({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-7));
    // deep inside the small ball but inside the unit disk
    const Vec q{0.9, 0.0};
    CHECK(lens->distance(q) == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("Minkowski sums with a ball are neighborhoods") {
    auto arc = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -0.3, 0.3));
    auto sum = make_minkowski_sum(kPlane, arc, make_ball(kPlane, {0.0, 0.0}, 0.25));
    Rng rng = make_rng(41);
    for (int i = 0; i < 100; ++i) {
        const Vec x{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
        const double expected = std::max(0.0, arc->distance(x) - 0.25);
        CHECK(sum->distance(x) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("affine images map the concrete variants exactly") {
    const Vec shift{0.7, -0.4};
    SUBCASE("ball") {
        auto moved = affine_image(make_ball(kPlane, {1.0, 0.0}, 0.5), shift, -1.0);
        auto view = ball_view(*moved);
        REQUIRE(view.has_value());
        CHECK(norm2(view->center - Vec{-0.3, -0.4}) <= 1e-15);
        CHECK(view->radius == 0.5);
    }
    SUBCASE("arc") {
        auto arc = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -0.3, 0.3));
        auto moved = affine_image(arc, shift, -1.0);
        REQUIRE(curve_of(*moved) != nullptr);
        // image of a member point is a member of the image
        const Vec p = curve_of(*arc)->at(0.1);
        CHECK(moved->distance(shift - p) <= 1e-10);
    }
    SUBCASE("polytope") {
        auto poly = make_polytope(kPlane, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
        auto moved = affine_image(poly, shift, 1.0);
        CHECK(moved->contains(shift + Vec{0.2, 0.2}, 1e-9));
        CHECK_FALSE(moved->contains(Vec{0.2, 0.2}, 1e-9));
    }
}

TEST_CASE("unbounded closed complement refuses bounding queries") {
    auto outside = make_curve_set(kPlane, Curve2D::circle({0.0, 0.0}, 1.0),
                                  CurveSide::Outside);
    CHECK_FALSE(outside->bounded());
    CHECK(outside->contains({5.0, 0.0}));
    CHECK(outside->contains({1.0, 0.0}));
    CHECK_FALSE(outside->contains({0.0, 0.0}));
    CHECK(outside->distance({0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(outside->bounding_radius(nullptr), DomainError);
}

TEST_CASE("point clouds answer membership exactly") {
    auto cloud = make_point_cloud(kPlane, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}});
    CHECK(cloud->distance({1.0, 0.1}) == doctest::Approx(0.1));
    CHECK(cloud->contains({0.0, 2.0}));
    CHECK_FALSE(cloud->contains({0.4, 0.4}));
    CHECK(cloud->nearest_point({0.9, -0.1}) == Vec{1.0, 0.0});
}
