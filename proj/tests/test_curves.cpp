#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weakconv/curve2d.hpp"

using namespace weakconv;

TEST_CASE("analytic derivatives agree with finite differences") {
    const auto circle = Curve2D::circle({0.3, -0.2}, 1.4);
    const auto ellipse = Curve2D::ellipse({0.0, 0.0}, 2.0, 1.0, 0.5);
    for (const auto& c : {circle, ellipse}) {
        for (double t : {0.1, 1.2, 3.0, 5.5}) {
            const double h = 1e-6;
            const Vec fd = (0.5 / h) * (c.at(t + h) - c.at(t - h));
            CHECK(norm2(fd - c.d1(t)) <= 1e-6);
        }
    }
}

TEST_CASE("arc exact nearest point clamps to the angular window") {
    const auto arc = Curve2D::arc({0.0, 0.0}, 1.0, -0.3, 0.3);
    const PNormSpace space = make_space(2, 2.0);
    SUBCASE("radial interior") {
        auto np = arc.exact_nearest2({1.5, 0.0});
        REQUIRE(np.has_value());
        CHECK(norm2(*np - Vec{1.0, 0.0}) <= 1e-12);
    }
    SUBCASE("outside the window snaps to an endpoint") {
        auto np = arc.exact_nearest2({0.0, 2.0});
        REQUIRE(np.has_value());
        CHECK(norm2(*np - arc.at(arc.period())) <= 1e-12);
    }
    SUBCASE("scan agrees with the closed form") {
        for (double ang : {0.1, 0.7, 2.0, -2.4}) {
            const Vec x{1.3 * std::cos(ang), 1.3 * std::sin(ang)};
            auto np = arc.exact_nearest2(x);
            REQUIRE(np.has_value());
            CHECK(arc.distance(space, x) == doctest::Approx(norm2(x - *np)).epsilon(1e-9));
        }
    }
}

TEST_CASE("ellipse nearest parameters found by scan plus refinement") {
    const auto ellipse = Curve2D::ellipse({0.0, 0.0}, 2.0, 1.0);
    const PNormSpace space = make_space(2, 2.0);
    // on-axis queries have known answers
    CHECK(ellipse.distance(space, {3.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ellipse.distance(space, {0.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-9));
    // interior center: nearest point is the minor vertex
    CHECK(ellipse.distance(space, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("point reflection keeps arcs in the analytic family") {
    const auto arc = Curve2D::arc({0.0, 0.0}, 1.0, -0.3, 0.3);
    const Vec c{1.05, 0.2};
    const auto reflected = arc.affine_image(c, -1.0);
    CHECK(reflected.kind() == Curve2D::Kind::Arc);
    for (double t : {0.0, 0.25, 0.6}) {
        const Vec direct = c - arc.at(t);
        // same point set traced with the shifted angle window
        const PNormSpace space = make_space(2, 2.0);
        CHECK(reflected.distance(space, direct) <= 1e-10);
    }
}

TEST_CASE("rotation maps arcs exactly") {
    const auto arc = Curve2D::arc({0.0, 0.0}, 1.0, -0.2, 0.2);
    const auto rotated = arc.rotated(1.1);
    for (double t : {0.0, 0.2, 0.4})
        CHECK(norm2(rotated.at(t) - rotate(arc.at(t), 1.1)) <= 1e-12);
}

TEST_CASE("sampled closed curves interpolate their samples") {
    std::vector<Vec> pts;
    for (int i = 0; i < 64; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 64;
        pts.push_back({std::cos(a), std::sin(a)});
    }
    const auto curve = Curve2D::from_samples(pts);
    CHECK(curve.closed());
    for (int i = 0; i < 64; i += 7)
        CHECK(norm2(curve.at(static_cast<double>(i)) - pts[static_cast<std::size_t>(i)]) <=
              1e-12);
    const Vec n = curve.outward_normal(0.0);
    CHECK(n[0] == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("degenerate curves are rejected") {
    CHECK_THROWS_AS(Curve2D::circle({0.0, 0.0}, -1.0), DomainError);
    CHECK_THROWS_AS(Curve2D::arc({0.0, 0.0}, 1.0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(Curve2D::from_samples({{0.0, 0.0}, {1.0, 0.0}}), DomainError);
}
