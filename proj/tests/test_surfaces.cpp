#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weakconv/surfaces.hpp"

using namespace weakconv;

namespace {
SmoothCurve2D unit_circle() {
    return SmoothCurve2D::validated(Curve2D::circle({0.0, 0.0}, 1.0));
}
SmoothCurve2D wide_ellipse() {
    return SmoothCurve2D::validated(Curve2D::ellipse({0.0, 0.0}, 2.0, 1.0));
}
}  // namespace

TEST_CASE("curvature radii") {
    auto circle = unit_circle();
    for (double s : {0.0, 1.0, 4.0})
        CHECK(curvature_radius(circle, s) == doctest::Approx(1.0).epsilon(1e-9));
    auto ell = wide_ellipse();
    CHECK(curvature_radius(ell, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(curvature_radius(ell, std::numbers::pi / 2.0) ==
          doctest::Approx(4.0).epsilon(1e-9));
    CHECK(min_curvature_radius(ell) == doctest::Approx(0.5).epsilon(1e-6));
    SUBCASE("straight pieces flag infinite radius") {
        std::vector<Vec> square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        std::vector<Vec> dense;
        for (int e = 0; e < 4; ++e)
            for (int i = 0; i < 16; ++i)
                dense.push_back(lerp(square[e], square[(e + 1) % 4], i / 16.0));
        auto sampled = SmoothCurve2D::validated(Curve2D::from_samples(dense));
        CHECK(std::isinf(curvature_radius(sampled, 8.0)));  // mid-edge
    }
}

TEST_CASE("smoothness function of analytic curves") {
    auto circle = unit_circle();
    auto alpha = estimate_alpha(circle, linspace(0.01, 1.0, 100), 1024);
    CHECK(alpha.nondecreasing());
    CHECK(alpha.value(0.01) <= 0.01);  // vanishes at zero
    CHECK(alpha.value(0.2) == doctest::Approx(0.1).epsilon(5e-2));
    auto ell = wide_ellipse();
    auto alpha_e = estimate_alpha(ell, linspace(0.01, 0.4, 40), 2048);
    CHECK(alpha_e.value(0.1) == doctest::Approx(0.1).epsilon(0.15));  // t / (2 * 0.5)
}

TEST_CASE("smallness threshold from the smoothness function") {
    SUBCASE("unit circle gives two thirds") {
        auto alpha = estimate_alpha(unit_circle(), linspace(0.004, 2.0, 512), 2048);
        CHECK(epsilon0(alpha) == doctest::Approx(2.0 / 3.0).epsilon(1.5e-2));
    }
    SUBCASE("identically zero alpha saturates the domain") {
        auto zero = ModulusCurve::from_function([](double) { return 0.0; },
                                                linspace(0.1, 1.0, 10));
        CHECK(epsilon0(zero) == doctest::Approx(1.0));
    }
    SUBCASE("large alpha collapses the threshold") {
        auto big = ModulusCurve::from_function([](double) { return 0.7; },
                                               linspace(0.1, 1.0, 10));
        CHECK(epsilon0(big) == 0.0);
    }
}

TEST_CASE("surface nonconvexity bound rows") {
    SurfaceGammaOptions opts;
    opts.sweep.pairs = 2500;
    auto rep = check_surface_gamma_bound(unit_circle(), {0.2, 0.4}, opts);
    CHECK(rep.pass);
    // gamma_hat at 0.4 is the circle sag
    for (const auto& row : rep.rows)
        if (row[0] == cell(0.4))
            CHECK(std::stod(row[1]) ==
                  doctest::Approx(1.0 - std::sqrt(1.0 - 0.04)).epsilon(1e-2));
    CHECK_THROWS_AS(check_surface_gamma_bound(unit_circle(), {1.5}, opts), DomainError);
}

TEST_CASE("simplicity probe") {
    std::vector<double> cands;
    for (double c = 3.0; c > 0.05; c /= 1.3) cands.push_back(c);
    SUBCASE("circles accept any radius below the diameter") {
        const double r = simplicity_parameter_probe(unit_circle(), cands);
        CHECK(r >= 1.3);
        CHECK(r < 2.0);
    }
    SUBCASE("thin waists cap the radius") {
        auto thin = SmoothCurve2D::validated(Curve2D::ellipse({0.0, 0.0}, 2.0, 0.2));
        const double r = simplicity_parameter_probe(thin, cands);
        CHECK(r <= 0.55);  // opposite arcs meet near the waist gap 0.4
    }
}

TEST_CASE("normal field continuity and emptiness") {
    auto field = normal_field_continuity(unit_circle(), 200);
    CHECK(field.report.pass);
    // the unit normal turns linearly with the chord on a circle
    CHECK(field.normal_modulus.value(0.2) == doctest::Approx(0.2).epsilon(0.1));
    auto field_e = normal_field_continuity(wide_ellipse(), 200, 0.25);
    CHECK(field_e.report.pass);
}

TEST_CASE("decay probe emits data only") {
    const PNormSpace plane = make_space(2, 2.0);
    PairSweepOptions sweep;
    sweep.pairs = 800;
    auto clip = make_ball(plane, {0.0, 0.0}, 3.0);
    auto rep = conjecture_probe(unit_circle(), clip, {0.1, 0.2, 0.4}, sweep);
    CHECK(rep.rows.size() == 3);
    // both sides decay linearly for the circle: gamma/eps stays near eps/8
    const double v = std::stod(rep.rows[1][1]);
    CHECK(v <= 0.2 / 8.0 + 0.02);
}

TEST_CASE("corners keep the complement side from decaying") {
    const PNormSpace plane = make_space(2, 2.0);
    std::vector<Vec> square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    std::vector<Vec> dense;
    for (int e = 0; e < 4; ++e)
        for (int i = 0; i < 32; ++i)
            dense.push_back(lerp(square[e], square[(e + 1) % 4], i / 32.0));
    auto curve = SmoothCurve2D::validated(Curve2D::from_samples(dense));
    PairSweepOptions sweep;
    sweep.pairs = 1500;
    auto clip = make_ball(plane, {0.0, 0.0}, 4.0);
    auto rep = conjecture_probe(curve, clip, {0.3}, sweep);
    REQUIRE(rep.rows.size() == 1);
    const double inside = std::stod(rep.rows[0][1]);
    const double outside = std::stod(rep.rows[0][2]);
    // the spline wobbles at corners at sample resolution; the convex side
    // still sits an order of magnitude below the corner-dominated side
    CHECK(inside <= 0.01);
    CHECK(outside >= 0.05);
}

TEST_CASE("disconnected sample lists are rejected") {
    std::vector<Vec> two_circles;
    for (int i = 0; i < 32; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 32;
        two_circles.push_back({std::cos(a), std::sin(a)});
    }
    for (int i = 0; i < 32; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 32;
        two_circles.push_back({5.0 + std::cos(a), std::sin(a)});
    }
    CHECK_THROWS_AS(SmoothCurve2D::validated(Curve2D::from_samples(two_circles)),
                    PreconditionError);
}

TEST_CASE("validation rejects broken parametrizations") {
    CHECK_THROWS_AS(SmoothCurve2D::validated(Curve2D::arc({0.0, 0.0}, 1.0, 0.0, 1.0)),
                    PreconditionError);
}
