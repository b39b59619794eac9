#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weakconv/moduli.hpp"
#include "weakconv/space_modulus.hpp"

using namespace weakconv;

namespace {
const PNormSpace kPlane = make_space(2, 2.0);

OraclePtr unit_disk_cavern() {
    return make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                       make_ball(kPlane, {0.0, 0.0}, 3.0));
}
}  // namespace

TEST_CASE("convexity modulus of balls follows the similarity law") {
    auto ball = make_ball(kPlane, {0.0, 0.0}, 2.0);
    PairSweepOptions opts;
    opts.pairs = 1500;
    CHECK(modulus_convexity(*ball, 0.0, opts) == 0.0);
    const double v = modulus_convexity(*ball, 2.0, opts);
    CHECK(std::fabs(v - (2.0 - std::sqrt(3.0))) <= 1e-3);
    CHECK_THROWS_AS(modulus_convexity(*ball, 4.5, opts), DomainError);
    CHECK_THROWS_AS(modulus_convexity(*unit_disk_cavern(), 0.5, opts), PreconditionError);
}

TEST_CASE("convexity modulus obeys a quadratic ceiling on the grid") {
    auto ball = make_ball(kPlane, {0.0, 0.0}, 2.0);
    PairSweepOptions opts;
    opts.pairs = 800;
    std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.5};
    std::vector<double> vals;
    double c_fit = 0.0;
    for (double eps : grid) {
        vals.push_back(modulus_convexity(*ball, eps, opts));
        c_fit = std::max(c_fit, vals.back() / (eps * eps));
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(vals[i] <= c_fit * grid[i] * grid[i] + 1e-9);
    // the ratio delta/eps grows with eps
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        CHECK(vals[i] / grid[i] <= vals[i + 1] / grid[i + 1] + 1e-4);
}

TEST_CASE("nonconvexity modulus") {
    PairSweepOptions opts;
    opts.pairs = 4000;
    SUBCASE("vanishes for convex sets") {
        auto ball = make_ball(kPlane, {0.0, 0.0}, 1.0);
        CHECK(modulus_nonconvexity(*ball, 1.0, opts) <= 1e-9);
        CHECK(modulus_nonconvexity(*ball, 0.0, opts) == 0.0);
    }
    SUBCASE("unit-disk cavern midpoint sag") {
        auto cavern = unit_disk_cavern();
        const double g = modulus_nonconvexity(*cavern, 1.0, opts);
        CHECK(std::fabs(g - (1.0 - std::sqrt(3.0) / 2.0)) <= 1e-3);
    }
    SUBCASE("curve assembly is monotone and right-continuous") {
        auto cavern = unit_disk_cavern();
        auto curve = gamma_curve(*cavern, {0.25, 0.5, 0.75, 1.0}, opts);
        CHECK(curve.nondecreasing());
        CHECK(curve.value(0.0) == 0.0);
        CHECK(curve.value(0.6) == curve.value(0.75));  // right neighbor
    }
}

TEST_CASE("raw sweep never shrinks with nested sampling") {
    auto cavern = unit_disk_cavern();
    PairSweepOptions small, large;
    small.pairs = 300;
    small.refine_top = 0;
    small.refine_iters = 0;
    large = small;
    large.pairs = 3000;
    const double g_small = modulus_nonconvexity(*cavern, 1.0, small);
    const double g_large = modulus_nonconvexity(*cavern, 1.0, large);
    CHECK(g_large >= g_small - 1e-15);
}

TEST_CASE("weak convexity certificates") {
    PairSweepOptions opts;
    opts.pairs = 1200;
    SUBCASE("arcs certify against a matched radius") {
        const double half = std::numbers::pi / 18.0;
        auto arc = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -half, half));
        auto cert = certify_weak_convexity(arc, 0.5, 12, opts);
        CHECK(cert.valid);
        CHECK(cert.gamma.nondecreasing());
    }
    SUBCASE("a radius that is too large fails dominance") {
        auto circle = make_curve_set(kPlane, Curve2D::circle({0.0, 0.0}, 1.0));
        auto cert = certify_weak_convexity(circle, 1.5, 12, opts);
        CHECK_FALSE(cert.valid);
        CHECK(cert.first_failing_eps > 0.0);
    }
    SUBCASE("the full circle still certifies at half its reach") {
        auto circle = make_curve_set(kPlane, Curve2D::circle({0.0, 0.0}, 1.0));
        auto cert = certify_weak_convexity(circle, 0.5, 12, opts);
        CHECK(cert.valid);
    }
    SUBCASE("convex sets carry the full dominance margin") {
        auto ball = make_ball(kPlane, {0.0, 0.0}, 1.0);
        auto cert = certify_weak_convexity(ball, 0.5, 8, opts);
        CHECK(cert.valid);
        for (const auto& [eps, margin] : cert.dominance_margin.samples()) {
            if (eps == 0.0) continue;
            const double expect = 0.5 * hilbert_modulus(std::min(2.0, eps / 0.5));
            CHECK(margin == doctest::Approx(expect).epsilon(1e-6));
        }
    }
}

TEST_CASE("sigma modulus of the unit-disk triple") {
    PairSweepOptions opts;
    opts.pairs = 1200;
    auto unit = make_ball(kPlane, {0.0, 0.0}, 1.0);
    const double s = sigma_modulus(unit, unit, unit, 1.0, opts);
    CHECK(std::fabs(s - (1.0 - std::sqrt(3.0) / 2.0)) <= 2e-3);
    SUBCASE("preconditions") {
        auto shifted = make_ball(kPlane, {3.0, 0.0}, 1.0);
        CHECK_THROWS_AS(sigma_modulus(unit, shifted, unit, 1.0, opts), PreconditionError);
        CHECK_THROWS_AS(sigma_modulus(unit, unit, unit_disk_cavern(), 1.0, opts),
                        PreconditionError);
    }
}

TEST_CASE("cavern bound report on an ellipse body") {
    PairSweepOptions opts;
    opts.pairs = 1500;
    auto body = make_curve_set(kPlane, Curve2D::ellipse({0.0, 0.0}, 1.5, 1.0),
                               CurveSide::Inside);
    auto clip = make_ball(kPlane, {0.0, 0.0}, 4.0);
    auto rep = check_cavern_bounds(body, clip, 1.0, 1.5, {0.5, 1.0}, 2e-3, opts);
    CHECK(rep.pass);
    // the quadratic lower bound at eps = 1 is eps^2 r / (8 R^2) = 1/18
    bool found = false;
    for (const auto& row : rep.rows)
        if (row[0] == cell(1.0)) {
            CHECK(std::stod(row[1]) >= 1.0 / 18.0 - 2e-3);
            found = true;
        }
    CHECK(found);
    SUBCASE("shell violations are rejected") {
        CHECK_THROWS_AS(check_cavern_bounds(body, clip, 1.2, 1.5, {0.5}, 2e-3, opts),
                        PreconditionError);
    }
}
