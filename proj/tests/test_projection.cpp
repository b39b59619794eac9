#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weakconv/projection.hpp"
#include "weakconv/rng.hpp"
#include "weakconv/space_modulus.hpp"

using namespace weakconv;

namespace {
const PNormSpace kPlane = make_space(2, 2.0);
constexpr double kHalf = std::numbers::pi / 18.0;  // 10 degree half-angle

double arc_gamma(double eps) {
    const double chord = 2.0 * std::sin(kHalf);
    const double c = std::min(std::max(eps, 0.0), chord);
    return 1.0 - std::sqrt(1.0 - c * c / 4.0);
}

double capped(double eps) { return hilbert_modulus(std::min(eps, 2.0)); }

OraclePtr make_arc(double center_angle = 0.0) {
    return make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, center_angle - kHalf,
                                               center_angle + kHalf));
}

TubeSpec make_arc_tube() {
    auto cert = certificate_from_modulus(kPlane, arc_gamma, 0.5, 2.0 * std::sin(kHalf));
    return make_tube(kPlane, std::move(cert));
}
}  // namespace

TEST_CASE("tube construction requires a valid certificate") {
    WeakConvexityCertificate bad;
    bad.valid = false;
    bad.d = 0.5;
    CHECK_THROWS_AS(make_tube(kPlane, bad), HypothesisViolation);
    auto tube = make_arc_tube();
    CHECK(tube.s0 > 0.1);
    CHECK(tube.roots.nondecreasing());
}

TEST_CASE("projection in the tube") {
    auto arc = make_arc();
    auto tube = make_arc_tube();
    SUBCASE("set points are fixed") {
        const Vec x{std::cos(0.1), std::sin(0.1)};
        CHECK(norm2(project_in_tube(*arc, x, tube) - x) <= 1e-12);
    }
    SUBCASE("radial projection onto the arc") {
        const Vec p = project_in_tube(*arc, {1.2, 0.0}, tube);
        CHECK(norm2(p - Vec{1.0, 0.0}) <= 1e-9);
        ProjectionInfo info;
        project_in_tube(*arc, {1.2, 0.0}, tube, kGeomTol, &info);
        CHECK(info.rho == doctest::Approx(0.2).epsilon(1e-12));
        CHECK_FALSE(info.multiplicity);
    }
    SUBCASE("outside the tube") {
        CHECK_THROWS_AS(project_in_tube(*arc, {2.0, 0.0}, tube), TubeError);
    }
    SUBCASE("equidistant ties trip the multiplicity guard") {
        // a two-point set with a claimed (wrong) certificate: queries on the
        // symmetry axis see two minimizers and the guard must fire
        auto cloud = make_point_cloud(kPlane, {{0.0, 0.3}, {0.0, -0.3}});
        auto cert = certificate_from_modulus(kPlane, [](double) { return 0.0; }, 0.5, 0.6);
        auto ctube = make_tube(kPlane, std::move(cert));
        CHECK_THROWS_AS(project_in_tube(*cloud, {0.25, 0.0}, ctube), HypothesisViolation);
    }
}

TEST_CASE("enlarged projections collapse as s shrinks") {
    auto arc = make_arc();
    auto tube = make_arc_tube();
    const Vec x{1.2, 0.05};
    const Vec px = project_in_tube(*arc, x, tube);
    for (double s : {1e-2, 1e-3}) {
        const double bound = tube.t_E(s);
        auto cloud = enlarged_projection(*arc, x, s, tube);
        CHECK(!cloud.empty());
        for (const auto& q : cloud) {
            CHECK(arc->distance(q) <= 1e-7);
            CHECK(kPlane.dist(q, x) <= arc->distance(x) + s + 1e-9);
            CHECK(kPlane.dist(q, px) <= bound + 1e-9);
        }
    }
    SUBCASE("huge enlargements span the whole set") {
        auto cloud = enlarged_projection(*arc, x, 10.0, tube);
        double spread = 0.0;
        for (const auto& a : cloud)
            for (const auto& b : cloud) spread = std::max(spread, kPlane.dist(a, b));
        CHECK(spread >= 0.9 * 2.0 * std::sin(kHalf));
    }
}

TEST_CASE("paths through the tube trace the arc") {
    auto arc = make_arc();
    auto tube = make_arc_tube();
    const Vec a{std::cos(-kHalf), std::sin(-kHalf)};
    const Vec b{std::cos(kHalf), std::sin(kHalf)};
    SUBCASE("degenerate endpoints") {
        auto path = path_via_projection(*arc, a, a, tube, 8);
        CHECK(path.points.size() == 1);
    }
    SUBCASE("chord projects onto the arc") {
        const int steps = 64;
        auto path = path_via_projection(*arc, a, b, tube, steps);
        CHECK(path.points.size() == steps + 1);
        CHECK(norm2(path.points.front() - a) == 0.0);
        CHECK(norm2(path.points.back() - b) == 0.0);
        CHECK(path.max_set_violation <= 1e-9);
        const double gap_bound = tube.t_E(kPlane.dist(a, b) / steps) + 1e-9;
        CHECK(path.max_gap <= gap_bound);
        // the polyline stays within a millimeter of the arc everywhere
        for (const auto& p : path.points) CHECK(arc->distance(p) <= 1e-3);
    }
    SUBCASE("endpoints outside the set are rejected") {
        CHECK_THROWS_AS(path_via_projection(*arc, {1.5, 0.0}, b, tube, 8),
                        PreconditionError);
    }
}

TEST_CASE("midpoint chains") {
    auto cavern = make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                              make_ball(kPlane, {0.0, 0.0}, 3.0));
    auto small = make_ball(kPlane, {1.2, 0.0}, 0.4);
    auto delta_small = [](double eps) {
        return 0.4 * hilbert_modulus(std::min(2.0, eps / 0.4));
    };
    SUBCASE("coincident endpoints") {
        const Vec p{1.0, 0.0};
        auto chain = connect_by_midpoint_iteration(cavern, small, delta_small, capped, 1.0,
                                                   p, p);
        CHECK(chain.converged);
        CHECK(chain.gaps.front() == 0.0);
    }
    SUBCASE("crescent endpoints converge geometrically") {
        const double x0 = (1.0 + 1.44 - 0.16) / 2.4;
        const double y0 = std::sqrt(1.0 - x0 * x0);
        auto chain = connect_by_midpoint_iteration(cavern, small, delta_small, capped, 1.0,
                                                   {x0, y0}, {x0, -y0});
        CHECK(chain.converged);
        CHECK(chain.fitted_rate <= 0.85);
        for (std::size_t i = 0; i + 1 < chain.gaps.size(); ++i)
            if (chain.gaps[i] > 1e-12) CHECK(chain.gaps[i + 1] < chain.gaps[i]);
    }
    SUBCASE("the intersection modulus never exceeds the host modulus") {
        auto lens = make_intersection(kPlane, {cavern, small});
        PairSweepOptions opts;
        opts.pairs = 1500;
        for (double eps : {0.2, 0.4, 0.6}) {
            const double gi = modulus_nonconvexity(*lens, eps, opts);
            CHECK(gi <= capped(eps) + 1e-3);
        }
    }
    SUBCASE("hypothesis guard rejects dominated moduli") {
        // a huge "gamma" breaks delta > gamma on the shared grid
        const double x0 = (1.0 + 1.44 - 0.16) / 2.4;
        const double y0 = std::sqrt(1.0 - x0 * x0);
        CHECK_THROWS_AS(connect_by_midpoint_iteration(
                            cavern, small, delta_small, [](double e) { return e; }, 1.0,
                            {x0, y0}, {x0, -y0}, 50),
                        HypothesisViolation);
    }
}

TEST_CASE("retraction through the hull") {
    auto arc = make_arc();
    auto tube = make_arc_tube();
    Retraction retraction(arc, tube);
    SUBCASE("fixes set points") {
        const Vec x{std::cos(0.05), std::sin(0.05)};
        CHECK(norm2(retraction(x) - x) <= 1e-9);
    }
    SUBCASE("radial pull onto the arc") {
        CHECK(norm2(retraction({2.0, 0.0}) - Vec{1.0, 0.0}) <= 1e-9);
        CHECK(norm2(retract(arc, {2.0, 0.0}, tube) - Vec{1.0, 0.0}) <= 1e-9);
    }
    SUBCASE("displacement bounded through the root curve") {
        Rng rng = make_rng(2024);
        for (int i = 0; i < 40; ++i) {
            const double ang = uniform(rng, -0.6, 0.6);
            const double rad = uniform(rng, 0.7, 1.4);
            const Vec x1{rad * std::cos(ang), rad * std::sin(ang)};
            const Vec x2 = x1 + Vec{uniform(rng, -0.01, 0.01), uniform(rng, -0.01, 0.01)};
            const double in_gap = kPlane.dist(x1, x2);
            if (in_gap >= tube.s0 || in_gap <= 1e-14) continue;
            const double out_gap = kPlane.dist(retraction(x1), retraction(x2));
            CHECK(out_gap <= tube.t_E(in_gap) + 1e-6);
        }
    }
    SUBCASE("enclosing ball hypothesis") {
        // a long arc has 2r above d
        auto wide = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -1.2, 1.2));
        auto cert = certificate_from_modulus(
            kPlane, [](double eps) { return capped(eps); }, 0.5, 2.0 * std::sin(1.2));
        CHECK_THROWS_AS(Retraction(wide, make_tube(kPlane, std::move(cert))),
                        HypothesisViolation);
    }
}

TEST_CASE("distance gradient probe") {
    auto arc = make_arc();
    auto tube = make_arc_tube();
    SUBCASE("radial gradient on the arc testbed") {
        auto rep = distance_gradient_probe(*arc, {1.4, 0.0}, tube, 1e-4);
        CHECK(rep.pass);
    }
    SUBCASE("convex set from outside") {
        auto ball = make_ball(kPlane, {0.0, 0.0}, 1.0);
        auto cert = certificate_from_modulus(kPlane, [](double) { return 0.0; }, 0.5, 2.0);
        auto btube = make_tube(kPlane, std::move(cert));
        auto rep = distance_gradient_probe(*ball, {1.3, 0.2}, btube, 1e-4);
        CHECK(rep.pass);
    }
    SUBCASE("kinks at equidistant loci are flagged") {
        auto cloud = make_point_cloud(kPlane, {{0.0, 0.3}, {0.0, -0.3}});
        auto cert = certificate_from_modulus(kPlane, [](double) { return 0.0; }, 0.5, 0.6);
        auto ctube = make_tube(kPlane, std::move(cert));
        auto rep = distance_gradient_probe(*cloud, {0.25, 0.0}, ctube, 1e-4);
        CHECK_FALSE(rep.pass);
    }
    SUBCASE("oversized steps are rejected") {
        CHECK_THROWS_AS(distance_gradient_probe(*arc, {1.4, 0.0}, tube, 0.2),
                        PreconditionError);
    }
}
