#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weakconv/mappings.hpp"
#include "weakconv/rng.hpp"
#include "weakconv/space_modulus.hpp"

using namespace weakconv;

namespace {
const PNormSpace kPlane = make_space(2, 2.0);
constexpr double kHalf = std::numbers::pi / 18.0;

double capped(double eps) { return hilbert_modulus(std::min(eps, 2.0)); }

double arc_gamma(double eps) {
    const double chord = 2.0 * std::sin(kHalf);
    const double c = std::min(std::max(eps, 0.0), chord);
    return 1.0 - std::sqrt(1.0 - c * c / 4.0);
}

SetValuedMap cavern_family(double t_lo, double t_hi) {
    auto cavern = make_cavern(kPlane, make_ball(kPlane, {0.0, 0.0}, 1.0),
                              make_ball(kPlane, {0.0, 0.0}, 3.0));
    return constant_map(cavern, t_lo, t_hi, SetValuedMap::Class::UniformlyWeaklyConvex,
                        capped, 2.0);
}

SetValuedMap sliding_disk(double t_lo, double t_hi) {
    auto base = make_ball(kPlane, {0.0, 0.0}, 0.5);
    return translate_map(base, {1.0, 0.0}, t_lo, t_hi,
                         SetValuedMap::Class::UniformlyConvex,
                         [](double eps) {
                             return 0.5 * hilbert_modulus(std::min(2.0, eps / 0.5));
                         },
                         1.0);
}
}  // namespace

TEST_CASE("continuity modulus estimation") {
    SUBCASE("translated balls move at unit speed") {
        auto f = translate_map(make_ball(kPlane, {0.0, 0.0}, 1.0), {1.0, 0.0}, 0.0, 1.0,
                               SetValuedMap::Class::UniformlyConvex, capped, 2.0);
        auto curve = estimate_continuity_modulus(f, {0.0, 0.25, 0.5, 0.75, 1.0});
        for (const auto& [rho, v] : curve.samples())
            if (rho > 0.0) CHECK(v == doctest::Approx(rho).epsilon(1e-4));
    }
    SUBCASE("constant maps do not move") {
        auto f = cavern_family(0.0, 1.0);
        auto curve = estimate_continuity_modulus(f, {0.0, 0.5, 1.0});
        CHECK(curve.value(1.0) <= 1e-6);
    }
    SUBCASE("inflating balls grow at unit speed") {
        auto f = inflate_map(kPlane, {0.0, 0.0}, 1.0, 0.0, 0.5);
        auto curve = estimate_continuity_modulus(f, {0.0, 0.25, 0.5});
        for (const auto& [rho, v] : curve.samples())
            if (rho > 0.0) CHECK(v == doctest::Approx(rho).epsilon(1e-4));
    }
    SUBCASE("grid points outside the domain are rejected") {
        auto f = cavern_family(0.0, 1.0);
        CHECK_THROWS_AS(estimate_continuity_modulus(f, {0.0, 2.0}), DomainError);
    }
}

TEST_CASE("intersection stability bounds") {
    auto f1 = cavern_family(0.52, 1.45);
    auto f2 = sliding_disk(0.52, 1.45);
    SUBCASE("identical parameters sit in the degenerate branch") {
        auto b = intersection_stability_bound(f1, f2, 0.8, 0.8, 2.0);
        CHECK(b.branch == 1);
        CHECK(b.bound == 0.0);
        CHECK(b.measured <= 1e-6);
        CHECK(b.pass);
    }
    SUBCASE("nearby parameters use the root branch") {
        auto b = intersection_stability_bound(f1, f2, 0.8, 0.86, 2.0);
        CHECK(b.branch == 1);
        CHECK(b.pass);
        CHECK(b.measured <= b.bound + 1e-6);
    }
    SUBCASE("distant parameters fall back to the coarse branch") {
        auto b = intersection_stability_bound(f1, f2, 0.53, 1.44, 2.0);
        CHECK(b.branch == 2);
        CHECK(b.pass);
    }
    SUBCASE("pointwise continuity in the Hausdorff metric") {
        double prev = std::numeric_limits<double>::infinity();
        for (double gap : {0.2, 0.05, 0.0125}) {
            auto b = intersection_stability_bound(f1, f2, 0.8, 0.8 + gap, 2.0);
            CHECK(b.measured < prev);
            prev = b.measured;
        }
        CHECK(prev <= 0.05);
    }
    SUBCASE("swapped convexity classes are rejected") {
        CHECK_THROWS_AS(intersection_stability_bound(f2, f1, 0.8, 0.9, 2.0),
                        PreconditionError);
    }
}

TEST_CASE("point transfer across the family") {
    auto f1 = cavern_family(0.52, 1.45);
    auto f2 = sliding_disk(0.52, 1.45);
    auto h_at = [&](double t) {
        return make_intersection(kPlane, {f1.evaluate(t), f2.evaluate(t)});
    };
    SUBCASE("identical parameters return the same point") {
        const Vec c1 = h_at(0.8)->boundary_samples(16).front();
        auto res = transfer_point(c1, f1, f2, 0.8, 0.8);
        CHECK(res.point == c1);
    }
    SUBCASE("transfers satisfy both memberships and the bound") {
        Rng rng = make_rng(7);
        for (int i = 0; i < 10; ++i) {
            const double t1 = uniform(rng, 0.55, 1.3);
            const double t2 = t1 + uniform(rng, 0.01, 0.12);
            auto samples = h_at(t1)->boundary_samples(32);
            const Vec c1 = samples[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(samples.size()) - 1))];
            auto bound = intersection_stability_bound(f1, f2, t1, t2, 2.0);
            auto res = transfer_point(c1, f1, f2, t1, t2);
            CHECK(f1.evaluate(t2)->distance(res.point) <= 1e-6);
            CHECK(f2.evaluate(t2)->distance(res.point) <= 1e-6);
            CHECK(kPlane.dist(c1, res.point) <= bound.bound + 1e-6);
        }
    }
    SUBCASE("convex images halve the gap per step") {
        // weakly convex family with zero modulus (disks) against sliding disks
        auto f1c = constant_map(make_ball(kPlane, {0.6, 0.0}, 0.6), 0.0, 1.0,
                                SetValuedMap::Class::UniformlyWeaklyConvex,
                                [](double) { return 0.0; }, 1.2);
        auto res = transfer_point({0.05, 0.1}, f1c, sliding_disk(0.0, 1.0), 0.1, 0.6);
        for (std::size_t i = 0; i + 1 < res.gap_trail.size(); ++i) {
            if (res.gap_trail[i] <= 1e-12) break;
            CHECK(res.gap_trail[i + 1] <= 0.5 * res.gap_trail[i] + 1e-12);
        }
    }
}

TEST_CASE("selection through the hull") {
    auto cert = certificate_from_modulus(kPlane, arc_gamma, 0.5, 2.0 * std::sin(kHalf));
    auto tube = make_tube(kPlane, cert);
    SUBCASE("convex sets select their nearest point") {
        auto disk = make_ball(kPlane, {1.5, 0.0}, 0.2);
        auto zero_cert = certificate_from_modulus(kPlane, [](double) { return 0.0; },
                                                  0.5, 0.4);
        auto ztube = make_tube(kPlane, zero_cert);
        const Vec s = selection_point(disk, ztube, 0.5, zero_vec(2));
        CHECK(norm2(s - Vec{1.3, 0.0}) <= 1e-9);
    }
    SUBCASE("arcs select the hull-nearest point re-projected") {
        auto arc = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -kHalf, kHalf));
        const Vec s = selection_point(arc, tube, 0.9, zero_vec(2));
        CHECK(norm2(s - Vec{1.0, 0.0}) <= 1e-9);
    }
    SUBCASE("rotation equivariance of the arc selection") {
        for (double theta : {0.5, 1.7, 3.0}) {
            auto rotated = make_curve_set(
                kPlane, Curve2D::arc({0.0, 0.0}, 1.0, theta - kHalf, theta + kHalf));
            const Vec s = selection_point(rotated, tube, 0.9, zero_vec(2));
            CHECK(norm2(s - Vec{std::cos(theta), std::sin(theta)}) <= 1e-9);
        }
    }
    SUBCASE("basepoints inside the hull margin are rejected") {
        auto disk = make_ball(kPlane, {0.2, 0.0}, 0.15);
        auto zero_cert = certificate_from_modulus(kPlane, [](double) { return 0.0; },
                                                  0.5, 0.3);
        CHECK_THROWS_AS(selection_point(disk, make_tube(kPlane, zero_cert), 0.5,
                                        zero_vec(2)),
                        HypothesisViolation);
    }
}

TEST_CASE("splitting against a small disk") {
    SplitContext ctx;
    ctx.a = make_curve_set(kPlane, Curve2D::arc({0.0, 0.0}, 1.0, -kHalf, kHalf));
    ctx.b = make_ball(kPlane, {0.0, 0.0}, 0.1);
    ctx.gamma_a = arc_gamma;
    ctx.delta_b = [](double eps) { return 0.1 * hilbert_modulus(std::min(2.0, eps / 0.1)); };
    ctx.d = 0.5;
    ctx.r1 = 0.3;
    ctx.basepoint = Vec{-0.5, 0.0};

    SUBCASE("the worked example splits cleanly") {
        const Vec c{1.05, 0.0};
        auto res = split(ctx, c);
        CHECK(res.residual == 0.0);
        CHECK(res.defect_a <= 1e-6);
        CHECK(res.defect_b <= 1e-6);
        CHECK(norm2((res.a + res.b) - c) <= 1e-12);
    }
    SUBCASE("singleton summands pin the split") {
        SplitContext sctx = ctx;
        sctx.a = make_point_cloud(kPlane, {{1.0, 0.0}});
        sctx.gamma_a = [](double) { return 0.0; };
        const Vec c{1.03, 0.04};
        auto res = split(sctx, c);
        CHECK(norm2(res.a - Vec{1.0, 0.0}) <= 1e-9);
        CHECK(norm2(res.b - Vec{0.03, 0.04}) <= 1e-9);
    }
    SUBCASE("points outside the sum are rejected") {
        CHECK_THROWS_AS(split(ctx, {2.0, 0.0}), DomainError);
    }
    SUBCASE("nearby inputs split continuously") {
        const Vec c1{1.05, 0.0};
        const Vec c2{1.052, 0.003};
        auto r1 = split(ctx, c1);
        auto r2 = split(ctx, c2);
        auto h1 = make_intersection(kPlane, {ctx.b, reflect_translate(ctx.a, c1)});
        auto h2 = make_intersection(kPlane, {ctx.b, reflect_translate(ctx.a, c2)});
        const double h = hausdorff_distance(*h1, *h2, 1e-7);
        auto tube2 = make_tube(kPlane,
                               certificate_from_modulus(kPlane, arc_gamma, 0.5,
                                                        2.0 * std::sin(kHalf)));
        const double bound = selection_displacement_bound(tube2, 0.1 + norm2(c1), 0.3, h);
        CHECK(norm2(r1.b - r2.b) <= bound + 1e-9);
    }
}
