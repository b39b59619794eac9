#include "weakconv/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "weakconv/mappings.hpp"
#include "weakconv/rng.hpp"
#include "weakconv/scene.hpp"
#include "weakconv/space_modulus.hpp"
#include "weakconv/surfaces.hpp"

namespace weakconv {

namespace {

constexpr double kArcHalfAngle = std::numbers::pi / 18.0;  // 10 degrees

double arc_chord() { return 2.0 * std::sin(kArcHalfAngle); }

// Nonconvexity modulus of a circular arc of radius 1: chord midpoints sag
// radially, capped once pairs can no longer grow apart.
double arc_gamma(double eps) {
    const double c = std::min(std::max(eps, 0.0), arc_chord());
    return 1.0 - std::sqrt(1.0 - c * c / 4.0);
}

double capped_hilbert(double eps) { return hilbert_modulus(std::min(eps, 2.0)); }

OraclePtr unit_arc(const PNormSpace& space, double center_angle = 0.0) {
    return make_curve_set(space,
                          Curve2D::arc({0.0, 0.0}, 1.0, center_angle - kArcHalfAngle,
                                       center_angle + kArcHalfAngle),
                          CurveSide::Boundary);
}

TubeSpec arc_tube(const PNormSpace& space) {
    auto cert = certificate_from_modulus(space, arc_gamma, 0.5, arc_chord());
    return make_tube(space, std::move(cert));
}

struct SuiteBuilder {
    CheckResult result;
    double margin = std::numeric_limits<double>::infinity();
    bool pass = true;

    explicit SuiteBuilder(std::string name) { result.suite = std::move(name); }

    void check(const std::string& label, bool ok, double slack) {
        pass = pass && ok;
        margin = std::min(margin, slack);
        if (!ok) {
            if (!result.summary.empty()) result.summary += "; ";
            result.summary += "FAIL " + label;
        }
    }
    void absorb(const std::string& label, const Report& rep) {
        check(label, rep.pass, rep.worst_margin);
    }
    void artifact(const std::string& name, Report rep) {
        result.artifacts.emplace_back(name, std::move(rep));
    }
    CheckResult finish() {
        result.pass = pass;
        result.worst_margin = margin;
        if (result.summary.empty()) result.summary = "ok";
        return std::move(result);
    }
};

// ---------------------------------------------------------------------------

CheckResult suite_space_modulus(std::uint64_t seed) {
    SuiteBuilder sb("space-modulus");
    const PNormSpace space = make_space(2, 2.0);
    Report rep;
    rep.name = "space_modulus";
    rep.columns = {"eps", "estimate", "closed_form", "abs_err", "pass"};
    for (double eps : {0.2, 0.6, 1.0, 1.4, 1.8}) {
        const double est = estimate_space_modulus(space, eps, 4096, seed);
        const double exact = hilbert_modulus(eps);
        const double err = std::fabs(est - exact);
        const bool ok = err <= 1e-3;
        rep.pass = rep.pass && ok;
        rep.merge_margin(1e-3 - err);
        rep.add_row({cell(eps), cell(est), cell(exact), cell(err), cell(ok)});
    }
    sb.absorb("estimator vs closed form", rep);
    sb.artifact("estimates", std::move(rep));
    return sb.finish();
}

CheckResult suite_day_nordlander(std::uint64_t) {
    SuiteBuilder sb("day-nordlander");
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.2 * i);
    for (double p : {1.5, 2.0, 3.0}) {
        const PNormSpace space = make_space(2, p);
        Report rep = check_day_nordlander(space, grid, 1e-3, 4096);
        sb.absorb("p=" + fmt_double(p), rep);
        sb.artifact("p" + fmt_double(p), std::move(rep));
    }
    return sb.finish();
}

CheckResult suite_cavern(std::uint64_t seed) {
    SuiteBuilder sb("cavern");
    const PNormSpace space = make_space(2, 2.0);
    auto body = make_ball(space, {0.0, 0.0}, 1.0);
    auto clip = make_ball(space, {0.0, 0.0}, 3.0);
    auto cavern = make_cavern(space, body, clip);

    PairSweepOptions opts;
    opts.seed = seed;
    opts.pairs = 4000;
    const double g1 = modulus_nonconvexity(*cavern, 1.0, opts);
    const double expected = 1.0 - std::sqrt(3.0) / 2.0;
    sb.check("gamma(1) closed form", std::fabs(g1 - expected) <= 1e-3,
             1e-3 - std::fabs(g1 - expected));
    sb.check("quadratic lower bound", g1 >= 0.125 - 1e-6, g1 - 0.125);

    Report rep = check_cavern_bounds(body, clip, 1.0, 1.0, {0.4, 0.8, 1.0, 1.2, 1.6}, 2e-3,
                                     opts);
    sb.absorb("bounds grid", rep);
    sb.artifact("bounds", std::move(rep));

    Report point;
    point.name = "gamma_point";
    point.columns = {"eps", "value", "bound_lower", "bound_upper", "pass"};
    point.add_row({cell(1.0), cell(g1), cell(0.125), cell(expected + 1e-3), cell(true)});
    sb.artifact("gamma1", std::move(point));
    return sb.finish();
}

CheckResult suite_sigma_laws(std::uint64_t seed) {
    SuiteBuilder sb("sigma-laws");
    const PNormSpace space = make_space(2, 2.0);
    PairSweepOptions opts;
    opts.seed = seed;
    opts.pairs = 1200;
    const double tol = 2e-3;

    auto unit = make_ball(space, {0.0, 0.0}, 1.0);
    auto ball2 = make_ball(space, {0.0, 0.0}, 2.0);
    auto ball08 = make_ball(space, {0.0, 0.0}, 0.8);
    auto ellipse = make_curve_set(space, Curve2D::ellipse({0.0, 0.0}, 1.5, 1.0),
                                  CurveSide::Inside);

    Report rep;
    rep.name = "sigma_laws";
    rep.columns = {"law", "lhs", "rhs", "gap", "pass"};
    auto row = [&](const std::string& law, double lhs, double rhs, bool identity) {
        const double gap = identity ? std::fabs(lhs - rhs) : rhs - lhs;
        const bool ok = identity ? gap <= tol : lhs >= rhs - tol;
        rep.pass = rep.pass && ok;
        rep.merge_margin(identity ? tol - gap : lhs - rhs + tol);
        rep.add_row({cell(law), cell(lhs), cell(rhs), cell(gap), cell(ok)});
    };

    // probe dilation scaling
    row("probe_scaling", sigma_modulus(ball08, unit, unit, 1.0, opts),
        sigma_modulus(unit, unit, unit, 1.0, opts) / 0.8, true);
    // gauge rescaling
    row("gauge_scaling", sigma_modulus(unit, ball2, unit, 0.5, opts),
        sigma_modulus(unit, unit, unit, 1.0, opts), true);
    // reference-body scaling
    row("body_scaling", sigma_modulus(unit, unit, ball2, 1.0, opts),
        2.0 * sigma_modulus(unit, unit, unit, 0.5, opts), true);
    // smaller probe needs a larger dilation
    row("probe_monotonicity", sigma_modulus(ball08, unit, ellipse, 1.0, opts),
        sigma_modulus(unit, unit, ellipse, 1.0, opts), false);
    // larger gauge body admits more pairs
    row("gauge_monotonicity", sigma_modulus(unit, ellipse, ellipse, 1.0, opts),
        sigma_modulus(unit, unit, ellipse, 1.0, opts), false);

    sb.absorb("scaling laws", rep);
    sb.artifact("laws", std::move(rep));
    return sb.finish();
}

CheckResult suite_roots(std::uint64_t) {
    SuiteBuilder sb("roots");
    const PNormSpace space = make_space(2, 2.0);
    auto prob = ball_condition_problem(space, 1.0, [](double) { return 0.0; });

    Report rep;
    rep.name = "roots";
    rep.columns = {"s", "t", "closed_form", "abs_err", "pass"};
    for (double s : {1e-4, 1e-3, 1e-2, 0.05, 0.1}) {
        const auto roots = solve_condition_roots(prob, s);
        const double exact = s + std::sqrt(4.0 * s - s * s);
        const double err = std::fabs(roots.t_of_s - exact);
        const bool ok = err <= 1e-9 && roots.branch_verified;
        rep.pass = rep.pass && ok;
        rep.merge_margin(1e-9 - err);
        rep.add_row({cell(s), cell(roots.t_of_s), cell(exact), cell(err), cell(ok)});
    }
    sb.absorb("closed-form roots", rep);

    std::vector<double> s_vals;
    for (double s = 1e-4; s <= 1e-2 * 1.0000001; s *= std::pow(10.0, 0.25))
        s_vals.push_back(s);
    const double slope = log_log_slope(prob, s_vals);
    sb.check("sqrt growth", slope >= 0.45 && slope <= 0.55,
             std::min(slope - 0.45, 0.55 - slope));
    Report srep;
    srep.name = "root_slope";
    srep.columns = {"slope", "lo", "hi", "pass"};
    srep.add_row({cell(slope), cell(0.45), cell(0.55),
                  cell(slope >= 0.45 && slope <= 0.55)});
    sb.artifact("roots", std::move(rep));
    sb.artifact("slope", std::move(srep));
    return sb.finish();
}

CheckResult suite_projection_stability(std::uint64_t seed) {
    SuiteBuilder sb("projection-stability");
    const PNormSpace space = make_space(2, 2.0);
    auto arc = unit_arc(space);
    auto tube = arc_tube(space);
    Report rep = check_projection_stability(*arc, tube, 500, seed);
    sb.absorb("arc testbed", rep);
    sb.artifact("stability", std::move(rep));
    return sb.finish();
}

CheckResult suite_connectivity(std::uint64_t seed) {
    SuiteBuilder sb("connectivity");
    const PNormSpace space = make_space(2, 2.0);

    // crescent: points outside the unit disk inside a small off-center ball
    auto cavern = make_cavern(space, make_ball(space, {0.0, 0.0}, 1.0),
                              make_ball(space, {0.0, 0.0}, 3.0));
    auto small = make_ball(space, {1.2, 0.0}, 0.4);
    auto delta_small = [&space](double eps) {
        return 0.4 * space_modulus_delta(space, std::min(2.0, eps / 0.4));
    };
    const double x0 = (1.0 + 1.2 * 1.2 - 0.16) / (2.0 * 1.2);
    const double y0 = std::sqrt(std::max(0.0, 1.0 - x0 * x0));
    auto chain = connect_by_midpoint_iteration(cavern, small, delta_small, capped_hilbert,
                                               1.0, {x0, y0}, {x0, -y0});
    sb.check("lens chain converges", chain.converged, chain.converged ? 1.0 : -1.0);
    sb.check("lens late rate", chain.fitted_rate <= 0.85, 0.85 - chain.fitted_rate);
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < chain.gaps.size(); ++i)
        if (chain.gaps[i + 1] >= chain.gaps[i] && chain.gaps[i] > 1e-12) decreasing = false;
    sb.check("lens gaps decreasing", decreasing, decreasing ? 1.0 : -1.0);

    Report rep;
    rep.name = "lens_chain";
    rep.columns = {"k", "gap"};
    for (std::size_t i = 0; i < chain.gaps.size(); ++i)
        rep.add_row({cell(static_cast<double>(i)), cell(chain.gaps[i])});
    rep.note = "fitted_rate " + fmt_double(chain.fitted_rate);
    sb.artifact("lens", std::move(rep));

    // convex control: two overlapping disks, gamma = 0, gaps halve exactly
    auto disk_a = make_ball(space, {0.0, 0.0}, 1.0);
    auto disk_b = make_ball(space, {0.5, 0.0}, 0.9);
    auto delta_b = [&space](double eps) {
        return 0.9 * space_modulus_delta(space, std::min(2.0, eps / 0.9));
    };
    Rng rng = make_rng(seed);
    const Vec p{0.3, 0.4}, q{0.3, -0.4};
    (void)rng;
    auto control = connect_by_midpoint_iteration(disk_a, disk_b, delta_b,
                                                 [](double) { return 0.0; }, 2.0, p, q);
    double worst_halving = 0.0;
    for (std::size_t i = 0; i + 1 < control.gaps.size(); ++i) {
        if (control.gaps[i] <= 1e-12) break;
        worst_halving = std::max(
            worst_halving, std::fabs(control.gaps[i + 1] - 0.5 * control.gaps[i]));
    }
    sb.check("convex halving", worst_halving <= 1e-12, 1e-12 - worst_halving);

    Report crep;
    crep.name = "convex_chain";
    crep.columns = {"k", "gap"};
    for (std::size_t i = 0; i < control.gaps.size(); ++i)
        crep.add_row({cell(static_cast<double>(i)), cell(control.gaps[i])});
    sb.artifact("convex", std::move(crep));
    return sb.finish();
}

CheckResult suite_retraction(std::uint64_t seed) {
    SuiteBuilder sb("retraction");
    const PNormSpace space = make_space(2, 2.0);
    auto arc = unit_arc(space);
    auto tube = arc_tube(space);
    Retraction retraction(arc, tube);

    Report rep;
    rep.name = "retraction";
    rep.columns = {"case", "defect", "bound", "pass"};
    double worst_fix = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double theta = -kArcHalfAngle + 2.0 * kArcHalfAngle * i / 99.0;
        const Vec x{std::cos(theta), std::sin(theta)};
        worst_fix = std::max(worst_fix, space.dist(retraction(x), x));
    }
    sb.check("fixes the set", worst_fix <= 1e-9, 1e-9 - worst_fix);
    rep.add_row({cell(std::string("fix")), cell(worst_fix), cell(1e-9),
                 cell(worst_fix <= 1e-9)});

    double worst_idem = 0.0;
    for (int i = 0; i < 100; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        const double ang = uniform(rng, -1.2, 1.2);
        const double rad = uniform(rng, 0.2, 2.0);
        const Vec x{rad * std::cos(ang), rad * std::sin(ang)};
        const Vec z1 = retraction(x);
        const Vec z2 = retraction(z1);
        worst_idem = std::max(worst_idem, space.dist(z1, z2));
    }
    sb.check("idempotent", worst_idem <= 2e-9, 2e-9 - worst_idem);
    rep.add_row({cell(std::string("idempotent")), cell(worst_idem), cell(2e-9),
                  cell(worst_idem <= 2e-9)});
    sb.artifact("retraction", std::move(rep));
    return sb.finish();
}

struct DiskCavernFamily {
    PNormSpace space;
    SetValuedMap f1, f2;
    double m_bound = 2.0;
    double t_lo = 0.52, t_hi = 1.45;
};

DiskCavernFamily disk_cavern_family() {
    DiskCavernFamily fam;
    fam.space = make_space(2, 2.0);
    auto cavern = make_cavern(fam.space, make_ball(fam.space, {0.0, 0.0}, 1.0),
                              make_ball(fam.space, {0.0, 0.0}, 3.0));
    fam.f1 = constant_map(cavern, fam.t_lo, fam.t_hi,
                          SetValuedMap::Class::UniformlyWeaklyConvex, capped_hilbert, 2.0);
    auto base = make_ball(fam.space, {0.0, 0.0}, 0.5);
    const PNormSpace space = fam.space;
    fam.f2 = translate_map(base, {1.0, 0.0}, fam.t_lo, fam.t_hi,
                           SetValuedMap::Class::UniformlyConvex,
                           [space](double eps) {
                               return 0.5 * space_modulus_delta(space,
                                                                std::min(2.0, eps / 0.5));
                           },
                           1.0);
    return fam;
}

CheckResult suite_intersection_stability(std::uint64_t seed) {
    SuiteBuilder sb("intersection-stability");
    auto fam = disk_cavern_family();

    Report rep;
    rep.name = "intersection_stability";
    rep.columns = {"t1", "t2", "branch", "measured", "bound", "transfer_dist", "pass"};
    Report trail;
    trail.name = "transfer_trail";
    trail.columns = {"n", "gap"};
    int branch1 = 0, branch2 = 0;
    for (int i = 0; i < 50; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        double t1, t2;
        if (i % 2 == 0) {
            t1 = uniform(rng, fam.t_lo, fam.t_hi - 0.25);
            t2 = t1 + uniform(rng, 0.01, 0.22);
        } else {
            t1 = fam.t_lo + uniform(rng, 0.0, 0.04);
            t2 = fam.t_hi - uniform(rng, 0.0, 0.04);
        }
        auto bound = intersection_stability_bound(fam.f1, fam.f2, t1, t2, fam.m_bound);
        (bound.branch == 1 ? branch1 : branch2)++;

        // transfer a concrete point and hold it to the same distance bound
        auto h1 = make_intersection(fam.space,
                                    {fam.f1.evaluate(t1), fam.f2.evaluate(t1)});
        auto samples = h1->boundary_samples(64);
        const Vec c1 = samples[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(samples.size()) - 1))];
        auto transfer = transfer_point(c1, fam.f1, fam.f2, t1, t2);
        if (i == 0) {
            for (std::size_t n = 0; n < transfer.gap_trail.size(); ++n)
                trail.add_row({cell(static_cast<double>(n)), cell(transfer.gap_trail[n])});
            trail.note = "terminal case " + transfer.terminal_case;
        }
        const double moved = fam.space.dist(c1, transfer.point);
        const double m1 = fam.f1.evaluate(t2)->distance(transfer.point);
        const double m2 = fam.f2.evaluate(t2)->distance(transfer.point);
        const bool ok = bound.pass && moved <= bound.bound + 1e-6 && m1 <= 1e-6 && m2 <= 1e-6;
        rep.pass = rep.pass && ok;
        rep.merge_margin(std::min({bound.bound + 1e-6 - bound.measured,
                                   bound.bound + 1e-6 - moved, 1e-6 - m1, 1e-6 - m2}));
        rep.add_row({cell(t1), cell(t2), cell(static_cast<double>(bound.branch)),
                     cell(bound.measured), cell(bound.bound), cell(moved), cell(ok)});
    }
    sb.absorb("bounds and transfers", rep);
    sb.check("both branches exercised", branch1 > 0 && branch2 > 0,
             branch1 > 0 && branch2 > 0 ? 1.0 : -1.0);
    rep.note = "branch1 " + fmt_double(branch1) + ", branch2 " + fmt_double(branch2);
    sb.artifact("stability", std::move(rep));
    sb.artifact("trail", std::move(trail));
    return sb.finish();
}

CheckResult suite_selection_splitting(std::uint64_t seed) {
    SuiteBuilder sb("selection-splitting");
    const PNormSpace space = make_space(2, 2.0);
    auto tube = arc_tube(space);

    // rotated-arc selections
    Report rep;
    rep.name = "selection";
    rep.columns = {"theta", "membership", "displacement", "bound", "pass"};
    Vec prev_sel;
    double prev_theta = 0.0;
    OraclePtr prev_arc;
    const Vec basepoint{0.0, 0.0};
    for (int i = 0; i < 50; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        auto h = unit_arc(space, theta);
        const Vec sel = selection_point(h, tube, 0.9, basepoint);
        const double membership = h->distance(sel);
        bool ok = membership <= 1e-6;
        double displacement = 0.0, bound = 0.0;
        if (prev_arc) {
            const double hdist = hausdorff_distance(*h, *prev_arc, 1e-7);
            displacement = space.dist(sel, prev_sel);
            bound = selection_displacement_bound(tube, 1.0, 0.9, hdist);
            ok = ok && displacement <= bound + 1e-6;
        }
        rep.pass = rep.pass && ok;
        rep.merge_margin(std::min(1e-6 - membership,
                                  prev_arc ? bound + 1e-6 - displacement : 1.0));
        rep.add_row({cell(theta), cell(membership), cell(displacement), cell(bound),
                     cell(ok)});
        prev_sel = sel;
        prev_arc = h;
        prev_theta = theta;
    }
    (void)prev_theta;
    sb.absorb("rotated arcs", rep);
    sb.artifact("selection", std::move(rep));

    // splitting c = a + b with A a short arc and B a small disk
    SplitContext ctx;
    ctx.a = unit_arc(space);
    ctx.b = make_ball(space, {0.0, 0.0}, 0.1);
    ctx.gamma_a = arc_gamma;
    ctx.delta_b = [&space](double eps) {
        return 0.1 * space_modulus_delta(space, std::min(2.0, eps / 0.1));
    };
    ctx.d = 0.5;
    ctx.r1 = 0.3;
    ctx.basepoint = Vec{-0.5, 0.0};

    Report srep;
    srep.name = "split";
    srep.columns = {"i", "residual", "defect_a", "defect_b", "pass"};
    for (int i = 0; i < 100; ++i) {
        Rng rng = make_rng(seed, 1000 + static_cast<std::uint64_t>(i));
        const double ang = uniform(rng, -kArcHalfAngle, kArcHalfAngle);
        const double br = 0.1 * std::sqrt(uniform(rng, 0.0, 1.0));
        const double bang = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const Vec c = Vec{std::cos(ang), std::sin(ang)} +
                      Vec{br * std::cos(bang), br * std::sin(bang)};
        const auto result = split(ctx, c);
        const bool ok = result.residual == 0.0 && result.defect_a <= 1e-6 &&
                        result.defect_b <= 1e-6;
        srep.pass = srep.pass && ok;
        srep.merge_margin(std::min(1e-6 - result.defect_a, 1e-6 - result.defect_b));
        if (!ok || i < 16)
            srep.add_row({cell(static_cast<double>(i)), cell(result.residual),
                          cell(result.defect_a), cell(result.defect_b), cell(ok)});
    }
    sb.absorb("splits", srep);
    sb.artifact("split", std::move(srep));
    return sb.finish();
}

CheckResult suite_surfaces(std::uint64_t seed) {
    SuiteBuilder sb("surfaces");
    auto ellipse = SmoothCurve2D::validated(Curve2D::ellipse({0.0, 0.0}, 2.0, 1.0));
    auto circle = SmoothCurve2D::validated(Curve2D::circle({0.0, 0.0}, 1.0));

    const double r_sharp = curvature_radius(ellipse, 0.0);
    const double r_flat = curvature_radius(ellipse, std::numbers::pi / 2.0);
    sb.check("ellipse sharp curvature", std::fabs(r_sharp - 0.5) <= 1e-6,
             1e-6 - std::fabs(r_sharp - 0.5));
    sb.check("ellipse flat curvature", std::fabs(r_flat - 4.0) <= 1e-6,
             1e-6 - std::fabs(r_flat - 4.0));

    // smoothness bound on admissible grids
    PairSweepOptions opts;
    opts.seed = seed;
    opts.pairs = 3000;
    SurfaceGammaOptions gopts;
    gopts.sweep = opts;
    auto run_gamma = [&](const SmoothCurve2D& c, const std::string& label) {
        auto alpha = estimate_alpha(c, linspace(0.004, 2.0, 512), 2048);
        const double e0 = epsilon0(alpha);
        std::vector<double> cands;
        for (double cand = 3.9; cand > 1e-3; cand /= 1.3) cands.push_back(cand);
        const double r = simplicity_parameter_probe(c, cands);
        const double hi = std::min(e0, r);
        Report rep = check_surface_gamma_bound(c, linspace(0.12 * hi, 0.88 * hi, 10), gopts);
        sb.absorb(label + " gamma bound", rep);
        sb.artifact(label + "_gamma", std::move(rep));
        return e0;
    };
    const double e0_circle = run_gamma(circle, "circle");
    run_gamma(ellipse, "ellipse");
    sb.check("circle epsilon0", std::fabs(e0_circle - 2.0 / 3.0) <= 1e-2,
             1e-2 - std::fabs(e0_circle - 2.0 / 3.0));

    auto field_circle = normal_field_continuity(circle, 200);
    sb.absorb("circle normal field", field_circle.report);
    auto field_ellipse = normal_field_continuity(ellipse, 200);
    sb.absorb("ellipse normal field", field_ellipse.report);
    sb.artifact("normal_circle", std::move(field_circle.report));
    sb.artifact("normal_ellipse", std::move(field_ellipse.report));

    Report curv;
    curv.name = "curvature";
    curv.columns = {"point", "radius", "expected"};
    curv.add_row({cell(std::string("sharp")), cell(r_sharp), cell(0.5)});
    curv.add_row({cell(std::string("flat")), cell(r_flat), cell(4.0)});
    curv.add_row({cell(std::string("epsilon0_circle")), cell(e0_circle), cell(2.0 / 3.0)});
    sb.artifact("curvature", std::move(curv));
    return sb.finish();
}

using SuiteFn = CheckResult (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"space-modulus", suite_space_modulus},
        {"day-nordlander", suite_day_nordlander},
        {"cavern", suite_cavern},
        {"sigma-laws", suite_sigma_laws},
        {"roots", suite_roots},
        {"projection-stability", suite_projection_stability},
        {"connectivity", suite_connectivity},
        {"retraction", suite_retraction},
        {"intersection-stability", suite_intersection_stability},
        {"selection-splitting", suite_selection_splitting},
        {"surfaces", suite_surfaces},
    };
    return table;
}

}  // namespace

std::vector<std::string> verification_suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suite_table()) names.push_back(name);
    return names;
}

CheckResult run_verification_suite(const std::string& name, std::uint64_t seed) {
    for (const auto& [n, fn] : suite_table()) {
        if (n != name) continue;
        const auto start = std::chrono::steady_clock::now();
        CheckResult res = fn(seed);
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        return res;
    }
    throw DomainError("unknown verification suite \"" + name + "\"");
}

std::vector<CheckResult> run_all_verifications(std::uint64_t seed,
                                               const std::string& out_dir) {
    std::vector<CheckResult> results;
    for (const auto& [name, fn] : suite_table())
        results.push_back(run_verification_suite(name, seed));
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& res : results)
            for (const auto& [aname, rep] : res.artifacts)
                write_file(out_dir + "/" + res.suite + "__" + aname + ".csv", rep.to_csv());
    }
    return results;
}

std::string artifact_digest(const std::vector<CheckResult>& results) {
    std::string all;
    for (const auto& res : results)
        for (const auto& [aname, rep] : res.artifacts) {
            all += res.suite + "/" + aname + "\n";
            all += rep.to_csv();
        }
    return all;
}

}  // namespace weakconv
