#include "weakconv/mappings.hpp"

#include <algorithm>
#include <cmath>

#include "weakconv/space_modulus.hpp"

namespace weakconv {

SetValuedMap translate_map(const OraclePtr& base, const Vec& direction, double t_lo,
                           double t_hi, SetValuedMap::Class cls,
                           std::function<double(double)> modulus, double modulus_domain) {
    SetValuedMap f;
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    const double dir_norm = base->space().norm(direction);
    f.evaluate = [base, direction](double t) { return affine_image(base, t * direction, 1.0); };
    f.omega = [dir_norm](double rho) { return dir_norm * rho; };
    f.cls = cls;
    f.modulus = std::move(modulus);
    f.modulus_domain = modulus_domain;
    return f;
}

SetValuedMap inflate_map(const PNormSpace& space, const Vec& center, double r0, double t_lo,
                         double t_hi) {
    if (r0 + t_lo <= 0.0) throw DomainError("inflating ball needs positive radius");
    SetValuedMap f;
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.evaluate = [space, center, r0](double t) { return make_ball(space, center, r0 + t); };
    f.omega = [](double rho) { return rho; };
    f.cls = SetValuedMap::Class::UniformlyConvex;
    const double r_min = r0 + t_lo;
    f.modulus = [space, r_min](double eps) {
        return r_min * space_modulus_delta(space, std::min(2.0, eps / r_min));
    };
    f.modulus_domain = 2.0 * r_min;
    return f;
}

SetValuedMap constant_map(const OraclePtr& base, double t_lo, double t_hi,
                          SetValuedMap::Class cls, std::function<double(double)> modulus,
                          double modulus_domain) {
    SetValuedMap f;
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.evaluate = [base](double) { return base; };
    f.omega = [](double) { return 0.0; };
    f.cls = cls;
    f.modulus = std::move(modulus);
    f.modulus_domain = modulus_domain;
    return f;
}

ModulusCurve estimate_continuity_modulus(const SetValuedMap& f,
                                         const std::vector<double>& t_grid,
                                         double hausdorff_tol) {
    for (double t : t_grid)
        if (t < f.t_lo - 1e-12 || t > f.t_hi + 1e-12)
            throw DomainError("grid point outside the map domain");
    std::vector<OraclePtr> images;
    images.reserve(t_grid.size());
    for (double t : t_grid) images.push_back(f.evaluate(t));
    std::vector<std::pair<double, double>> samples;
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        for (std::size_t j = i + 1; j < t_grid.size(); ++j) {
            const double gap = std::fabs(t_grid[i] - t_grid[j]);
            if (gap <= 0.0) continue;
            samples.emplace_back(gap,
                                 hausdorff_distance(*images[i], *images[j], hausdorff_tol));
        }
    // upper envelope per gap, then monotone
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<double, double>> envelope;
    for (auto& [gap, h] : samples) {
        if (!envelope.empty() && std::fabs(envelope.back().first - gap) < 1e-12)
            envelope.back().second = std::max(envelope.back().second, h);
        else
            envelope.emplace_back(gap, h);
    }
    return ModulusCurve::from_samples(std::move(envelope), /*monotonize=*/true);
}

namespace {

ConditionProblem pair_condition_problem(const SetValuedMap& f1, const SetValuedMap& f2) {
    if (f1.cls != SetValuedMap::Class::UniformlyWeaklyConvex ||
        f2.cls != SetValuedMap::Class::UniformlyConvex)
        throw PreconditionError(
            "stability needs a weakly convex family and a uniformly convex family");
    return ConditionProblem{f2.modulus, f1.modulus, f2.modulus_domain};
}

void require_in_bound(const SetOracle& h, double m_bound) {
    for (const auto& p : h.boundary_samples(64))
        if (h.space().norm(p) > m_bound + 1e-7)
            throw HypothesisViolation("intersection escapes the stated bounding ball");
}

OraclePtr intersection_at(const SetValuedMap& f1, const SetValuedMap& f2, double t) {
    auto h = make_intersection(f1.evaluate(t)->space(), {f1.evaluate(t), f2.evaluate(t)});
    if (h->boundary_samples(64).empty())
        throw HypothesisViolation("empty intersection at t = " + fmt_double(t));
    return h;
}

}  // namespace

StabilityBound intersection_stability_bound(const SetValuedMap& f1, const SetValuedMap& f2,
                                            double t1, double t2, double m_bound, double tol) {
    auto prob = pair_condition_problem(f1, f2);
    StabilityBound out;
    out.s0 = detect_s0(prob);
    const double rho = std::fabs(t1 - t2);
    out.omega1 = f1.omega(rho);
    out.omega2 = f2.omega(rho);

    auto h1 = intersection_at(f1, f2, t1);
    auto h2 = intersection_at(f1, f2, t2);
    require_in_bound(*h1, m_bound);
    require_in_bound(*h2, m_bound);

    const double half_sum = 0.5 * (out.omega1 + out.omega2);
    if (half_sum < out.s0) {
        out.branch = 1;
        const double t_root =
            half_sum > 0.0 ? solve_condition_roots(prob, half_sum).t_of_s : 0.0;
        out.bound = 2.0 * out.omega1 + 3.0 * out.omega2 + t_root;
    } else {
        out.branch = 2;
        if (out.s0 <= 0.0)
            throw ConditionNotSatisfied("no solvable range for the moduli pair", 0.0);
        out.bound = (out.omega1 + out.omega2) / out.s0 * m_bound;
    }
    out.measured = hausdorff_distance(*h1, *h2, 1e-7);
    out.pass = out.measured <= out.bound + tol;
    return out;
}

TransferResult transfer_point(const Vec& c1, const SetValuedMap& f1, const SetValuedMap& f2,
                              double t1, double t2, int max_iters, double membership_tol) {
    auto prob = pair_condition_problem(f1, f2);
    const auto f1_t2 = f1.evaluate(t2);
    const auto f2_t2 = f2.evaluate(t2);
    const PNormSpace& space = f1_t2->space();
    auto h2 = intersection_at(f1, f2, t2);

    TransferResult res;
    if (t1 == t2) {
        res.point = c1;
        res.terminal_case = "trivial";
        return res;
    }
    {
        auto h1 = intersection_at(f1, f2, t1);
        if (!h1->contains(c1, 10.0 * membership_tol))
            throw PreconditionError("transfer source point must lie in the intersection");
    }

    const Vec b = f2_t2->nearest_point(c1);
    const Vec b_pi = f1_t2->nearest_point(b);
    const double b_gap = space.dist(b, b_pi);
    if (h2->contains(b, membership_tol)) {
        res.point = b;
        res.terminal_case = "direct";
        return res;
    }

    // entry point: the feasible point of [d_pt, b] nearest to b
    auto samples = h2->boundary_samples(128);
    if (samples.empty()) throw HypothesisViolation("no points found in the intersection");
    Vec d_pt = samples.front();
    for (const auto& s : samples)
        if (space.dist(s, b) < space.dist(d_pt, b)) d_pt = s;
    double best_lambda = 0.0;
    const int scan = 512;
    for (int i = scan; i >= 0; --i) {
        const double lam = static_cast<double>(i) / scan;
        if (h2->contains(lerp(d_pt, b, lam), 1e-9)) {
            best_lambda = lam;
            break;
        }
    }
    if (best_lambda < 1.0) {
        double lo = best_lambda, hi = std::min(1.0, best_lambda + 1.0 / scan);
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (h2->contains(lerp(d_pt, b, mid), 1e-9))
                lo = mid;
            else
                hi = mid;
        }
        best_lambda = lo;
    }
    Vec a_n = lerp(d_pt, b, best_lambda);

    auto gamma = f1.modulus;
    auto delta = f2.modulus;
    for (int n = 1; n <= max_iters; ++n) {
        const double l_n = space.dist(a_n, b_pi);
        res.gap_trail.push_back(l_n);
        res.iterations = n;
        if (l_n <= 1e-12) {
            res.point = b_pi;
            res.terminal_case = "limit";
            if (h2->distance(res.point) > membership_tol)
                throw HypothesisViolation("limit point misses the intersection");
            return res;
        }
        const double lhs = delta(std::min(space.dist(a_n, b), f2.modulus_domain));
        const double rhs = gamma(l_n) + 0.5 * b_gap;
        if (lhs <= rhs) {
            res.point = a_n;
            res.terminal_case = "case2";
            if (h2->distance(res.point) > membership_tol)
                throw HypothesisViolation("iterate left the intersection");
            return res;
        }
        const double alpha = std::min({1.0 / n, 0.5 * (lhs - rhs),
                                       0.5 * (0.5 * l_n - gamma(l_n))});
        const Vec m = midpoint(a_n, b_pi);
        const Vec w = f1_t2->nearest_point(m);
        if (space.dist(w, m) > gamma(l_n) + alpha + 1e-9)
            throw HypothesisViolation("weak convexity violated during transfer at scale " +
                                      fmt_double(l_n));
        if (f2_t2->distance(w) > membership_tol)
            throw HypothesisViolation("midpoint iterate left the convex family");
        a_n = w;
    }
    throw HypothesisViolation("transfer iteration stalled; case split never resolved");
}

Vec selection_point(const OraclePtr& h, const TubeSpec& tube, double r1,
                    const Vec& basepoint) {
    auto hull = closed_convex_hull(h);
    const double rho0 = hull->distance(basepoint);
    if (rho0 < r1)
        throw HypothesisViolation("selection basepoint too close to the hull: " +
                                  fmt_double(rho0));
    Vec center;
    const double r = h->bounding_radius(&center);
    if (!(2.0 * r < tube.d))
        throw HypothesisViolation("selection needs the set inside a ball with 2r < d");
    const Vec y = hull->nearest_point(basepoint);
    return project_in_tube(*h, y, tube);
}

double selection_displacement_bound(const TubeSpec& tube, double big_r, double r1, double h) {
    if (h <= 0.0) return 0.0;
    const PNormSpace& space = tube.space;
    auto delta = [&](double eps) {
        return big_r * space_modulus_delta(space, std::min(2.0, eps / big_r));
    };
    const double cap = delta(2.0 * big_r);
    const double delta_big = delta(std::min(2.0 * r1, 2.0 * big_r));
    auto delta_inv = [&](double v) {
        if (v >= cap) return 2.0 * big_r;
        double lo = 0.0, hi = 2.0 * big_r;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (delta(mid) >= v)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    };
    const double f_e = h < 2.0 * delta_big ? delta_inv(h / 2.0) : big_r * h / delta_big;
    const double u = 2.0 * h + f_e;  // hull projection displacement bound

    const double omega1 = u + h;
    const double t_term = u < tube.s0 ? tube.t_E(u) : 2.0 * big_r;
    const double omega2 = 2.0 * u + h + t_term;
    const double half_sum = 0.5 * (omega1 + omega2);
    if (half_sum < tube.s0)
        return 2.0 * omega1 + 3.0 * omega2 + tube.t_E(half_sum);
    if (tube.s0 <= 0.0) return 2.0 * big_r;
    return std::min(2.0 * big_r, (omega1 + omega2) / tube.s0 * big_r);
}

SplitResult split(const SplitContext& ctx, const Vec& c, double membership_tol) {
    const PNormSpace& space = ctx.a->space();
    const double diam_b = sampled_diameter(*ctx.b);
    if (!(2.0 * diam_b < ctx.d))
        throw HypothesisViolation("splitting needs 2 diam B < d");
    // dominance and solvability of both moduli pairs
    auto cert = certificate_from_modulus(
        space, ctx.gamma_a, ctx.d, std::min(2.0 * ctx.d, sampled_diameter(*ctx.a)));
    if (!cert.valid)
        throw HypothesisViolation("weak convexity certificate fails for the splitting set");
    {
        ConditionProblem p1{ctx.delta_b, ctx.gamma_a, diam_b};
        if (detect_s0(p1) <= 0.0)
            throw ConditionNotSatisfied("moduli pair (delta_B, gamma_A) unsolvable", 0.0);
        auto p2 = ball_condition_problem(space, ctx.d, ctx.gamma_a);
        if (detect_s0(p2) <= 0.0)
            throw ConditionNotSatisfied("moduli pair (ball delta, gamma_A) unsolvable", 0.0);
    }

    auto h = make_intersection(space, {ctx.b, reflect_translate(ctx.a, c)});
    if (h->boundary_samples(32).empty())
        throw DomainError("c outside A+B: the splitting intersection is empty");

    auto tube = make_tube(space, cert);
    const Vec b = selection_point(h, tube, ctx.r1, ctx.basepoint);
    SplitResult out;
    out.b = b;
    out.a = c - b;
    // a is defined as c - b, so the decomposition identity holds by
    // construction; only the memberships are empirical.
    out.residual = 0.0;
    out.defect_a = ctx.a->distance(out.a);
    out.defect_b = ctx.b->distance(out.b);
    if (out.defect_a > membership_tol || out.defect_b > membership_tol)
        throw HypothesisViolation("split memberships exceed tolerance");
    return out;
}

}  // namespace weakconv
