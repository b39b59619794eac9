#include "weakconv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakconv/rng.hpp"

namespace weakconv {

namespace {

double golden_max(const std::function<double(double)>& f, double a, double b, int iters = 60) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

// sup over sampled points of `from` of distance to `to`, with a parameter
// refinement pass over the argmax boundary piece.  Pieces are raw boundary
// patches of the pieces' owners, so membership in `from` is re-checked.
double directed_hausdorff(const SetOracle& from, const SetOracle& to, int density) {
    double best = 0.0;
    for (const auto& p : from.boundary_samples(density))
        best = std::max(best, to.distance(p));
    for (const auto& p : from.interior_samples(density / 4, 1234))
        best = std::max(best, to.distance(p));
    for (const auto& piece : from.boundary_pieces()) {
        const int n = std::max(32, density / 4);
        const double span = piece.t1 - piece.t0;
        double arg = piece.t0, val = -1.0;
        bool found = false;
        for (int i = 0; i <= n; ++i) {
            const double t = piece.t0 + span * i / n;
            const Vec p = piece.at(t);
            if (!from.contains(p, 1e-7)) continue;
            const double v = to.distance(p);
            if (v > val) {
                val = v;
                arg = t;
                found = true;
            }
        }
        if (!found) continue;
        auto f = [&](double t) {
            const Vec p = piece.at(t);
            return from.contains(p, 1e-7) ? to.distance(p) : -1.0;
        };
        best = std::max(best, golden_max(f, arg - span / n, arg + span / n));
    }
    return best;
}

}  // namespace

double hausdorff_distance(const SetOracle& a, const SetOracle& b, double tol,
                          int initial_density, int max_density) {
    if (!a.bounded() || !b.bounded())
        throw DomainError("Hausdorff distance needs bounded sets");
    double prev = -1.0;
    double cur = 0.0;
    for (int density = initial_density; density <= max_density; density *= 2) {
        cur = std::max(directed_hausdorff(a, b, density), directed_hausdorff(b, a, density));
        if (prev >= 0.0 && std::fabs(cur - prev) < tol) break;
        prev = cur;
    }
    return cur;
}

double minkowski_gauge(const SetOracle& body, const Vec& x, double tol) {
    if (!body.convex_hint())
        throw PreconditionError("gauge needs a convex body");
    if (auto g = body.gauge_at_origin(x)) return *g;
    const Vec origin = zero_vec(body.space().dim);
    if (!body.contains(origin, 0.0) || body.boundary_distance(origin) <= kGeomTol)
        throw PreconditionError("gauge needs 0 in the interior of the body");
    const double nx = body.space().norm(x);
    if (nx < 1e-15) return 0.0;
    // x in tB is monotone in t since 0 lies in the interior of the body
    auto inside = [&](double t) { return body.contains((1.0 / t) * x, 1e-12); };
    double hi = 1.0;
    while (!inside(hi)) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 120 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid > 0.0 && inside(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double b_diameter(const SetOracle& body, const SetOracle& c, int pair_samples,
                  std::uint64_t seed) {
    auto pts = c.boundary_samples(std::max(16, static_cast<int>(std::sqrt(pair_samples)) * 2));
    auto inner = c.interior_samples(8, seed);
    pts.insert(pts.end(), inner.begin(), inner.end());
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, minkowski_gauge(body, pts[i] - pts[j], 1e-9));
    return best;
}

OraclePtr closed_convex_hull(const OraclePtr& set, int density) {
    const PNormSpace& sp = set->space();
    if (set->convex_hint()) return set;
    if (const Curve2D* c = curve_of(*set)) {
        if (sp.p == 2.0 &&
            (c->kind() == Curve2D::Kind::Circle || c->kind() == Curve2D::Kind::Arc)) {
            // hull of a circular arc: disk cut by the chord through the
            // endpoints (the full disk when the arc closes)
            const double span = c->kind() == Curve2D::Kind::Circle ? 2.0 * std::numbers::pi
                                                                   : c->period();
            const double mid_angle = c->kind() == Curve2D::Kind::Circle
                                         ? 0.0
                                         : c->theta0() + span / 2.0;
            if (c->kind() == Curve2D::Kind::Circle)
                return make_ball(sp, c->center(), c->radius());
            const Vec u{std::cos(mid_angle), std::sin(mid_angle)};
            const double offset = -(c->radius() * std::cos(span / 2.0) + dot(u, c->center()));
            return make_intersection(
                sp, {make_ball(sp, c->center(), c->radius()),
                     make_halfplane(sp, -1.0 * u, offset)});
        }
        if (c->kind() == Curve2D::Kind::Ellipse)
            return make_curve_set(sp, *c, CurveSide::Inside);
    }
    if (!set->bounded()) throw DomainError("cannot hull an unbounded set");
    if (sp.dim == 2) {
        auto pts = set->boundary_samples(density);
        auto inner = set->interior_samples(density / 8, 4321);
        pts.insert(pts.end(), inner.begin(), inner.end());
        return make_polytope(sp, std::move(pts));
    }
    return make_polytope(sp, set->boundary_samples(density));
}

namespace {

// Largest ||x - a|| over the admissible center set K = B_d(x0) ∩ B_d(x1).
double max_center_distance(const PNormSpace& space, double d, const Vec& x0, const Vec& x1,
                           const Vec& x, int restarts, std::uint64_t seed) {
    auto in_k = [&](const Vec& a) {
        return space.dist(a, x0) <= d + 1e-12 && space.dist(a, x1) <= d + 1e-12;
    };
    const Vec mid = midpoint(x0, x1);
    double best = space.dist(x, mid);

    // boundary sweep: the maximum of a convex function sits on the boundary
    auto k_oracle = make_intersection(space, {make_ball(space, x0, d), make_ball(space, x1, d)});
    for (const auto& p : k_oracle->boundary_samples(256))
        best = std::max(best, space.dist(x, p));
    for (const auto& piece : k_oracle->boundary_pieces()) {
        const int n = 128;
        const double span = piece.t1 - piece.t0;
        for (int i = 0; i < n; ++i) {
            const double t = piece.t0 + span * i / n;
            if (!in_k(piece.at(t))) continue;
            auto f = [&](double u) {
                const Vec p = piece.at(u);
                return in_k(p) ? space.dist(x, p) : -1.0;
            };
            best = std::max(best, golden_max(f, t - span / n, t + span / n, 40));
        }
    }

    // projected pattern search from random feasible starts
    Rng rng = make_rng(seed);
    for (int r = 0; r < restarts; ++r) {
        Vec a = mid;
        for (auto& ai : a) ai += uniform(rng, -d, d);
        for (int rounds = 0; rounds < 64 && !in_k(a); ++rounds) {
            // alternating radial clamps onto the two balls
            if (space.dist(a, x0) > d) a = x0 + d * space.unit(a - x0);
            if (space.dist(a, x1) > d) a = x1 + d * space.unit(a - x1);
        }
        if (!in_k(a)) continue;
        double step = d / 4.0;
        double val = space.dist(x, a);
        while (step > 1e-11) {
            bool improved = false;
            for (int dim = 0; dim < space.dim && !improved; ++dim) {
                for (double sgn : {1.0, -1.0}) {
                    Vec cand = a;
                    cand[dim] += sgn * step;
                    for (int rounds = 0; rounds < 32 && !in_k(cand); ++rounds) {
                        if (space.dist(cand, x0) > d) cand = x0 + d * space.unit(cand - x0);
                        if (space.dist(cand, x1) > d) cand = x1 + d * space.unit(cand - x1);
                    }
                    if (!in_k(cand)) continue;
                    const double v = space.dist(x, cand);
                    if (v > val + 1e-15) {
                        a = cand;
                        val = v;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::max(best, val);
    }
    return best;
}

}  // namespace

bool strongly_convex_segment_contains(const PNormSpace& space, double d, const Vec& x0,
                                      const Vec& x1, const Vec& x, int restarts,
                                      std::uint64_t seed, double tol) {
    if (space.dist(x0, x1) > 2.0 * d + tol)
        throw PreconditionError("endpoints farther apart than 2d");
    if (space.dist(x, x0) <= tol || space.dist(x, x1) <= tol) return true;  // endpoints belong
    const double mx = max_center_distance(space, d, x0, x1, x, restarts, seed);
    return mx <= d + tol;
}

bool strongly_convex_segment_contains_open(const PNormSpace& space, double d, const Vec& x0,
                                           const Vec& x1, const Vec& x, double tol) {
    if (space.dist(x, x0) <= tol || space.dist(x, x1) <= tol) return false;
    return strongly_convex_segment_contains(space, d, x0, x1, x, 64, 7, tol);
}

Report vial_weakly_convex_check(const OraclePtr& set, double R, int pair_samples,
                                std::uint64_t seed, double tol) {
    if (R <= 0.0) throw PreconditionError("Vial constant must be positive");
    const PNormSpace& space = set->space();
    auto pts = set->boundary_samples(128);
    auto inner = set->interior_samples(16, seed);
    pts.insert(pts.end(), inner.begin(), inner.end());

    Report rep;
    rep.name = "vial_weak_convexity";
    rep.columns = {"pair", "dist", "admissible", "witness_found", "witness_gap", "pass"};
    Rng rng = make_rng(seed);
    int admissible = 0, inadmissible = 0;
    for (int i = 0; i < pair_samples; ++i) {
        const Vec& x0 = pts[uniform_int(rng, 0, static_cast<int>(pts.size()) - 1)];
        const Vec& x1 = pts[uniform_int(rng, 0, static_cast<int>(pts.size()) - 1)];
        const double dist = space.dist(x0, x1);
        if (dist <= tol || dist >= 2.0 * R) {
            ++inadmissible;
            continue;
        }
        ++admissible;
        const Vec mid = midpoint(x0, x1);
        bool found = false;
        double gap = std::numeric_limits<double>::infinity();
        for (const auto& w : set->nearest_candidates(mid, 8)) {
            if (space.dist(w, x0) <= tol || space.dist(w, x1) <= tol) continue;
            if (strongly_convex_segment_contains(space, R, x0, x1, w, 16,
                                                 mix_seed(seed, i), tol)) {
                found = true;
                gap = space.dist(w, mid);
                break;
            }
        }
        rep.pass = rep.pass && found;
        if (!found || i < 32)
            rep.add_row({cell(static_cast<double>(i)), cell(dist), cell(true), cell(found),
                         cell(gap), cell(found)});
    }
    rep.note = "admissible pairs: " + fmt_double(admissible) +
               ", outside 2R window: " + fmt_double(inadmissible);
    if (admissible == 0) rep.note = "no admissible pairs; " + rep.note;
    return rep;
}

}  // namespace weakconv
