#include "weakconv/moduli.hpp"

#include <algorithm>
#include <cmath>

#include "weakconv/rng.hpp"
#include "weakconv/space_modulus.hpp"

namespace weakconv {

namespace {

struct ParamPoint {
    int piece = -1;   // -1: free-floating sample point
    double t = 0.0;
    Vec point;
};

// Pool of boundary-parametrized points plus a few interior ones.
struct SamplePool {
    std::vector<BoundaryPiece> pieces;
    std::vector<Vec> loose;  // interior or unparametrized boundary points

    ParamPoint draw(const SetOracle&, Rng& rng, double boundary_bias) const {
        ParamPoint p;
        if (!pieces.empty() && (loose.empty() || uniform(rng, 0.0, 1.0) < boundary_bias)) {
            p.piece = uniform_int(rng, 0, static_cast<int>(pieces.size()) - 1);
            const auto& bp = pieces[static_cast<std::size_t>(p.piece)];
            p.t = uniform(rng, bp.t0, bp.t1);
            p.point = bp.at(p.t);
        } else if (!loose.empty()) {
            p.point = loose[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(loose.size()) - 1))];
        }
        return p;
    }

    Vec at(const ParamPoint& p) const {
        if (p.piece < 0) return p.point;
        return pieces[static_cast<std::size_t>(p.piece)].at(p.t);
    }
};

SamplePool make_pool(const SetOracle& a, std::uint64_t seed, bool with_interior) {
    SamplePool pool;
    pool.pieces = a.boundary_pieces();
    if (pool.pieces.empty()) pool.loose = a.boundary_samples(512);
    if (with_interior) {
        for (auto& p : a.interior_samples(32, seed)) pool.loose.push_back(std::move(p));
    }
    return pool;
}

double clamp_param(const BoundaryPiece& bp, double t) {
    if (bp.cyclic) {
        const double span = bp.t1 - bp.t0;
        double u = std::fmod(t - bp.t0, span);
        if (u < 0) u += span;
        return bp.t0 + u;
    }
    return std::clamp(t, bp.t0, bp.t1);
}

// Pattern search over the pair's boundary parameters.  The objective handles
// the pair constraint internally (returns -inf on violation).  Diagonal
// moves keep progress along binding pair constraints.
void refine_pair(const SamplePool& pool, ParamPoint& p1, ParamPoint& p2,
                 const std::function<double(const Vec&, const Vec&)>& objective, int iters) {
    if (p1.piece < 0 || p2.piece < 0) return;
    const auto& bp1 = pool.pieces[static_cast<std::size_t>(p1.piece)];
    const auto& bp2 = pool.pieces[static_cast<std::size_t>(p2.piece)];
    double val = objective(pool.at(p1), pool.at(p2));
    double h1 = (bp1.t1 - bp1.t0) / 64.0;
    double h2 = (bp2.t1 - bp2.t0) / 64.0;
    static constexpr double kMoves[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                            {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int it = 0; it < iters; ++it) {
        bool improved = false;
        for (const auto& mv : kMoves) {
            ParamPoint c1 = p1, c2 = p2;
            c1.t = clamp_param(bp1, p1.t + mv[0] * h1);
            c2.t = clamp_param(bp2, p2.t + mv[1] * h2);
            const double v = objective(pool.at(c1), pool.at(c2));
            if (v > val + 1e-16) {
                p1 = c1;
                p2 = c2;
                val = v;
                improved = true;
                break;
            }
        }
        if (!improved) {
            h1 *= 0.55;
            h2 *= 0.55;
            if (std::max(h1, h2) < 1e-13) break;
        }
    }
}

}  // namespace

void require_convex_sampled(const SetOracle& a, int samples, std::uint64_t seed, double tol) {
    auto pts = a.boundary_samples(samples);
    auto inner = a.interior_samples(samples / 4, seed);
    pts.insert(pts.end(), inner.begin(), inner.end());
    Rng rng = make_rng(seed);
    for (int i = 0; i < samples; ++i) {
        const Vec& x = pts[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(pts.size()) - 1))];
        const Vec& y = pts[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(pts.size()) - 1))];
        if (!a.contains(midpoint(x, y), tol))
            throw PreconditionError("midpoint test failed: set is not convex");
    }
}

double modulus_convexity(const SetOracle& a, double eps, const PairSweepOptions& opts) {
    require_convex_sampled(a);
    const double diam = sampled_diameter(a);
    if (eps >= diam + 1e-9)
        throw DomainError("eps must stay below the diameter of the set");
    if (eps <= 0.0) return 0.0;

    const PNormSpace& space = a.space();
    SamplePool pool = make_pool(a, opts.seed, false);
    if (pool.pieces.empty())
        throw PreconditionError("convexity modulus needs a boundary parametrization");

    // pairs at distance exactly eps: pick x1, solve the partner parameter
    // along a piece (bisection on the chord length)
    auto partner_on = [&](const Vec& x1, int piece2,
                          double u0) -> std::optional<ParamPoint> {
        const auto& bp = pool.pieces[static_cast<std::size_t>(piece2)];
        const double span = bp.t1 - bp.t0;
        auto pt = [&](double u) { return bp.at(clamp_param(bp, u)); };
        auto f = [&](double u) { return space.dist(pt(u), x1) - eps; };
        const int scan = 128;
        double prev_u = u0, prev_f = f(u0);
        for (int i = 1; i <= scan; ++i) {
            const double u = u0 + span * i / scan;
            const double fu = f(u);
            if ((prev_f < 0.0) != (fu < 0.0)) {
                double lo = prev_u, hi = u, flo = prev_f;
                for (int it = 0; it < 70; ++it) {
                    const double m = 0.5 * (lo + hi);
                    const double fm = f(m);
                    if ((flo < 0.0) == (fm < 0.0)) {
                        lo = m;
                        flo = fm;
                    } else {
                        hi = m;
                    }
                }
                ParamPoint p2;
                p2.piece = piece2;
                p2.t = clamp_param(bp, 0.5 * (lo + hi));
                p2.point = pt(p2.t);
                return p2;
            }
            prev_u = u;
            prev_f = fu;
        }
        return std::nullopt;
    };

    auto depth = [&](const Vec& x1, const Vec& x2) {
        const Vec mid = midpoint(x1, x2);
        if (!a.contains(mid, 1e-7)) return 0.0;
        return a.boundary_distance(mid);
    };

    Rng rng = make_rng(opts.seed);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<ParamPoint, ParamPoint>> top;
    for (int i = 0; i < opts.pairs; ++i) {
        ParamPoint p1 = pool.draw(a, rng, 1.0);
        if (p1.piece < 0) continue;
        const int piece2 = uniform_int(rng, 0, static_cast<int>(pool.pieces.size()) - 1);
        const auto& bp2 = pool.pieces[static_cast<std::size_t>(piece2)];
        auto p2 = partner_on(pool.at(p1), piece2,
                             bp2.t0 + uniform(rng, 0.0, 1.0) * (bp2.t1 - bp2.t0));
        if (!p2) continue;
        const double v = depth(pool.at(p1), pool.at(*p2));
        if (v < best) {
            best = v;
            top.emplace_back(p1, *p2);
            if (top.size() > static_cast<std::size_t>(opts.refine_top))
                top.erase(top.begin());
        }
    }
    if (!std::isfinite(best))
        throw DomainError("no admissible pairs at the requested distance");

    // refine the worst pairs; partner re-solved to hold the distance exact
    for (auto& [p1, p2] : top) {
        const auto& bp1 = pool.pieces[static_cast<std::size_t>(p1.piece)];
        const auto& bp2 = pool.pieces[static_cast<std::size_t>(p2.piece)];
        double h = (bp1.t1 - bp1.t0) / 64.0;
        double val = depth(pool.at(p1), pool.at(p2));
        for (int it = 0; it < opts.refine_iters; ++it) {
            bool improved = false;
            for (double sgn : {1.0, -1.0}) {
                ParamPoint cand = p1;
                cand.t = clamp_param(bp1, p1.t + sgn * h);
                cand.point = bp1.at(cand.t);
                auto pp = partner_on(pool.at(cand), p2.piece,
                                     p2.t - (bp2.t1 - bp2.t0) / 16.0);
                if (!pp) continue;
                const double v = depth(pool.at(cand), pool.at(*pp));
                if (v < val - 1e-16) {
                    p1 = cand;
                    p2 = *pp;
                    val = v;
                    improved = true;
                    break;
                }
            }
            if (!improved) {
                h *= 0.55;
                if (h < 1e-13) break;
            }
        }
        best = std::min(best, val);
    }
    return best;
}

double modulus_nonconvexity(const SetOracle& a, double eps, const PairSweepOptions& opts) {
    if (eps <= 0.0) return 0.0;
    const PNormSpace& space = a.space();
    SamplePool pool = make_pool(a, opts.seed, true);
    Rng rng = make_rng(opts.seed);

    auto objective = [&](const Vec& x1, const Vec& x2) {
        if (space.dist(x1, x2) > eps) return -1.0;
        if (!a.contains(x1, 1e-7) || !a.contains(x2, 1e-7)) return -1.0;
        return a.distance(midpoint(x1, x2));
    };

    double best = 0.0;
    std::vector<std::pair<ParamPoint, ParamPoint>> top;
    for (int i = 0; i < opts.pairs; ++i) {
        ParamPoint p1 = pool.draw(a, rng, opts.boundary_bias);
        ParamPoint p2 = pool.draw(a, rng, opts.boundary_bias);
        if (p1.point.empty() || p2.point.empty()) continue;
        const double v = objective(pool.at(p1), pool.at(p2));
        if (v > best) {
            best = v;
            top.emplace_back(p1, p2);
            if (top.size() > static_cast<std::size_t>(opts.refine_top))
                top.erase(top.begin());
        }
    }
    for (auto& [p1, p2] : top) {
        refine_pair(pool, p1, p2, objective, opts.refine_iters);
        best = std::max(best, objective(pool.at(p1), pool.at(p2)));
    }
    return best;
}

ModulusCurve gamma_curve(const SetOracle& a, const std::vector<double>& eps_grid,
                         const PairSweepOptions& opts) {
    std::vector<std::pair<double, double>> samples;
    for (double eps : eps_grid)
        if (eps > 0.0) samples.emplace_back(eps, modulus_nonconvexity(a, eps, opts));
    return ModulusCurve::from_samples(std::move(samples), /*monotonize=*/true);
}

WeakConvexityCertificate certify_weak_convexity(const OraclePtr& a, double d, int grid_points,
                                                const PairSweepOptions& opts) {
    const PNormSpace& space = a->space();
    const double diam = sampled_diameter(*a);
    const double hi = std::min(2.0 * d, diam);
    std::vector<double> grid;
    for (int i = 1; i <= grid_points; ++i)
        grid.push_back(hi * static_cast<double>(i) / (grid_points + 1));

    WeakConvexityCertificate cert;
    cert.d = d;
    cert.gamma = gamma_curve(*a, grid, opts);
    cert.gamma_fn = cert.gamma.as_function();
    cert.valid = true;
    std::vector<std::pair<double, double>> margin;
    for (double eps : grid) {
        const double g = cert.gamma.value(eps);
        const double m = d * space_modulus_delta(space, std::min(2.0, eps / d)) - g;
        margin.emplace_back(eps, std::max(0.0, m));
        if ((g >= eps / 2.0 || m <= 0.0) && cert.valid) {
            cert.valid = false;
            cert.first_failing_eps = eps;
        }
    }
    cert.dominance_margin = ModulusCurve::from_samples(std::move(margin), true);
    return cert;
}

WeakConvexityCertificate certificate_from_modulus(const PNormSpace& space,
                                                  std::function<double(double)> gamma,
                                                  double d, double working_hi,
                                                  int grid_points) {
    WeakConvexityCertificate cert;
    cert.d = d;
    if (working_hi <= 0.0) {
        // degenerate working range (singletons): vacuously valid
        cert.valid = true;
        cert.gamma_fn = std::move(gamma);
        return cert;
    }
    std::vector<double> grid;
    for (int i = 1; i <= grid_points; ++i)
        grid.push_back(working_hi * static_cast<double>(i) / (grid_points + 1));
    cert.gamma = ModulusCurve::from_function(gamma, grid, true);
    cert.gamma_fn = std::move(gamma);
    cert.valid = true;
    std::vector<std::pair<double, double>> margin;
    for (double eps : grid) {
        const double g = cert.gamma_fn(eps);
        const double m = d * space_modulus_delta(space, std::min(2.0, eps / d)) - g;
        margin.emplace_back(eps, std::max(0.0, m));
        if ((g >= eps / 2.0 || m <= 0.0) && cert.valid) {
            cert.valid = false;
            cert.first_failing_eps = eps;
        }
    }
    cert.dominance_margin = ModulusCurve::from_samples(std::move(margin), true);
    return cert;
}

double sigma_modulus(const OraclePtr& a, const OraclePtr& b, const OraclePtr& c, double eps,
                     const PairSweepOptions& opts) {
    const PNormSpace& space = a->space();
    for (const auto& body : {a, b, c})
        if (!body->convex_hint() || !body->bounded())
            throw PreconditionError("sigma modulus needs convex bounded bodies");
    const Vec origin = zero_vec(space.dim);
    for (const auto& body : {b, c})
        if (!body->contains(origin, 0.0) || body->boundary_distance(origin) <= kGeomTol)
            throw PreconditionError("gauge needs 0 in the interior of the body");
    if (!a->contains(origin, kGeomTol))
        throw PreconditionError("probe body must contain 0 for monotone dilation");

    auto gauge_b = [&](const Vec& v) { return minkowski_gauge(*b, v, 1e-10); };
    auto gauge_c = [&](const Vec& v) { return minkowski_gauge(*c, v, 1e-10); };

    // reach of the dilated probe from a midpoint: smallest sigma such that
    // sigma A + mid meets the complement of int C
    auto probe_dirs = a->boundary_samples(128);
    auto sigma_needed = [&](const Vec& mid) {
        auto psi = [&](double sigma) {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t i = 0; i < probe_dirs.size(); ++i) {
                const double v = gauge_c(mid + sigma * probe_dirs[i]);
                if (v > best) {
                    best = v;
                    arg = i;
                }
            }
            // golden polish over the probe boundary near the argmax
            auto pieces = a->boundary_pieces();
            if (!pieces.empty()) {
                const auto& bp = pieces[0];
                const double span = bp.t1 - bp.t0;
                const double t0 = bp.t0 + span * static_cast<double>(arg) /
                                              static_cast<double>(probe_dirs.size());
                const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
                double lo = t0 - span / 64.0, hi = t0 + span / 64.0;
                double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
                auto g = [&](double t) { return gauge_c(mid + sigma * bp.at(t)); };
                double f1 = g(x1), f2 = g(x2);
                for (int it = 0; it < 30; ++it) {
                    if (f1 > f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - gr * (hi - lo);
                        f1 = g(x1);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + gr * (hi - lo);
                        f2 = g(x2);
                    }
                }
                best = std::max({best, f1, f2});
            }
            return best;
        };
        if (psi(0.0) >= 1.0) return 0.0;
        double hi = 0.25;
        while (psi(hi) < 1.0 && hi < 64.0) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 60; ++it) {
            const double mid_s = 0.5 * (lo + hi);
            if (psi(mid_s) >= 1.0)
                hi = mid_s;
            else
                lo = mid_s;
        }
        return hi;
    };

    SamplePool pool;
    pool.pieces = c->boundary_pieces();
    if (pool.pieces.empty()) pool.loose = c->boundary_samples(512);

    auto objective = [&](const Vec& x, const Vec& y) {
        if (gauge_b(x - y) > eps) return -1.0;
        return sigma_needed(midpoint(x, y));
    };

    Rng rng = make_rng(opts.seed);
    double best = 0.0;
    std::vector<std::pair<ParamPoint, ParamPoint>> top;
    const int pairs = std::max(256, opts.pairs / 2);  // sigma evaluations are pricier
    for (int i = 0; i < pairs; ++i) {
        ParamPoint p1 = pool.draw(*c, rng, 1.0);
        ParamPoint p2 = pool.draw(*c, rng, 1.0);
        if (p1.point.empty() || p2.point.empty()) continue;
        const double v = objective(pool.at(p1), pool.at(p2));
        if (v > best) {
            best = v;
            top.emplace_back(p1, p2);
            if (top.size() > 4) top.erase(top.begin());
        }
    }
    for (auto& [p1, p2] : top) {
        refine_pair(pool, p1, p2, objective, 40);
        best = std::max(best, objective(pool.at(p1), pool.at(p2)));
    }
    return best;
}

Report check_cavern_bounds(const OraclePtr& body, const OraclePtr& clip, double r, double R,
                           const std::vector<double>& eps_grid, double tol,
                           const PairSweepOptions& opts) {
    const PNormSpace& space = body->space();
    // containment B_r(0) ⊂ body ⊂ B_R(0), verified on boundary samples
    for (const auto& s : body->boundary_samples(256)) {
        const double n = space.norm(s);
        if (n < r - 1e-7 || n > R + 1e-7)
            throw PreconditionError("body boundary escapes the [r, R] shell");
    }
    auto cavern = make_cavern(space, body, clip);
    auto unit = make_ball(space, zero_vec(space.dim), 1.0);

    Report rep;
    rep.name = "cavern_bounds";
    rep.columns = {"eps",       "gamma_hat", "lower_quad", "sigma_hat",
                   "banas_dual", "pass_lower", "pass_match", "pass_banas"};
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < 2.0 * r))
            throw PreconditionError("eps grid must stay inside (0, 2r)");
        const double g = modulus_nonconvexity(*cavern, eps, opts);
        const double lower = eps * eps * r / (8.0 * R * R);
        const double s = sigma_modulus(unit, unit, body, eps, opts);
        const double banas = hilbert_modulus(eps);
        const bool p1 = g >= lower - tol;
        const bool p2 = std::fabs(g - s) <= tol;
        const bool p3 = s >= banas - tol;
        rep.pass = rep.pass && p1 && p2 && p3;
        rep.merge_margin(std::min({g - lower + tol, tol - std::fabs(g - s), s - banas + tol}));
        rep.add_row({cell(eps), cell(g), cell(lower), cell(s), cell(banas), cell(p1), cell(p2),
                     cell(p3)});
    }
    return rep;
}

}  // namespace weakconv
