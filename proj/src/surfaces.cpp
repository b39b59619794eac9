#include "weakconv/surfaces.hpp"

#include <algorithm>
#include <cmath>

#include "weakconv/rng.hpp"

namespace weakconv {

SmoothCurve2D SmoothCurve2D::validated(Curve2D curve, double tol) {
    if (!curve.closed()) throw PreconditionError("smooth surface must be a closed curve");
    const double period = curve.period();
    // closure and nonvanishing speed on samples
    if (norm2(curve.at(0.0) - curve.at(period)) > tol)
        throw PreconditionError("curve endpoints fail to match");
    if (curve.kind() == Curve2D::Kind::Samples) {
        // sample lists must trace one curve: a jump far above the median
        // spacing means disconnected pieces were concatenated
        const auto& pts = curve.sample_points();
        std::vector<double> gaps;
        for (std::size_t i = 0; i < pts.size(); ++i)
            gaps.push_back(norm2(pts[(i + 1) % pts.size()] - pts[i]));
        std::vector<double> sorted = gaps;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        for (double g : gaps)
            if (g > 10.0 * median + tol)
                throw PreconditionError("sample list does not trace a single closed curve");
    }
    const bool analytic = curve.kind() != Curve2D::Kind::Samples;
    for (int i = 0; i < 256; ++i) {
        const double s = period * i / 256.0;
        const Vec d1 = curve.d1(s);
        if (norm2(d1) < 1e-9) throw PreconditionError("vanishing speed on the curve");
        if (analytic) {
            const double h = 1e-6 * period;
            const Vec fd = (0.5 / h) * (curve.at(s + h) - curve.at(s - h));
            if (norm2(fd - d1) > 1e-5)
                throw PreconditionError("derivative inconsistency on analytic curve");
        }
    }
    SmoothCurve2D out;
    out.curve = std::move(curve);
    return out;
}

double curvature_radius(const SmoothCurve2D& c, double s) {
    const Vec d1 = c.curve.d1(s);
    const Vec d2 = c.curve.d2(s);
    const double speed_sq = d1[0] * d1[0] + d1[1] * d1[1];
    const double denom = std::fabs(d2[0] * d1[1] - d2[1] * d1[0]);
    if (denom < 1e-12) return std::numeric_limits<double>::infinity();
    return std::pow(speed_sq, 1.5) / denom;
}

double min_curvature_radius(const SmoothCurve2D& c, int samples) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i)
        best = std::min(best, curvature_radius(c, c.curve.period() * i / samples));
    return best;
}

ModulusCurve estimate_alpha(const SmoothCurve2D& c, const std::vector<double>& t_grid,
                            int samples, int* warning_count) {
    const double period = c.curve.period();
    std::vector<Vec> pts(static_cast<std::size_t>(samples));
    std::vector<Vec> normals(static_cast<std::size_t>(samples));
    std::vector<char> valid(static_cast<std::size_t>(samples), 1);
    int warnings = 0;
    for (int i = 0; i < samples; ++i) {
        const double s = period * i / samples;
        pts[static_cast<std::size_t>(i)] = c.curve.at(s);
        try {
            normals[static_cast<std::size_t>(i)] = c.curve.outward_normal(s);
        } catch (const DomainError&) {
            valid[static_cast<std::size_t>(i)] = 0;
            ++warnings;
        }
    }
    if (warning_count) *warning_count = warnings;

    std::vector<double> grid = t_grid;
    std::sort(grid.begin(), grid.end());
    std::vector<double> worst(grid.size(), 0.0);
    for (int i = 0; i < samples; ++i) {
        if (!valid[static_cast<std::size_t>(i)]) continue;
        const Vec& x = pts[static_cast<std::size_t>(i)];
        const Vec& n = normals[static_cast<std::size_t>(i)];
        for (int j = 0; j < samples; ++j) {
            if (j == i) continue;
            const Vec& a = pts[static_cast<std::size_t>(j)];
            const double dist = norm2(x - a);
            if (dist < 1e-12 || dist > grid.back()) continue;
            // both the set side and the complement side of the normal
            const double defect = std::fabs(dot(n, x - a)) / dist;
            auto it = std::lower_bound(grid.begin(), grid.end(), dist);
            for (std::size_t g = static_cast<std::size_t>(it - grid.begin()); g < grid.size();
                 ++g)
                worst[g] = std::max(worst[g], defect);
        }
    }
    std::vector<std::pair<double, double>> curve_samples;
    for (std::size_t g = 0; g < grid.size(); ++g) curve_samples.emplace_back(grid[g], worst[g]);
    return ModulusCurve::from_samples(std::move(curve_samples), /*monotonize=*/true);
}

double epsilon0(const ModulusCurve& alpha) {
    auto combined = [&](double tau) { return alpha.value(tau) + alpha.value(tau / 2.0); };
    const double hi = alpha.domain_max();
    if (combined(hi * 1e-6) >= 0.5) return 0.0;
    const int scan = 4096;
    double last_ok = 0.0;
    for (int i = 1; i <= scan; ++i) {
        const double tau = hi * i / scan;
        if (combined(tau) >= 0.5) {
            double lo = last_ok, hi2 = tau;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi2);
                if (combined(mid) < 0.5)
                    lo = mid;
                else
                    hi2 = mid;
            }
            return lo;
        }
        last_ok = tau;
    }
    return hi;  // condition holds on the whole sampled domain
}

Report check_surface_gamma_bound(const SmoothCurve2D& c, const std::vector<double>& eps_grid,
                                 const SurfaceGammaOptions& opts) {
    const PNormSpace space = make_space(2, 2.0);
    auto boundary = make_curve_set(space, c.curve, CurveSide::Boundary);

    // admissible range (0, min(r, eps0))
    std::vector<double> alpha_grid = linspace(1e-3, 2.0 * boundary->bounding_radius(nullptr), 256);
    auto alpha = estimate_alpha(c, alpha_grid);
    const double e0 = epsilon0(alpha);
    double r = c.simplicity_radius;
    if (r <= 0.0) {
        // default probe over a dyadic candidate ladder
        std::vector<double> cands;
        for (double cand = 2.0 * boundary->bounding_radius(nullptr); cand > 1e-3; cand /= 1.4)
            cands.push_back(cand);
        r = simplicity_parameter_probe(c, cands);
    }
    const double admissible_hi = std::min(r, e0);

    const double r_min = min_curvature_radius(c);

    Report rep;
    rep.name = "surface_gamma_bound";
    rep.columns = {"eps", "gamma_hat", "upper", "lower", "pass"};
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < admissible_hi))
            throw DomainError("eps outside the admissible range (0, min(r, eps0))");
        const double g = modulus_nonconvexity(*boundary, eps, opts.sweep);
        const double upper = eps * (alpha.value(eps) + alpha.value(eps / 2.0));
        const double lower =
            eps / 2.0 < r_min ? r_min - std::sqrt(r_min * r_min - eps * eps / 4.0) : r_min;
        const bool ok = g <= upper + opts.tol && g >= lower - opts.tol;
        rep.pass = rep.pass && ok;
        rep.merge_margin(std::min(upper + opts.tol - g, g - lower + opts.tol));
        rep.add_row({cell(eps), cell(g), cell(upper), cell(lower), cell(ok)});
    }
    rep.note = "admissible range (0, " + fmt_double(admissible_hi) + ")";
    return rep;
}

double simplicity_parameter_probe(const SmoothCurve2D& c,
                                  const std::vector<double>& r_candidates, int x_samples,
                                  int param_samples) {
    const double period = c.curve.period();
    std::vector<Vec> dense(static_cast<std::size_t>(param_samples));
    for (int i = 0; i < param_samples; ++i)
        dense[static_cast<std::size_t>(i)] = c.curve.at(period * i / param_samples);

    auto single_arc_everywhere = [&](double r) {
        for (int i = 0; i < x_samples; ++i) {
            const Vec x = c.curve.at(period * i / x_samples);
            // cyclic runs of parameters within distance r of x
            int components = 0;
            bool all_in = true;
            bool prev_in = norm2(dense[static_cast<std::size_t>(param_samples - 1)] - x) < r;
            for (int j = 0; j < param_samples; ++j) {
                const bool in = norm2(dense[static_cast<std::size_t>(j)] - x) < r;
                if (in && !prev_in) ++components;
                all_in = all_in && in;
                prev_in = in;
            }
            // the local piece must be one proper arc, not the whole curve
            if (all_in || components > 1) return false;
        }
        return true;
    };

    std::vector<double> sorted = r_candidates;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    for (double r : sorted)
        if (single_arc_everywhere(r)) return r;
    return 0.0;
}

NormalFieldReport normal_field_continuity(const SmoothCurve2D& c, int pair_samples,
                                          double r_fraction) {
    const double period = c.curve.period();
    const double r = r_fraction * min_curvature_radius(c);

    NormalFieldReport out;
    out.report.name = "normal_field";
    out.report.columns = {"s", "side", "clearance", "pass"};

    const int n = std::max(64, pair_samples);
    std::vector<Vec> pts(static_cast<std::size_t>(n)), normals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double s = period * i / n;
        pts[static_cast<std::size_t>(i)] = c.curve.at(s);
        normals[static_cast<std::size_t>(i)] = c.curve.outward_normal(s);
    }

    const PNormSpace space = make_space(2, 2.0);
    auto curve_set = make_curve_set(space, c.curve, CurveSide::Boundary);
    for (int i = 0; i < n; ++i) {
        const double s = period * i / n;
        for (double side : {1.0, -1.0}) {
            const Vec center = pts[static_cast<std::size_t>(i)] +
                               (side * r) * normals[static_cast<std::size_t>(i)];
            // emptiness of the open ball: no curve point strictly inside
            const double clearance = curve_set->distance(center);
            const bool ok = clearance >= r - 1e-7;
            out.report.pass = out.report.pass && ok;
            out.report.merge_margin(clearance - r + 1e-7);
            if (!ok || i < 8)
                out.report.add_row({cell(s), cell(side), cell(clearance), cell(ok)});
        }
    }

    // empirical continuity of the unit normal against chord distance
    std::vector<std::pair<double, double>> env;
    for (int i = 0; i < n; ++i) {
        for (int off : {1, 2, 4, 8, 16, 32}) {
            const int j = (i + off) % n;
            const double chord =
                norm2(pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]);
            const double swing = norm2(normals[static_cast<std::size_t>(i)] -
                                       normals[static_cast<std::size_t>(j)]);
            if (chord > 1e-12) env.emplace_back(chord, swing);
        }
    }
    std::sort(env.begin(), env.end());
    std::vector<std::pair<double, double>> mono;
    for (auto& [chord, swing] : env) {
        if (!mono.empty() && std::fabs(mono.back().first - chord) < 1e-12)
            mono.back().second = std::max(mono.back().second, swing);
        else
            mono.emplace_back(chord, swing);
    }
    out.normal_modulus = ModulusCurve::from_samples(std::move(mono), /*monotonize=*/true);
    return out;
}

Report conjecture_probe(const SmoothCurve2D& c, const OraclePtr& clip,
                        const std::vector<double>& eps_grid, const PairSweepOptions& sweep) {
    const PNormSpace space = make_space(2, 2.0);
    auto region = make_curve_set(space, c.curve, CurveSide::Inside);
    auto complement =
        make_intersection(space, {make_curve_set(space, c.curve, CurveSide::Outside), clip});
    auto field = normal_field_continuity(c, 256);

    Report rep;
    rep.name = "conjecture_probe";
    rep.columns = {"eps", "gamma_inside_over_eps", "gamma_outside_over_eps", "normal_modulus"};
    for (double eps : eps_grid) {
        if (eps <= 0.0) continue;
        const double gi = modulus_nonconvexity(*region, eps, sweep);
        const double go = modulus_nonconvexity(*complement, eps, sweep);
        rep.add_row({cell(eps), cell(gi / eps), cell(go / eps),
                     cell(field.normal_modulus.value(eps))});
    }
    rep.note = "observational data; no assertion";
    return rep;
}

}  // namespace weakconv
