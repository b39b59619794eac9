#include "weakconv/projection.hpp"

#include <algorithm>
#include <cmath>

#include "weakconv/rng.hpp"
#include "weakconv/space_modulus.hpp"

namespace weakconv {

double TubeSpec::t_E(double s) const { return solve_condition_roots(problem, s).t_of_s; }

TubeSpec make_tube(const PNormSpace& space, WeakConvexityCertificate certificate,
                   int root_grid) {
    if (!certificate.valid)
        throw HypothesisViolation("tube requires a valid weak-convexity certificate");
    TubeSpec tube;
    tube.space = space;
    tube.d = certificate.d;
    tube.problem = ball_condition_problem(space, certificate.d, certificate.gamma_fn);
    tube.s0 = detect_s0(tube.problem);
    std::vector<double> s_grid;
    for (int i = 1; i <= root_grid; ++i)
        s_grid.push_back(tube.s0 * static_cast<double>(i) / (root_grid + 1));
    tube.roots = tabulate_t_of_s(tube.problem, s_grid);
    tube.certificate = std::move(certificate);
    return tube;
}

Vec project_in_tube(const SetOracle& a, const Vec& x, const TubeSpec& tube, double tol,
                    ProjectionInfo* info) {
    const double rho = a.distance(x);
    if (rho >= tube.d)
        throw TubeError("query point lies outside the working tube");
    auto cands = a.nearest_candidates(x, 16);
    if (cands.empty()) throw DomainError("no projection candidates");
    const PNormSpace& space = a.space();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) best = std::min(best, space.dist(c, x));
    std::vector<Vec> near;
    for (const auto& c : cands)
        if (space.dist(c, x) <= best + tol) near.push_back(c);
    double spread = 0.0;
    for (std::size_t i = 0; i < near.size(); ++i)
        for (std::size_t j = i + 1; j < near.size(); ++j)
            spread = std::max(spread, space.dist(near[i], near[j]));
    if (spread > 10.0 * tol)
        throw HypothesisViolation(
            "projection multiplicity detected: candidate spread " + fmt_double(spread));
    // deterministic tie-break: lexicographically smallest candidate
    Vec result = near.front();
    for (const auto& c : near)
        if (std::lexicographical_compare(c.begin(), c.end(), result.begin(), result.end()))
            result = c;
    if (info) {
        info->rho = rho;
        info->spread = spread;
        info->multiplicity = near.size() > 1 && spread > tol;
    }
    return result;
}

std::vector<Vec> enlarged_projection(const SetOracle& a, const Vec& x, double s,
                                     const TubeSpec& tube, int n) {
    if (s <= 0.0) throw DomainError("enlargement s must be positive");
    const double rho = a.distance(x);
    if (rho >= tube.d)
        throw TubeError("query point lies outside the working tube");
    const PNormSpace& space = a.space();
    std::vector<Vec> qualified;
    auto push_if = [&](const Vec& p) {
        if (space.dist(p, x) <= rho + s + 1e-12 && a.contains(p, 1e-7))
            qualified.push_back(p);
    };
    push_if(project_in_tube(a, x, tube));
    for (const auto& p : a.boundary_samples(4 * n)) push_if(p);
    for (const auto& p : a.interior_samples(n / 2, 97)) push_if(p);
    if (qualified.size() > static_cast<std::size_t>(n)) {
        std::vector<Vec> thinned;
        const double stride =
            static_cast<double>(qualified.size()) / static_cast<double>(n);
        for (int i = 0; i < n; ++i)
            thinned.push_back(qualified[static_cast<std::size_t>(i * stride)]);
        qualified = std::move(thinned);
    }
    return qualified;
}

Report check_projection_stability(const SetOracle& a, const TubeSpec& tube, int trials,
                                  std::uint64_t seed, double tol) {
    const PNormSpace& space = a.space();
    auto base = a.boundary_samples(512);
    Report rep;
    rep.name = "projection_stability";
    rep.columns = {"trial", "kind", "input", "output", "bound", "pass"};

    std::vector<double> log_in, log_out;
    int violations = 0;

    int tested = 0;
    for (int attempt = 0; tested < trials && attempt < 16 * trials; ++attempt) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(attempt));
        const Vec& anchor = base[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(base.size()) - 1))];
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vec dir(static_cast<std::size_t>(space.dim));
        for (auto& u : dir) u = gauss(rng);
        if (space.norm(dir) < 1e-12) continue;
        dir = space.unit(dir);
        const double rho = uniform(rng, 0.05, 0.9) * tube.d;
        const Vec x1 = anchor + rho * dir;
        if (a.distance(x1) >= tube.d) continue;

        // (b) displacement bound for a nearby second point
        const double s = std::pow(10.0, uniform(rng, -4.0, -1.3));
        Vec dir2(static_cast<std::size_t>(space.dim));
        for (auto& u : dir2) u = gauss(rng);
        if (space.norm(dir2) < 1e-12) continue;
        const Vec x2 = x1 + s * space.unit(dir2);
        if (a.distance(x2) >= tube.d) continue;
        const double input = space.dist(x1, x2);
        if (input >= tube.s0) continue;
        ++tested;
        const Vec p1 = project_in_tube(a, x1, tube);
        const Vec p2 = project_in_tube(a, x2, tube);
        const double moved = space.dist(p1, p2);
        const double bound = tube.t_E(input);
        const bool ok = moved <= bound + tol;
        if (!ok) ++violations;
        rep.pass = rep.pass && ok;
        rep.merge_margin(bound + tol - moved);
        if (tested <= 24 || !ok)
            rep.add_row({cell(static_cast<double>(tested)), cell(std::string("pair")),
                         cell(input), cell(moved), cell(bound), cell(ok)});
        if (moved > 1e-14 && input > 1e-14) {
            log_in.push_back(std::log(input));
            log_out.push_back(std::log(moved));
        }
    }
    rep.pass = rep.pass && tested >= trials;

    // (a) enlarged projection inclusion at fixed s values
    for (double s : {1e-3, 1e-2}) {
        Rng rng = make_rng(seed, 777111);
        const Vec& anchor = base[base.size() / 3];
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vec dir(static_cast<std::size_t>(space.dim));
        for (auto& u : dir) u = gauss(rng);
        dir = space.unit(dir);
        const Vec x = anchor + (0.4 * tube.d) * dir;
        if (a.distance(x) >= tube.d) continue;
        const Vec px = project_in_tube(a, x, tube);
        const double bound = tube.t_E(s);
        double worst = 0.0;
        for (const auto& q : enlarged_projection(a, x, s, tube))
            worst = std::max(worst, space.dist(q, px));
        const bool ok = worst <= bound + tol;
        rep.pass = rep.pass && ok;
        rep.merge_margin(bound + tol - worst);
        rep.add_row({cell(-1.0), cell(std::string("enlarged")), cell(s), cell(worst),
                     cell(bound), cell(ok)});
    }

    // (c) observed displacement growth and the root-curve growth
    if (log_in.size() >= 8) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(log_in.size());
        for (std::size_t i = 0; i < log_in.size(); ++i) {
            sx += log_in[i];
            sy += log_out[i];
            sxx += log_in[i] * log_in[i];
            sxy += log_in[i] * log_out[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const bool ok = slope >= 0.45;
        rep.pass = rep.pass && ok;
        rep.add_row({cell(-2.0), cell(std::string("displacement_slope")), cell(0.0),
                     cell(slope), cell(0.45), cell(ok)});
    }
    std::vector<double> s_vals;
    for (double s = 1e-4; s <= 1e-2 * 1.0000001; s *= std::sqrt(10.0))
        if (s < tube.s0) s_vals.push_back(s);
    if (s_vals.size() >= 3) {
        const double slope = log_log_slope(tube.problem, s_vals);
        const bool ok = slope >= 0.45 && slope <= 0.55;
        rep.pass = rep.pass && ok;
        rep.add_row({cell(-3.0), cell(std::string("root_curve_slope")), cell(0.0), cell(slope),
                     cell(0.5), cell(ok)});
    }
    rep.note = "tested pairs: " + fmt_double(tested) +
               ", violations: " + fmt_double(violations);
    return rep;
}

PathPolyline path_via_projection(const SetOracle& a, const Vec& x, const Vec& y,
                                 const TubeSpec& tube, int steps) {
    const PNormSpace& space = a.space();
    if (!a.contains(x, 1e-7) || !a.contains(y, 1e-7))
        throw PreconditionError("path endpoints must belong to the set");
    if (space.dist(x, y) >= 2.0 * tube.d)
        throw PreconditionError("endpoints farther apart than the tube allows");
    PathPolyline path;
    if (steps < 1 || space.dist(x, y) == 0.0) {
        path.points = {x};
        return path;
    }
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const Vec z = lerp(x, y, t);
        const double rho = a.distance(z);
        if (rho >= tube.d)
            throw TubeError("segment exits the tube at t = " + fmt_double(t));
        path.points.push_back(i == 0 ? x : (i == steps ? y : project_in_tube(a, z, tube)));
    }
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i)
        path.max_gap = std::max(path.max_gap, space.dist(path.points[i], path.points[i + 1]));
    for (const auto& p : path.points)
        path.max_set_violation = std::max(path.max_set_violation, a.distance(p));
    return path;
}

ChainReport connect_by_midpoint_iteration(const OraclePtr& a, const OraclePtr& b,
                                          std::function<double(double)> delta_b,
                                          std::function<double(double)> gamma_a, double d,
                                          const Vec& a0, const Vec& b0, int max_iters,
                                          double tol) {
    const PNormSpace& space = a->space();
    auto h = make_intersection(space, {a, b});
    if (!h->contains(a0, 1e-7) || !h->contains(b0, 1e-7))
        throw PreconditionError("chain endpoints must lie in the intersection");
    const double diam_b = sampled_diameter(*b);
    if (!(diam_b < d))
        throw HypothesisViolation("diam B must stay below d");
    for (int i = 1; i <= 16; ++i) {
        const double eps = diam_b * static_cast<double>(i) / 17.0;
        if (!(delta_b(eps) > gamma_a(eps)))
            throw HypothesisViolation("delta_B must dominate gamma_A on (0, diam B)");
    }

    ChainReport chain;
    Vec left = a0, right = b0;
    chain.left.push_back(left);
    chain.right.push_back(right);
    double l = space.dist(left, right);
    chain.gaps.push_back(l);
    for (int k = 1; k <= max_iters && l > tol; ++k) {
        const Vec m = midpoint(left, right);
        const double slack = 0.5 * l - gamma_a(l);
        const double alpha = std::min(1.0 / k, 0.5 * slack);
        const Vec w = h->nearest_point(m);
        const double wm = space.dist(w, m);
        if (wm > gamma_a(l) + alpha + 1e-9)
            throw HypothesisViolation("weak convexity violated at scale " + fmt_double(l));
        if (space.dist(w, left) <= space.dist(w, right))
            left = w;
        else
            right = w;
        const double l_next = space.dist(left, right);
        chain.left.push_back(left);
        chain.right.push_back(right);
        chain.gaps.push_back(l_next);
        chain.iterations = k;
        if (l_next >= l) break;  // no further progress at numerical scale
        l = l_next;
    }
    chain.converged = l <= tol;

    // late-stage contraction: geometric mean of the last ratios
    const std::size_t n = chain.gaps.size();
    if (n >= 3) {
        std::size_t start = n > 7 ? n - 7 : 1;
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t i = start; i + 1 < n; ++i) {
            if (chain.gaps[i] <= 0.0 || chain.gaps[i + 1] <= 0.0) continue;
            acc += std::log(chain.gaps[i + 1] / chain.gaps[i]);
            ++cnt;
        }
        chain.fitted_rate = cnt > 0 ? std::exp(acc / cnt) : 0.0;
    }
    return chain;
}

Retraction::Retraction(OraclePtr a, TubeSpec tube)
    : a_(std::move(a)), tube_(std::move(tube)) {
    hull_ = closed_convex_hull(a_);
    r_ = a_->bounding_radius(&center_);
    if (!(2.0 * r_ < tube_.d))
        throw HypothesisViolation("retraction needs the set inside a ball with 2r < d");
}

Vec Retraction::operator()(const Vec& x) const {
    const Vec y = hull_->nearest_point(x);
    return project_in_tube(*a_, y, tube_);
}

Vec retract(const OraclePtr& a, const Vec& x, const TubeSpec& tube) {
    return Retraction(a, tube)(x);
}

Report distance_gradient_probe(const SetOracle& a, const Vec& x, const TubeSpec& tube,
                               double h, double tol) {
    const PNormSpace& space = a.space();
    const double rho = a.distance(x);
    if (rho <= kGeomTol) throw PreconditionError("probe point must lie outside the set");
    if (rho >= tube.d) throw TubeError("probe point outside the tube");
    if (h > 0.05 * std::min(rho, tube.d - rho))
        throw PreconditionError("finite-difference step too large for the tube margin");

    Vec grad(static_cast<std::size_t>(space.dim));
    for (int i = 0; i < space.dim; ++i) {
        Vec xp = x, xm = x;
        xp[static_cast<std::size_t>(i)] += h;
        xm[static_cast<std::size_t>(i)] -= h;
        grad[static_cast<std::size_t>(i)] = (a.distance(xp) - a.distance(xm)) / (2.0 * h);
    }
    const double gnorm = space.dual_norm(grad);

    Report rep;
    rep.name = "distance_gradient";
    rep.columns = {"quantity", "value", "expected", "pass"};
    const bool norm_ok = std::fabs(gnorm - 1.0) <= tol;
    rep.pass = norm_ok;
    rep.merge_margin(tol - std::fabs(gnorm - 1.0));
    rep.add_row({cell(std::string("dual_norm")), cell(gnorm), cell(1.0), cell(norm_ok)});

    if (space.p == 2.0) {
        bool dir_ok = false;
        double agreement = 0.0;
        try {
            const Vec p = project_in_tube(a, x, tube);
            const Vec radial = space.unit(x - p);
            agreement = dot((1.0 / std::max(gnorm, 1e-15)) * grad, radial);
            dir_ok = agreement >= 1.0 - 10.0 * tol;
        } catch (const HypothesisViolation&) {
            dir_ok = false;  // non-unique projection; direction undefined
        }
        rep.pass = rep.pass && dir_ok;
        rep.add_row({cell(std::string("direction_agreement")), cell(agreement), cell(1.0),
                     cell(dir_ok)});
    }
    return rep;
}

}  // namespace weakconv
