#include "weakconv/space_modulus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakconv/rng.hpp"

namespace weakconv {

namespace {

constexpr double kPi = std::numbers::pi;

// Walks along the unit sphere from angle theta until the chord to the start
// point reaches eps.  Returns all crossing angles found on a coarse scan,
// refined by bisection.
std::vector<double> chord_crossings2(const PNormSpace& space, double theta, double eps,
                                     int scan = 64) {
    const Vec x = space.sphere_point2(theta);
    auto chord = [&](double phi) { return space.dist(space.sphere_point2(theta + phi), x); };
    std::vector<double> roots;
    double prev_phi = 0.0, prev_f = -eps;
    for (int i = 1; i <= scan; ++i) {
        const double phi = kPi * static_cast<double>(i) / scan;
        const double f = chord(phi) - eps;
        if (prev_f <= 0.0 && f >= 0.0) {
            double lo = prev_phi, hi = phi;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (chord(mid) - eps >= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_phi = phi;
        prev_f = f;
    }
    return roots;
}

// Midpoint slack 1 - ||(x + y)/2|| for the pair at (theta, first chord
// crossing).  Returns +inf when no pair at distance eps exists from theta.
double pair_value2(const PNormSpace& space, double theta, double eps) {
    auto roots = chord_crossings2(space, theta, eps);
    double best = std::numeric_limits<double>::infinity();
    const Vec x = space.sphere_point2(theta);
    for (double phi : roots) {
        const Vec y = space.sphere_point2(theta + phi);
        best = std::min(best, 1.0 - space.norm(midpoint(x, y)));
    }
    return best;
}

double estimate_dim2(const PNormSpace& space, double eps, int density) {
    const int n = std::max(64, density);
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * kPi * static_cast<double>(i) / n;
        const double v = pair_value2(space, theta, eps);
        if (v < best) {
            best = v;
            best_theta = theta;
        }
    }
    // Local refinement of the worst pair: golden-section on theta.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_theta - 2.0 * kPi / n, b = best_theta + 2.0 * kPi / n;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = pair_value2(space, c, eps), fd = pair_value2(space, d, eps);
    for (int it = 0; it < 48; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = pair_value2(space, c, eps);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = pair_value2(space, d, eps);
        }
    }
    best = std::min({best, fc, fd});
    return std::max(0.0, best);
}

// Higher dimensions: start points from seeded directions, partner found by
// bisection along great-circle style paths.
double estimate_dim_n(const PNormSpace& space, double eps, int density, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unit = [&]() {
        Vec v(static_cast<std::size_t>(space.dim));
        double n2;
        do {
            for (auto& vi : v) vi = gauss(rng);
            n2 = norm2(v);
        } while (n2 < 1e-12);
        return space.unit(v);
    };
    double best = std::numeric_limits<double>::infinity();
    const int trials = std::max(128, density);
    for (int t = 0; t < trials; ++t) {
        const Vec x = random_unit();
        Vec w = random_unit();
        auto path = [&](double s) { return space.unit(std::cos(s) * x + std::sin(s) * w); };
        auto chord = [&](double s) { return space.dist(path(s), x); };
        if (chord(kPi) < eps) continue;  // path never reaches distance eps
        double lo = 0.0, hi = kPi;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (chord(mid) >= eps)
                hi = mid;
            else
                lo = mid;
        }
        const Vec y = path(0.5 * (lo + hi));
        best = std::min(best, 1.0 - space.norm(midpoint(x, y)));
    }
    return std::max(0.0, best);
}

}  // namespace

double estimate_space_modulus(const PNormSpace& space, double eps, int density,
                              std::uint64_t seed) {
    if (eps < 0.0 || eps > 2.0) throw DomainError("space modulus argument outside [0, 2]");
    if (eps == 0.0) return 0.0;
    if (space.dim == 1) return eps / 2.0;  // interval geometry
    if (space.dim == 2) return estimate_dim2(space, eps, density);
    return estimate_dim_n(space, eps, density, seed);
}

double space_modulus_delta(const PNormSpace& space, double eps, int density) {
    if (eps < 0.0 || eps > 2.0) throw DomainError("space modulus argument outside [0, 2]");
    if (eps == 0.0) return 0.0;
    if (space.has_closed_form_modulus()) return hilbert_modulus(eps);
    return estimate_space_modulus(space, eps, density);
}

Report check_day_nordlander(const PNormSpace& space, const std::vector<double>& eps_grid,
                            double tol, int density) {
    Report rep;
    rep.name = "day_nordlander";
    rep.columns = {"eps", "delta_hat", "quarter_eps_sq", "pass"};
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < 2.0)) throw DomainError("grid point outside (0, 2)");
        const double dh = space_modulus_delta(space, eps, density);
        const double bound = eps * eps / 4.0;
        const bool ok = dh <= bound + tol;
        rep.pass = rep.pass && ok;
        rep.merge_margin(bound + tol - dh);
        rep.add_row({cell(eps), cell(dh), cell(bound), cell(ok)});
    }
    return rep;
}

Report check_ball_inclusion_lemma(const PNormSpace& space, const Vec& x, const Vec& y,
                                  double beta, int samples, double tol) {
    if (space.norm(x) > 1.0 + tol || space.norm(y) > 1.0 + tol)
        throw PreconditionError("both points must lie in the unit ball");
    if (!(beta > 0.0 && beta <= 0.5)) throw PreconditionError("beta must lie in (0, 1/2]");
    const double eps = space.dist(x, y);
    if (eps <= 0.0) throw PreconditionError("the two points must be distinct");

    const double radius = 2.0 * beta * space_modulus_delta(space, eps);
    const Vec center = (1.0 - beta) * x + beta * y;

    Report rep;
    rep.name = "ball_inclusion";
    rep.columns = {"sample", "norm", "margin", "pass"};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        Vec u;
        if (space.dim == 2) {
            u = space.sphere_point2(2.0 * std::numbers::pi * i / samples);
        } else {
            Rng rng = make_rng(20251, static_cast<std::uint64_t>(i));
            std::normal_distribution<double> gauss(0.0, 1.0);
            Vec v(static_cast<std::size_t>(space.dim));
            for (auto& vi : v) vi = gauss(rng);
            u = space.unit(v);
        }
        const Vec pt = center + radius * u;
        const double n = space.norm(pt);
        const double margin = 1.0 - n;
        worst = std::min(worst, margin);
        const bool ok = n <= 1.0 + tol;
        rep.pass = rep.pass && ok;
        if (i < 16 || !ok)
            rep.add_row({cell(static_cast<double>(i)), cell(n), cell(margin), cell(ok)});
    }
    rep.merge_margin(worst + tol);
    rep.note = "radius " + fmt_double(radius) + ", worst margin " + fmt_double(worst);
    return rep;
}

double slope_remainder(const PNormSpace& space, double eps) {
    return 0.25 * (eps / 2.0 - space_modulus_delta(space, eps));
}

Report check_slope_inequality(const PNormSpace& space, double eps, double eta, double tol) {
    if (!(0.0 < eps / 2.0 && eps / 2.0 < eta && eta < eps && eps < 2.0))
        throw PreconditionError("need 0 < eps/2 < eta < eps < 2");
    const double lhs = space_modulus_delta(space, eta) / eta;
    const double r = slope_remainder(space, eps);
    const double rhs = space_modulus_delta(space, eps) / eps -
                       2.0 * (eps - eta) / (eps * eta) * space_modulus_delta(space, r);
    Report rep;
    rep.name = "slope_inequality";
    rep.columns = {"eps", "eta", "lhs", "rhs", "r_eps", "pass"};
    const bool ok = lhs <= rhs + tol && r > 0.0;
    rep.pass = ok;
    rep.merge_margin(rhs + tol - lhs);
    rep.add_row({cell(eps), cell(eta), cell(lhs), cell(rhs), cell(r), cell(ok)});
    return rep;
}

}  // namespace weakconv
