#include "weakconv/condition_roots.hpp"

#include <algorithm>
#include <cmath>

#include "weakconv/space_modulus.hpp"

namespace weakconv {

namespace {

constexpr int kScanPoints = 1024;

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    // f(lo) < 0 <= f(hi) assumed; converges to the crossing of a
    // nondecreasing (possibly stepped) function.
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ConditionProblem make_condition_problem(const ModulusCurve& delta, const ModulusCurve& gamma) {
    return ConditionProblem{delta.as_function(), gamma.as_function(), delta.domain_max()};
}

ConditionProblem ball_condition_problem(const PNormSpace& space, double d,
                                        std::function<double(double)> gamma) {
    std::function<double(double)> delta;
    if (space.has_closed_form_modulus()) {
        delta = [d](double t) { return d * hilbert_modulus(std::clamp(t / d, 0.0, 2.0)); };
    } else {
        // Estimated moduli are expensive; tabulate once on a dense grid.
        auto est = [&](double e) { return estimate_space_modulus(space, e, 2048); };
        ModulusCurve curve = ModulusCurve::from_function(est, linspace(0.0, 2.0, 257), true);
        delta = [curve, d](double t) { return d * curve.value(std::clamp(t / d, 0.0, 2.0)); };
    }
    return ConditionProblem{delta, std::move(gamma), 2.0 * d};
}

// The search domain for t is [s, s + t_max]: t_max bounds the argument of
// delta, while gamma curves extend past their last sample by the cap value.
ConditionRoots solve_condition_roots(const ConditionProblem& prob, double s, double tol) {
    if (s < 0.0) throw DomainError("condition parameter s must be nonnegative");
    if (s == 0.0) return ConditionRoots{0.0, 0.0, 0.0, true};
    if (s > prob.t_max)
        throw ConditionNotSatisfied("s outside the solvable range", detect_s0(prob, 1e-9));

    const double t_hi = s + prob.t_max;
    auto g = [&](double t) { return prob.delta(t - s) - prob.gamma(t); };

    // Zero crossing: last nonpositive value before g turns positive.
    const double h = prob.t_max / kScanPoints;
    double t_s = s;
    bool crossed = false;
    double prev_t = s, prev_g = g(s);
    for (int i = 1; i <= kScanPoints; ++i) {
        const double t = s + h * i;
        const double gt = g(t);
        if (!crossed && prev_g <= 0.0 && gt > 0.0) {
            t_s = bisect([&](double u) { return g(u); }, prev_t, t, tol);
            crossed = true;
            break;
        }
        prev_t = t;
        prev_g = gt;
    }
    if (!crossed) {
        if (prev_g > 0.0) {
            t_s = s;  // g positive immediately past s
        } else {
            throw ConditionNotSatisfied("delta(t-s) - gamma(t) never becomes positive",
                                        detect_s0(prob, 1e-9));
        }
    }

    // Verify the increasing branch past t_s by sampled differences.
    bool increasing = true;
    double prev = g(t_s);
    const int probes = 64;
    for (int i = 1; i <= probes; ++i) {
        const double t = t_s + (t_hi - t_s) * static_cast<double>(i) / probes;
        const double gt = g(t);
        if (gt < prev - 1e-12) {
            increasing = false;
            break;
        }
        prev = gt;
    }

    // Level-s/2 crossing on the branch.
    auto level = [&](double t) { return g(t) - s / 2.0; };
    if (level(t_hi) < 0.0)
        throw ConditionNotSatisfied("level s/2 unreachable on the working domain",
                                    detect_s0(prob, 1e-9));
    double lo = t_s;
    if (level(lo) >= 0.0) {
        // already above the level at the zero crossing; the root is at t_s
        return ConditionRoots{s, t_s, t_s, increasing};
    }
    double hi = t_hi;
    // tighten the bracket with a coarse scan so bisection starts close
    for (int i = 1; i <= 64; ++i) {
        const double t = t_s + (t_hi - t_s) * static_cast<double>(i) / 64;
        if (level(t) >= 0.0) {
            hi = t;
            break;
        }
        lo = t;
    }
    const double t_of_s = bisect(level, lo, hi, tol);
    return ConditionRoots{s, t_s, t_of_s, increasing};
}

double detect_s0(const ConditionProblem& prob, double tol) {
    auto solvable = [&](double s) {
        if (s <= 0.0) return true;
        if (s > prob.t_max) return false;
        auto g = [&](double t) { return prob.delta(t - s) - prob.gamma(t); };
        // needs a positive stretch reaching level s/2
        double best = -1.0;
        for (int i = 1; i <= 256; ++i) {
            const double t = s + prob.t_max * static_cast<double>(i) / 256;
            best = std::max(best, g(t));
        }
        return best >= s / 2.0;
    };
    double lo = 0.0, hi = prob.t_max;
    if (solvable(hi)) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (solvable(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

ModulusCurve tabulate_t_of_s(const ConditionProblem& prob, const std::vector<double>& s_grid) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(s_grid.size());
    for (double s : s_grid)
        samples.emplace_back(s, solve_condition_roots(prob, s).t_of_s);
    return ModulusCurve::from_samples(std::move(samples), /*monotonize=*/true);
}

double log_log_slope(const ConditionProblem& prob, const std::vector<double>& s_values) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double s : s_values) {
        if (s <= 0.0) continue;
        const double t = solve_condition_roots(prob, s).t_of_s;
        if (t <= 0.0) continue;
        const double x = std::log(s), y = std::log(t);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw DomainError("need at least two positive samples for the slope");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace weakconv
