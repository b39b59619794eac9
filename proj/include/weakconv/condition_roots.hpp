#pragma once

#include <functional>

#include "weakconv/modulus_curve.hpp"
#include "weakconv/pnorm_space.hpp"

namespace weakconv {

struct ConditionRoots {
    double s = 0.0;
    double t_s = 0.0;     // zero crossing of delta(t - s) - gamma(t), t_s >= s
    double t_of_s = 0.0;  // level-s/2 crossing on the verified increasing branch
    bool branch_verified = false;
};

// The pair of moduli entering the solvability condition.  delta is the
// modulus of convexity of some convex set, gamma the modulus of nonconvexity
// of some weakly convex set; t_max bounds the working domain for t.
struct ConditionProblem {
    std::function<double(double)> delta;
    std::function<double(double)> gamma;
    double t_max = 2.0;
};

ConditionProblem make_condition_problem(const ModulusCurve& delta, const ModulusCurve& gamma);

// delta(t) = d * delta_E(t / d) for the radius-d ball of the space.
ConditionProblem ball_condition_problem(const PNormSpace& space, double d,
                                        std::function<double(double)> gamma);

// Solves delta(t - s) - gamma(t) = 0 and = s/2 by bisection.  Throws
// ConditionNotSatisfied (carrying the diagnosed s0) when no admissible
// crossing exists for this s.
ConditionRoots solve_condition_roots(const ConditionProblem& prob, double s,
                                     double tol = kRootTol);

// Largest s for which solve_condition_roots succeeds, found by scan plus
// bisection over [0, t_max].
double detect_s0(const ConditionProblem& prob, double tol = 1e-9);

ModulusCurve tabulate_t_of_s(const ConditionProblem& prob, const std::vector<double>& s_grid);

// Least-squares slope of log t(s) against log s over the given s values.
double log_log_slope(const ConditionProblem& prob, const std::vector<double>& s_values);

}  // namespace weakconv
