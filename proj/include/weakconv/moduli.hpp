#pragma once

#include "weakconv/metrics.hpp"
#include "weakconv/modulus_curve.hpp"
#include "weakconv/report.hpp"
#include "weakconv/set_oracle.hpp"

namespace weakconv {

struct PairSweepOptions {
    int pairs = 10000;
    int refine_top = 6;
    int refine_iters = 70;
    double boundary_bias = 0.9;
    std::uint64_t seed = 1;
};

// Modulus of convexity of a convex set: the worst-case inscribed radius at
// midpoints of pairs at distance exactly eps.
double modulus_convexity(const SetOracle& a, double eps, const PairSweepOptions& opts = {});

// Modulus of nonconvexity: the worst-case distance from the midpoint back to
// the set over pairs at distance at most eps.
double modulus_nonconvexity(const SetOracle& a, double eps, const PairSweepOptions& opts = {});

ModulusCurve gamma_curve(const SetOracle& a, const std::vector<double>& eps_grid,
                         const PairSweepOptions& opts = {});

// Sampled midpoint convexity test; throws PreconditionError when it fails.
void require_convex_sampled(const SetOracle& a, int samples = 128, std::uint64_t seed = 3,
                            double tol = 1e-7);

struct WeakConvexityCertificate {
    ModulusCurve gamma;
    double d = 0.0;
    ModulusCurve dominance_margin;  // eps -> d delta_E(eps/d) - gamma(eps)
    bool valid = false;
    double first_failing_eps = 0.0;
    // Evaluable form of gamma used by downstream solvers (closed form for
    // analytic testbeds, the sampled curve otherwise).
    std::function<double(double)> gamma_fn;
};

WeakConvexityCertificate certify_weak_convexity(const OraclePtr& a, double d,
                                                int grid_points = 16,
                                                const PairSweepOptions& opts = {});

// Certificate from a known modulus (no estimation).
WeakConvexityCertificate certificate_from_modulus(const PNormSpace& space,
                                                  std::function<double(double)> gamma,
                                                  double d, double working_hi,
                                                  int grid_points = 64);

// sigma modulus: worst-case dilation of the probe body A that is needed to
// reach the complement of int C from midpoints of boundary pairs of C whose
// gap is at most eps in the B-gauge.
double sigma_modulus(const OraclePtr& a, const OraclePtr& b, const OraclePtr& c, double eps,
                     const PairSweepOptions& opts = {});

// Cavern checks: quadratic lower bound, the sigma route, and the sharp
// two-dimensional lower estimate.
Report check_cavern_bounds(const OraclePtr& body, const OraclePtr& clip, double r, double R,
                           const std::vector<double>& eps_grid, double tol = 2e-3,
                           const PairSweepOptions& opts = {});

}  // namespace weakconv
