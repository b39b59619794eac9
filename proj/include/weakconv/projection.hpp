#pragma once

#include "weakconv/condition_roots.hpp"
#include "weakconv/moduli.hpp"

namespace weakconv {

// Certified working tube of a weakly convex set: radius d, the certificate
// behind it, and the root curve t_E of the solvability condition with
// delta = d * delta_E(./d).
struct TubeSpec {
    PNormSpace space;
    double d = 0.0;
    WeakConvexityCertificate certificate;
    ConditionProblem problem;
    ModulusCurve roots;  // tabulated s -> t_E(s)
    double s0 = 0.0;

    double t_E(double s) const;  // solved on demand, exact to root tolerance
};

TubeSpec make_tube(const PNormSpace& space, WeakConvexityCertificate certificate,
                   int root_grid = 32);

struct ProjectionInfo {
    double rho = 0.0;          // distance to the set
    double spread = 0.0;       // spread of near-optimal candidates
    bool multiplicity = false; // ties within tolerance (still returned)
};

// Unique nearest point for x inside the tube.  Near-optimal candidates whose
// spread exceeds 10x the tolerance raise HypothesisViolation.
Vec project_in_tube(const SetOracle& a, const Vec& x, const TubeSpec& tube,
                    double tol = kGeomTol, ProjectionInfo* info = nullptr);

// Sample of the enlarged projection {a in A : ||x-a|| <= rho + s}.
std::vector<Vec> enlarged_projection(const SetOracle& a, const Vec& x, double s,
                                     const TubeSpec& tube, int n = 256);

Report check_projection_stability(const SetOracle& a, const TubeSpec& tube, int trials,
                                  std::uint64_t seed, double tol = 1e-6);

struct PathPolyline {
    std::vector<Vec> points;
    double max_gap = 0.0;
    double max_set_violation = 0.0;
};

PathPolyline path_via_projection(const SetOracle& a, const Vec& x, const Vec& y,
                                 const TubeSpec& tube, int steps);

struct ChainReport {
    std::vector<double> gaps;
    std::vector<Vec> left, right;
    double fitted_rate = 0.0;  // geometric late-stage contraction factor
    bool converged = false;
    int iterations = 0;
};

// Midpoint chain between two points of an intersection A ∩ B; B uniformly
// convex with modulus delta_b, A weakly convex with modulus gamma_a.
ChainReport connect_by_midpoint_iteration(const OraclePtr& a, const OraclePtr& b,
                                          std::function<double(double)> delta_b,
                                          std::function<double(double)> gamma_a, double d,
                                          const Vec& a0, const Vec& b0, int max_iters = 256,
                                          double tol = 1e-12);

// z(x): project onto the closed convex hull, then onto the set in the tube.
class Retraction {
public:
    Retraction(OraclePtr a, TubeSpec tube);
    Vec operator()(const Vec& x) const;
    const OraclePtr& hull() const { return hull_; }
    double enclosing_radius() const { return r_; }

private:
    OraclePtr a_;
    OraclePtr hull_;
    TubeSpec tube_;
    double r_ = 0.0;
    Vec center_;
};

Vec retract(const OraclePtr& a, const Vec& x, const TubeSpec& tube);

// Central finite-difference probe of the distance gradient on the tube.
Report distance_gradient_probe(const SetOracle& a, const Vec& x, const TubeSpec& tube,
                               double h, double tol = 1e-3);

}  // namespace weakconv
