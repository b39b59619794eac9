#pragma once

#include "weakconv/report.hpp"
#include "weakconv/set_oracle.hpp"

namespace weakconv {

inline double distance_to(const SetOracle& set, const Vec& x) { return set.distance(x); }

// Symmetric Hausdorff distance over boundary + interior samples; density
// doubles until the estimate moves by less than tol.
double hausdorff_distance(const SetOracle& a, const SetOracle& b, double tol = 1e-6,
                          int initial_density = 256, int max_density = 8192);

// Minkowski gauge inf{t > 0 : x in tB}; bisection on containment unless the
// body knows a closed form.
double minkowski_gauge(const SetOracle& body, const Vec& x, double tol = 1e-12);

double b_diameter(const SetOracle& body, const SetOracle& c, int pair_samples = 4096,
                  std::uint64_t seed = 1);

// Closed convex hull as an oracle.  Exact for balls, arcs (disk cap),
// ellipses, polytopes and point clouds in dimension 2; sampled-vertex hull
// otherwise.
OraclePtr closed_convex_hull(const OraclePtr& set, int density = 4096);

// Membership in the strongly convex segment of radius d: the maximum of
// ||x - a|| over admissible ball centers a must stay within d.
bool strongly_convex_segment_contains(const PNormSpace& space, double d, const Vec& x0,
                                      const Vec& x1, const Vec& x, int restarts = 64,
                                      std::uint64_t seed = 7, double tol = kGeomTol);

// Same test with the two extreme points excluded (an exclusion radius of tol
// around x0 and x1).
bool strongly_convex_segment_contains_open(const PNormSpace& space, double d, const Vec& x0,
                                           const Vec& x1, const Vec& x, double tol = kGeomTol);

Report vial_weakly_convex_check(const OraclePtr& set, double R, int pair_samples,
                                std::uint64_t seed = 11, double tol = kGeomTol);

}  // namespace weakconv
