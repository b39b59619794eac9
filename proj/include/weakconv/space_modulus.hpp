#pragma once

#include <cstdint>
#include <vector>

#include "weakconv/modulus_curve.hpp"
#include "weakconv/pnorm_space.hpp"
#include "weakconv/report.hpp"

namespace weakconv {

// Modulus of convexity of the unit ball: the largest ball that fits inside
// the unit ball around the midpoint of any two ball points at distance eps.
// Closed form for p = 2, sampled-pair estimate with local refinement
// otherwise.  Result lies in [0, eps/2].
double space_modulus_delta(const PNormSpace& space, double eps, int density = 10000);

// Sampled-pair estimate regardless of p (the closed form exists for p = 2;
// this is the estimator used to cross-check it).
double estimate_space_modulus(const PNormSpace& space, double eps, int density = 10000,
                              std::uint64_t seed = 1);

inline double hilbert_modulus(double eps) {
    return 1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / 4.0));
}

// delta_E(eps) <= eps^2 / 4 on a grid.
Report check_day_nordlander(const PNormSpace& space, const std::vector<double>& eps_grid,
                            double tol = kModulusTol, int density = 10000);

// Inclusion of the shrunk ball at a convex combination of two unit-ball
// points, verified by sampling the small ball's boundary.
Report check_ball_inclusion_lemma(const PNormSpace& space, const Vec& x, const Vec& y,
                                  double beta, int samples = 512, double tol = kGeomTol);

// r(eps) = (eps/2 - delta_E(eps)) / 4, positive on (0, 2).
double slope_remainder(const PNormSpace& space, double eps);

// delta_E(eta)/eta <= delta_E(eps)/eps - 2 (eps-eta)/(eps eta) delta_E(r(eps)).
Report check_slope_inequality(const PNormSpace& space, double eps, double eta,
                              double tol = kModulusTol);

}  // namespace weakconv
