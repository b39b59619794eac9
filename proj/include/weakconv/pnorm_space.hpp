#pragma once

#include "weakconv/common.hpp"
#include "weakconv/vec.hpp"

namespace weakconv {

// Finite-dimensional real space with the p-norm, p in (1, inf).  p = 1 and
// p = inf are rejected: they are not uniformly convex and the whole toolkit
// relies on a positive space modulus.
struct PNormSpace {
    int dim = 2;
    double p = 2.0;

    bool has_closed_form_modulus() const { return p == 2.0; }

    double norm(const Vec& x) const;
    double dist(const Vec& a, const Vec& b) const { return norm(a - b); }

    // Dual exponent q with 1/p + 1/q = 1.
    double dual_exponent() const { return p / (p - 1.0); }
    double dual_norm(const Vec& x) const;

    Vec unit(const Vec& x) const;

    // Point of the unit sphere in direction angle theta (dim == 2 only).
    Vec sphere_point2(double theta) const;
};

PNormSpace make_space(int dim, double p);

}  // namespace weakconv
