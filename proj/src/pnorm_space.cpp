#include "weakconv/pnorm_space.hpp"

#include <cmath>

namespace weakconv {

double PNormSpace::norm(const Vec& x) const {
    if (p == 2.0) return norm2(x);
    double s = 0.0;
    for (double xi : x) s += std::pow(std::fabs(xi), p);
    return std::pow(s, 1.0 / p);
}

double PNormSpace::dual_norm(const Vec& x) const {
    const double q = dual_exponent();
    if (q == 2.0) return norm2(x);
    double s = 0.0;
    for (double xi : x) s += std::pow(std::fabs(xi), q);
    return std::pow(s, 1.0 / q);
}

Vec PNormSpace::unit(const Vec& x) const {
    const double n = norm(x);
    if (n == 0.0) throw DomainError("cannot normalize the zero vector");
    return (1.0 / n) * x;
}

Vec PNormSpace::sphere_point2(double theta) const {
    if (dim != 2) throw DomainError("sphere_point2 requires dim == 2");
    return unit(Vec{std::cos(theta), std::sin(theta)});
}

PNormSpace make_space(int dim, double p) {
    if (dim < 1) throw DomainError("space dimension must be positive");
    if (!(p > 1.0) || !std::isfinite(p))
        throw DomainError("norm exponent must lie in (1, inf)");
    return PNormSpace{dim, p};
}

}  // namespace weakconv
