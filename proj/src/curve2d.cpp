#include "weakconv/curve2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weakconv {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

Curve2D Curve2D::circle(Vec center, double radius) {
    if (radius <= 0.0) throw DomainError("circle radius must be positive");
    Curve2D c;
    c.kind_ = Kind::Circle;
    c.closed_ = true;
    c.period_ = kTau;
    c.center_ = std::move(center);
    c.radius_ = radius;
    return c;
}

Curve2D Curve2D::arc(Vec center, double radius, double theta0, double theta1) {
    if (radius <= 0.0) throw DomainError("arc radius must be positive");
    if (!(theta1 > theta0)) throw DomainError("arc needs theta1 > theta0");
    if (theta1 - theta0 >= kTau) return circle(std::move(center), radius);
    Curve2D c;
    c.kind_ = Kind::Arc;
    c.closed_ = false;
    c.period_ = theta1 - theta0;
    c.center_ = std::move(center);
    c.radius_ = radius;
    c.theta0_ = theta0;
    c.theta1_ = theta1;
    return c;
}

Curve2D Curve2D::ellipse(Vec center, double a, double b, double rotation) {
    if (a <= 0.0 || b <= 0.0) throw DomainError("ellipse semi-axes must be positive");
    Curve2D c;
    c.kind_ = Kind::Ellipse;
    c.closed_ = true;
    c.period_ = kTau;
    c.center_ = std::move(center);
    c.a_ = a;
    c.b_ = b;
    c.rot_ = rotation;
    return c;
}

Curve2D Curve2D::from_samples(std::vector<Vec> points) {
    if (points.size() < 3) throw DomainError("sampled curve needs at least 3 points");
    // drop a duplicated closing point
    if (norm2(points.front() - points.back()) < 1e-12) points.pop_back();
    Curve2D c;
    c.kind_ = Kind::Samples;
    c.closed_ = true;
    c.period_ = static_cast<double>(points.size());
    c.pts_ = std::move(points);
    double area2 = 0.0;
    const auto& p = c.pts_;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % p.size()];
        area2 += u[0] * v[1] - v[0] * u[1];
    }
    c.orient_sign_ = area2 >= 0.0 ? 1.0 : -1.0;
    return c;
}

Vec Curve2D::at(double t) const {
    switch (kind_) {
        case Kind::Circle:
            return center_ + radius_ * Vec{std::cos(t), std::sin(t)};
        case Kind::Arc: {
            const double th = theta0_ + std::clamp(t, 0.0, period_);
            return center_ + radius_ * Vec{std::cos(th), std::sin(th)};
        }
        case Kind::Ellipse: {
            const Vec local{a_ * std::cos(t), b_ * std::sin(t)};
            return center_ + rotate(local, rot_);
        }
        case Kind::Samples: {
            // Catmull-Rom through the cyclic samples.
            const std::size_t n = pts_.size();
            double tt = std::fmod(t, period_);
            if (tt < 0.0) tt += period_;
            const std::size_t i1 = static_cast<std::size_t>(tt) % n;
            const double u = tt - std::floor(tt);
            const Vec& p0 = pts_[(i1 + n - 1) % n];
            const Vec& p1 = pts_[i1];
            const Vec& p2 = pts_[(i1 + 1) % n];
            const Vec& p3 = pts_[(i1 + 2) % n];
            const double u2 = u * u, u3 = u2 * u;
            Vec r(2, 0.0);
            for (int k = 0; k < 2; ++k) {
                r[k] = 0.5 * ((2.0 * p1[k]) + (-p0[k] + p2[k]) * u +
                              (2.0 * p0[k] - 5.0 * p1[k] + 4.0 * p2[k] - p3[k]) * u2 +
                              (-p0[k] + 3.0 * p1[k] - 3.0 * p2[k] + p3[k]) * u3);
            }
            return r;
        }
    }
    throw DomainError("unreachable curve kind");
}

Vec Curve2D::d1(double t) const {
    switch (kind_) {
        case Kind::Circle:
            return radius_ * Vec{-std::sin(t), std::cos(t)};
        case Kind::Arc: {
            const double th = theta0_ + std::clamp(t, 0.0, period_);
            return radius_ * Vec{-std::sin(th), std::cos(th)};
        }
        case Kind::Ellipse:
            return rotate(Vec{-a_ * std::sin(t), b_ * std::cos(t)}, rot_);
        case Kind::Samples: {
            const double h = 1e-5;
            return (0.5 / h) * (at(t + h) - at(t - h));
        }
    }
    throw DomainError("unreachable curve kind");
}

Vec Curve2D::d2(double t) const {
    switch (kind_) {
        case Kind::Circle:
            return radius_ * Vec{-std::cos(t), -std::sin(t)};
        case Kind::Arc: {
            const double th = theta0_ + std::clamp(t, 0.0, period_);
            return radius_ * Vec{-std::cos(th), -std::sin(th)};
        }
        case Kind::Ellipse:
            return rotate(Vec{-a_ * std::cos(t), -b_ * std::sin(t)}, rot_);
        case Kind::Samples: {
            const double h = 1e-4;
            return (1.0 / (h * h)) * (at(t + h) - 2.0 * at(t) + at(t - h));
        }
    }
    throw DomainError("unreachable curve kind");
}

double Curve2D::signed_area() const {
    switch (kind_) {
        case Kind::Circle:
        case Kind::Arc:
            return std::numbers::pi * radius_ * radius_;
        case Kind::Ellipse:
            return std::numbers::pi * a_ * b_;
        case Kind::Samples: {
            double area2 = 0.0;
            for (std::size_t i = 0; i < pts_.size(); ++i) {
                const auto& u = pts_[i];
                const auto& v = pts_[(i + 1) % pts_.size()];
                area2 += u[0] * v[1] - v[0] * u[1];
            }
            return 0.5 * area2;
        }
    }
    throw DomainError("unreachable curve kind");
}

Vec Curve2D::outward_normal(double t) const {
    const Vec tan = d1(t);
    const double n = norm2(tan);
    if (n < 1e-14) throw DomainError("vanishing tangent");
    // CCW parametrization: rotating the tangent by -90 degrees points out.
    Vec out{tan[1] / n, -tan[0] / n};
    if (kind_ == Kind::Samples && orient_sign_ < 0.0) out = -1.0 * out;
    return out;
}

Curve2D Curve2D::affine_image(const Vec& shift, double sign) const {
    Curve2D c = *this;
    switch (kind_) {
        case Kind::Circle:
            c.center_ = shift + sign * center_;
            return c;
        case Kind::Arc: {
            c.center_ = shift + sign * center_;
            if (sign < 0.0) {
                c.theta0_ = theta0_ + std::numbers::pi;
                c.theta1_ = theta1_ + std::numbers::pi;
            }
            return c;
        }
        case Kind::Ellipse:
            c.center_ = shift + sign * center_;
            // a point reflection maps the ellipse to itself up to center
            return c;
        case Kind::Samples:
            for (auto& p : c.pts_) p = shift + sign * p;
            return c;
    }
    throw DomainError("unreachable curve kind");
}

Curve2D Curve2D::rotated(double angle) const {
    Curve2D c = *this;
    switch (kind_) {
        case Kind::Circle:
            c.center_ = rotate(center_, angle);
            return c;
        case Kind::Arc:
            c.center_ = rotate(center_, angle);
            c.theta0_ = theta0_ + angle;
            c.theta1_ = theta1_ + angle;
            return c;
        case Kind::Ellipse:
            c.center_ = rotate(center_, angle);
            c.rot_ = rot_ + angle;
            return c;
        case Kind::Samples:
            for (auto& p : c.pts_) p = rotate(p, angle);
            return c;
    }
    throw DomainError("unreachable curve kind");
}

std::optional<Vec> Curve2D::exact_nearest2(const Vec& x) const {
    if (kind_ != Kind::Circle && kind_ != Kind::Arc) return std::nullopt;
    const Vec v = x - center_;
    const double r = norm2(v);
    if (r < 1e-14) return std::nullopt;  // every direction equidistant
    double ang = std::atan2(v[1], v[0]);
    if (kind_ == Kind::Circle) return center_ + (radius_ / r) * v;
    // clamp the angle into the arc range (cyclic)
    double rel = ang - theta0_;
    rel -= kTau * std::floor(rel / kTau);
    if (rel <= period_) return at(rel);
    // outside the angular window: nearer endpoint wins
    const Vec e0 = at(0.0), e1 = at(period_);
    return norm2(x - e0) <= norm2(x - e1) ? e0 : e1;
}

std::vector<double> Curve2D::nearest_params(const PNormSpace& space, const Vec& x, int scan,
                                            double value_window) const {
    const int n = std::max(16, scan);
    auto f = [&](double t) { return space.dist(at(t), x); };
    std::vector<double> ts(n + 1);
    std::vector<double> fv(n + 1);
    const double lo = 0.0, hi = period_;
    for (int i = 0; i <= n; ++i) {
        ts[i] = lo + (hi - lo) * static_cast<double>(i) / n;
        fv[i] = f(ts[i]);
    }
    auto is_min = [&](int i) {
        const int il = closed_ ? (i + n) % n : std::max(0, i - 1);
        const int ir = closed_ ? (i + 1) % n : std::min(n, i + 1);
        return fv[i] <= fv[il] && fv[i] <= fv[ir];
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<std::pair<double, double>> minima;  // (value, param)
    const int last = closed_ ? n - 1 : n;
    for (int i = 0; i <= last; ++i) {
        if (!is_min(i)) continue;
        double a = ts[i] - (hi - lo) / n, b = ts[i] + (hi - lo) / n;
        if (!closed_) {
            a = std::max(a, lo);
            b = std::min(b, hi);
        }
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = f(c), fd = f(d);
        for (int it = 0; it < 60; ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = f(d);
            }
        }
        const double tb = fc < fd ? c : d;
        minima.emplace_back(std::min(fc, fd), tb);
    }
    if (minima.empty()) minima.emplace_back(fv[0], ts[0]);
    const double best = std::min_element(minima.begin(), minima.end())->first;
    std::vector<double> out;
    for (auto& [v, t] : minima)
        if (v <= best + value_window) out.push_back(t);
    return out;
}

double Curve2D::distance(const PNormSpace& space, const Vec& x, int scan) const {
    if (space.p == 2.0) {
        if (auto np = exact_nearest2(x)) return norm2(x - *np);
        if ((kind_ == Kind::Circle || kind_ == Kind::Arc) && norm2(x - center_) < 1e-14)
            return radius_;
    }
    auto params = nearest_params(space, x, scan);
    double best = std::numeric_limits<double>::infinity();
    for (double t : params) best = std::min(best, space.dist(at(t), x));
    return best;
}

}  // namespace weakconv
