#pragma once

#include <optional>
#include <vector>

#include "weakconv/pnorm_space.hpp"

namespace weakconv {

// Parametric planar curve.  Analytic kinds carry exact derivatives; sampled
// closed curves use Catmull-Rom tangents.  The parameter lives in
// [0, period()), cyclic for closed curves.
class Curve2D {
public:
    enum class Kind { Circle, Arc, Ellipse, Samples };

    static Curve2D circle(Vec center, double radius);
    static Curve2D arc(Vec center, double radius, double theta0, double theta1);
    static Curve2D ellipse(Vec center, double a, double b, double rotation = 0.0);
    static Curve2D from_samples(std::vector<Vec> points);  // closed polyline-spline

    Kind kind() const { return kind_; }
    bool closed() const { return closed_; }
    double period() const { return period_; }
    double param_lo() const { return 0.0; }
    double param_hi() const { return period_; }

    Vec at(double t) const;
    Vec d1(double t) const;
    Vec d2(double t) const;

    // Unit outward Euclidean normal; orientation fixed by the signed area of
    // the curve (only meaningful for closed curves; arcs use the circle's).
    Vec outward_normal(double t) const;
    double signed_area() const;

    // Accessors for the analytic kinds.
    const Vec& center() const { return center_; }
    double radius() const { return radius_; }
    double semi_a() const { return a_; }
    double semi_b() const { return b_; }
    double rotation() const { return rot_; }
    double theta0() const { return theta0_; }
    double theta1() const { return theta1_; }
    const std::vector<Vec>& sample_points() const { return pts_; }

    // Image of the curve under x -> shift + sign * x (sign is +-1).  Stays in
    // the same analytic family.
    Curve2D affine_image(const Vec& shift, double sign) const;
    Curve2D rotated(double angle) const;  // about the origin, analytic kinds

    // Nearest parameter(s) to x in the given norm: dense scan over the
    // parameter, local minima refined by golden section.  Near-optimal minima
    // (within value_window of the best) are all returned.
    std::vector<double> nearest_params(const PNormSpace& space, const Vec& x,
                                       int scan = 4096, double value_window = 1e-7) const;
    double distance(const PNormSpace& space, const Vec& x, int scan = 4096) const;

    // p = 2 closed forms where available (circle / arc); nullopt otherwise.
    std::optional<Vec> exact_nearest2(const Vec& x) const;

private:
    Kind kind_ = Kind::Circle;
    bool closed_ = true;
    double period_ = 0.0;
    Vec center_{0.0, 0.0};
    double radius_ = 1.0;
    double a_ = 1.0, b_ = 1.0, rot_ = 0.0;
    double theta0_ = 0.0, theta1_ = 0.0;
    double orient_sign_ = 1.0;  // +1 when the parametrization runs counterclockwise
    std::vector<Vec> pts_;
};

}  // namespace weakconv
