#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "weakconv/curve2d.hpp"
#include "weakconv/pnorm_space.hpp"

namespace weakconv {

// A 1-parameter patch of a set's boundary.  Pair sweeps and constrained
// nearest-point searches run over these.
struct BoundaryPiece {
    double t0 = 0.0, t1 = 1.0;
    bool cyclic = false;
    std::function<Vec(double)> at;
};

// Compact set exposed through membership, distance and boundary sampling.
// Oracles are immutable after construction and safely shareable.
class SetOracle {
public:
    explicit SetOracle(PNormSpace space) : space_(space) {}
    virtual ~SetOracle() = default;

    const PNormSpace& space() const { return space_; }

    virtual bool contains(const Vec& x, double tol = kGeomTol) const = 0;
    virtual double distance(const Vec& x) const = 0;

    // At least n points, each within tol of the boundary; deterministic.
    virtual std::vector<Vec> boundary_samples(int n) const = 0;
    virtual std::vector<BoundaryPiece> boundary_pieces() const { return {}; }

    // Best candidates for the nearest set point, sorted by distance.  More
    // than one candidate near the optimal value signals multiplicity.
    virtual std::vector<Vec> nearest_candidates(const Vec& x, int k = 8) const;
    Vec nearest_point(const Vec& x) const;

    // Distance from x to the boundary of the set.
    virtual double boundary_distance(const Vec& x) const;

    virtual bool bounded() const { return true; }
    virtual double bounding_radius(Vec* center = nullptr) const = 0;
    virtual bool convex_hint() const { return false; }

    // Minkowski gauge when a closed form is known (bodies centered at 0).
    virtual std::optional<double> gauge_at_origin(const Vec&) const { return std::nullopt; }

    virtual std::vector<Vec> interior_samples(int n, std::uint64_t seed) const;

protected:
    PNormSpace space_;
};

using OraclePtr = std::shared_ptr<const SetOracle>;

enum class CurveSide { Boundary, Inside, Outside };

OraclePtr make_ball(const PNormSpace& space, Vec center, double radius);
OraclePtr make_polytope(const PNormSpace& space, std::vector<Vec> vertices);
OraclePtr make_point_cloud(const PNormSpace& space, std::vector<Vec> points);
OraclePtr make_curve_set(const PNormSpace& space, const Curve2D& curve,
                         CurveSide side = CurveSide::Boundary);
// cl(complement of body) intersected with clip; body must be convex.
OraclePtr make_cavern(const PNormSpace& space, OraclePtr body, OraclePtr clip);
OraclePtr make_union(const PNormSpace& space, std::vector<OraclePtr> parts);
OraclePtr make_intersection(const PNormSpace& space, std::vector<OraclePtr> parts);
OraclePtr make_minkowski_sum(const PNormSpace& space, OraclePtr a, OraclePtr b);
// {x : <normal, x> <= offset}; unbounded, meant as an intersection part.
OraclePtr make_halfplane(const PNormSpace& space, Vec normal, double offset);

// Image of a set under x -> shift + sign * x (sign = +-1), exact for the
// concrete variants, generic wrapper otherwise.
OraclePtr affine_image(const OraclePtr& a, const Vec& shift, double sign);
inline OraclePtr reflect_translate(const OraclePtr& a, const Vec& c) {
    return affine_image(a, c, -1.0);
}

// Structure views used for specializations (hulls, exact projections).
struct BallView {
    Vec center;
    double radius;
};
std::optional<BallView> ball_view(const SetOracle& s);
const Curve2D* curve_of(const SetOracle& s);
CurveSide curve_side_of(const SetOracle& s);
const std::vector<Vec>* polytope_vertices(const SetOracle& s);
const std::vector<OraclePtr>* combinator_parts(const SetOracle& s);

// Nearest points on feasible stretches of boundary pieces; includes the
// stretch endpoints (corner candidates).
struct PieceCandidate {
    Vec point;
    double dist;
};
std::vector<PieceCandidate> search_pieces_nearest(
    const PNormSpace& space, const std::vector<BoundaryPiece>& pieces,
    const std::function<bool(const Vec&)>& feasible, const Vec& x, int scan = 512);

// Estimated diameter from boundary samples with pairwise refinement.
double sampled_diameter(const SetOracle& s, int samples = 256);

Vec any_point(const SetOracle& s);

}  // namespace weakconv
