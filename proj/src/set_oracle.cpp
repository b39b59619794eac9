#include "weakconv/set_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakconv/rng.hpp"

namespace weakconv {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kDedupeTol = 1e-10;

std::vector<Vec> dedupe_points(std::vector<std::pair<double, Vec>> scored, int k) {
    std::stable_sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Vec> out;
    for (auto& [d, p] : scored) {
        bool dup = false;
        for (const auto& q : out)
            if (norm2(p - q) < kDedupeTol) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
        if (static_cast<int>(out.size()) >= k) break;
    }
    return out;
}

// Deterministic unit directions (Euclidean) for dim >= 3 sampling.
std::vector<Vec> seeded_directions(int dim, int n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> dirs;
    dirs.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(dirs.size()) < n) {
        Vec v(static_cast<std::size_t>(dim));
        for (auto& vi : v) vi = gauss(rng);
        const double nn = norm2(v);
        if (nn > 1e-9) dirs.push_back((1.0 / nn) * v);
    }
    return dirs;
}

double golden_min(const std::function<double(double)>& f, double a, double b, int iters = 60) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters; ++it) {
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
    return fc < fd ? c : d;
}

}  // namespace

// ---------------------------------------------------------------------------
// base defaults

Vec SetOracle::nearest_point(const Vec& x) const {
    auto c = nearest_candidates(x, 1);
    if (c.empty()) throw DomainError("empty set has no nearest point");
    return c.front();
}

std::vector<Vec> SetOracle::nearest_candidates(const Vec& x, int k) const {
    if (contains(x, kGeomTol)) return {x};
    auto pieces = boundary_pieces();
    if (!pieces.empty()) {
        auto cands = search_pieces_nearest(space_, pieces, [](const Vec&) { return true; }, x);
        std::vector<std::pair<double, Vec>> scored;
        for (auto& c : cands) scored.emplace_back(c.dist, c.point);
        return dedupe_points(std::move(scored), k);
    }
    std::vector<std::pair<double, Vec>> scored;
    for (auto& s : boundary_samples(512)) scored.emplace_back(space_.dist(s, x), s);
    return dedupe_points(std::move(scored), k);
}

double SetOracle::boundary_distance(const Vec& x) const {
    auto pieces = boundary_pieces();
    double best = std::numeric_limits<double>::infinity();
    if (!pieces.empty()) {
        auto cands = search_pieces_nearest(space_, pieces, [](const Vec&) { return true; }, x);
        for (auto& c : cands) best = std::min(best, c.dist);
        return best;
    }
    for (auto& s : boundary_samples(512)) best = std::min(best, space_.dist(s, x));
    return best;
}

std::vector<Vec> SetOracle::interior_samples(int n, std::uint64_t seed) const {
    Vec center;
    const double r = bounding_radius(&center);
    Rng rng = make_rng(seed);
    std::vector<Vec> out;
    const int max_attempts = 200 * std::max(1, n);
    for (int a = 0; a < max_attempts && static_cast<int>(out.size()) < n; ++a) {
        Vec x = center;
        for (auto& xi : x) xi += uniform(rng, -r, r);
        if (contains(x, kGeomTol)) out.push_back(x);
    }
    return out;
}

std::vector<PieceCandidate> search_pieces_nearest(
    const PNormSpace& space, const std::vector<BoundaryPiece>& pieces,
    const std::function<bool(const Vec&)>& feasible, const Vec& x, int scan) {
    std::vector<PieceCandidate> out;
    for (const auto& piece : pieces) {
        const int n = std::max(8, scan);
        const double span = piece.t1 - piece.t0;
        const int grid = piece.cyclic ? n : n + 1;
        std::vector<double> ts(grid), dist(grid);
        std::vector<char> ok(grid);
        for (int i = 0; i < grid; ++i) {
            ts[i] = piece.t0 + span * static_cast<double>(i) / n;
            const Vec p = piece.at(ts[i]);
            ok[i] = feasible(p) ? 1 : 0;
            dist[i] = space.dist(p, x);
        }
        auto idx = [&](int i) { return piece.cyclic ? ((i % n + n) % n) : std::clamp(i, 0, grid - 1); };
        auto f = [&](double t) { return space.dist(piece.at(t), x); };
        // value comparisons bottom out at sqrt(eps) near a smooth minimum;
        // a few difference-quotient Newton steps restore point accuracy
        auto newton_polish = [&](double t, double lo, double hi) {
            const double h = std::max(1e-7 * span, 1e-12);
            for (int it = 0; it < 3; ++it) {
                const double f1 = f(t + h), f0 = f(t), fm = f(t - h);
                const double g1 = (f1 - fm) / (2.0 * h);
                const double g2 = (f1 - 2.0 * f0 + fm) / (h * h);
                if (!(g2 > 1e-12)) break;
                const double tn = std::clamp(t - g1 / g2, lo, hi);
                if (std::fabs(tn - t) > 4.0 * span / n) break;
                t = tn;
            }
            return t;
        };
        for (int i = 0; i < grid; ++i) {
            if (!ok[i]) continue;
            const int il = idx(i - 1), ir = idx(i + 1);
            const bool lmin = (!ok[il] || dist[i] <= dist[il]) && (!ok[ir] || dist[i] <= dist[ir]);
            if (!lmin) continue;
            double a = ts[i] - span / n, b = ts[i] + span / n;
            if (!piece.cyclic) {
                a = std::max(a, piece.t0);
                b = std::min(b, piece.t1);
            }
            double t = golden_min(f, a, b);
            t = newton_polish(t, a, b);
            const Vec p = piece.at(t);
            if (feasible(p) && space.dist(p, x) <= dist[i])
                out.push_back({p, space.dist(p, x)});
            else
                out.push_back({piece.at(ts[i]), dist[i]});
        }
        // feasibility flips: bisect to the window edge, keep the feasible side
        for (int i = 0; i < (piece.cyclic ? n : grid - 1); ++i) {
            const int j = idx(i + 1);
            if (ok[i] == ok[j]) continue;
            double lo = ts[i], hi = ts[i] + span / n;
            const bool lo_ok = ok[i];
            for (int it = 0; it < 50; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (feasible(piece.at(mid)) == lo_ok)
                    lo = mid;
                else
                    hi = mid;
            }
            const double t = lo_ok ? lo : hi;
            const Vec p = piece.at(t);
            if (feasible(p)) out.push_back({p, space.dist(p, x)});
        }
    }
    std::stable_sort(out.begin(), out.end(),
              [](const PieceCandidate& a, const PieceCandidate& b) { return a.dist < b.dist; });
    return out;
}

double sampled_diameter(const SetOracle& s, int samples) {
    auto pts = s.boundary_samples(samples);
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, s.space().dist(pts[i], pts[j]));
    return best;
}

Vec any_point(const SetOracle& s) {
    auto b = s.boundary_samples(1);
    if (b.empty()) throw DomainError("set produced no sample points");
    return b.front();
}

// ---------------------------------------------------------------------------
// ball

class BallOracle final : public SetOracle {
public:
    BallOracle(const PNormSpace& space, Vec center, double radius)
        : SetOracle(space), c_(std::move(center)), r_(radius) {
        if (radius <= 0.0) throw DomainError("ball radius must be positive");
    }

    bool contains(const Vec& x, double tol) const override {
        return space_.dist(x, c_) <= r_ + tol;
    }
    double distance(const Vec& x) const override {
        return std::max(0.0, space_.dist(x, c_) - r_);
    }
    double boundary_distance(const Vec& x) const override {
        return std::fabs(space_.dist(x, c_) - r_);
    }
    std::vector<Vec> boundary_samples(int n) const override {
        std::vector<Vec> out;
        out.reserve(static_cast<std::size_t>(n));
        if (space_.dim == 2) {
            for (int i = 0; i < n; ++i)
                out.push_back(c_ + r_ * space_.sphere_point2(kTau * i / n));
        } else {
            for (auto& u : seeded_directions(space_.dim, n, 13))
                out.push_back(c_ + r_ * space_.unit(u));
        }
        return out;
    }
    std::vector<BoundaryPiece> boundary_pieces() const override {
        if (space_.dim != 2) return {};
        BoundaryPiece p;
        p.t0 = 0.0;
        p.t1 = kTau;
        p.cyclic = true;
        p.at = [sp = space_, c = c_, r = r_](double t) { return c + r * sp.sphere_point2(t); };
        return {p};
    }
    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        if (contains(x, kGeomTol)) return {x};
        const Vec v = x - c_;
        if (space_.norm(v) < 1e-14) {
            // center of the ball: every boundary direction ties
            return boundary_samples(std::max(2, k));
        }
        return {c_ + r_ * space_.unit(v)};
    }
    double bounding_radius(Vec* center) const override {
        if (center) *center = c_;
        return r_;
    }
    bool convex_hint() const override { return true; }
    std::optional<double> gauge_at_origin(const Vec& x) const override {
        if (space_.norm(c_) > 1e-14) return std::nullopt;
        return space_.norm(x) / r_;
    }
    std::vector<Vec> interior_samples(int n, std::uint64_t seed) const override {
        Rng rng = make_rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<Vec> out;
        while (static_cast<int>(out.size()) < n) {
            Vec v(static_cast<std::size_t>(space_.dim));
            for (auto& vi : v) vi = gauss(rng);
            if (norm2(v) < 1e-12) continue;
            const double rho = r_ * std::pow(uniform(rng, 0.0, 1.0), 1.0 / space_.dim);
            out.push_back(c_ + rho * space_.unit(v));
        }
        return out;
    }

    Vec c_;
    double r_;
};

OraclePtr make_ball(const PNormSpace& space, Vec center, double radius) {
    if (static_cast<int>(center.size()) != space.dim)
        throw DomainError("ball center dimension mismatch");
    return std::make_shared<BallOracle>(space, std::move(center), radius);
}

// ---------------------------------------------------------------------------
// polytope

namespace {

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

std::vector<Vec> convex_hull2(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec& a, const Vec& b) { return norm2(a - b) < kDedupeTol; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Vec> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double segment_distance(const PNormSpace& space, const Vec& a, const Vec& b, const Vec& x,
                        Vec* nearest = nullptr) {
    if (space.p == 2.0) {
        const Vec ab = b - a;
        const double len2 = dot(ab, ab);
        double t = len2 > 0.0 ? std::clamp(dot(x - a, ab) / len2, 0.0, 1.0) : 0.0;
        const Vec p = lerp(a, b, t);
        if (nearest) *nearest = p;
        return norm2(x - p);
    }
    auto f = [&](double t) { return space.dist(lerp(a, b, t), x); };
    const double t = golden_min(f, 0.0, 1.0);
    const Vec p = lerp(a, b, t);
    if (nearest) *nearest = p;
    return space.dist(p, x);
}

}  // namespace

class PolytopeOracle final : public SetOracle {
public:
    PolytopeOracle(const PNormSpace& space, std::vector<Vec> vertices)
        : SetOracle(space), input_(vertices) {
        if (vertices.empty()) throw DomainError("polytope needs at least one vertex");
        if (space.dim == 2) {
            hull_ = convex_hull2(std::move(vertices));
        } else {
            hull_ = std::move(vertices);
        }
        Vec c = zero_vec(space_.dim);
        for (const auto& v : hull_) c += v;
        centroid_ = (1.0 / static_cast<double>(hull_.size())) * c;
        radius_ = 0.0;
        for (const auto& v : hull_) radius_ = std::max(radius_, space_.dist(v, centroid_));
    }

    bool contains(const Vec& x, double tol) const override {
        if (space_.dim == 2) {
            const std::size_t n = hull_.size();
            if (n == 1) return space_.dist(x, hull_[0]) <= tol;
            if (n == 2) return segment_distance(space_, hull_[0], hull_[1], x) <= tol;
            for (std::size_t i = 0; i < n; ++i) {
                const Vec& a = hull_[i];
                const Vec& b = hull_[(i + 1) % n];
                const Vec e = b - a;
                const double el = norm2(e);
                if (el < 1e-15) continue;
                if (cross2(e, x - a) / el < -tol) return false;
            }
            return true;
        }
        return distance(x) <= tol;
    }

    std::size_t edge_count() const {
        const std::size_t n = hull_.size();
        return n <= 1 ? 0 : (n == 2 ? 1 : n);
    }

    double distance(const Vec& x) const override {
        if (space_.dim == 2) {
            if (contains(x, 0.0)) return 0.0;
            if (hull_.size() == 1) return space_.dist(x, hull_[0]);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < edge_count(); ++i)
                best = std::min(best, segment_distance(space_, hull_[i],
                                                       hull_[(i + 1) % hull_.size()], x));
            return best;
        }
        return frank_wolfe_distance(x, nullptr);
    }

    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        if (contains(x, kGeomTol)) return {x};
        if (space_.dim == 2) {
            if (hull_.size() == 1) return {hull_[0]};
            std::vector<std::pair<double, Vec>> scored;
            for (std::size_t i = 0; i < edge_count(); ++i) {
                Vec p;
                const double d =
                    segment_distance(space_, hull_[i], hull_[(i + 1) % hull_.size()], x, &p);
                scored.emplace_back(d, p);
            }
            return dedupe_points(std::move(scored), k);
        }
        Vec p;
        frank_wolfe_distance(x, &p);
        return {p};
    }

    double boundary_distance(const Vec& x) const override {
        if (space_.dim == 2) {
            if (hull_.size() == 1) return space_.dist(x, hull_[0]);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < edge_count(); ++i)
                best = std::min(best, segment_distance(space_, hull_[i],
                                                       hull_[(i + 1) % hull_.size()], x));
            return best;
        }
        return distance(x);
    }

    std::vector<Vec> boundary_samples(int n) const override {
        const std::size_t m = hull_.size();
        if (m == 1) return std::vector<Vec>(static_cast<std::size_t>(std::max(1, n)), hull_[0]);
        if (space_.dim > 2) {
            // support points in seeded directions
            std::vector<Vec> out;
            for (auto& u : seeded_directions(space_.dim, n, 17)) {
                double best = -std::numeric_limits<double>::infinity();
                Vec bp = hull_[0];
                for (const auto& v : hull_) {
                    const double s = dot(u, v);
                    if (s > best) {
                        best = s;
                        bp = v;
                    }
                }
                out.push_back(bp);
            }
            return out;
        }
        const std::size_t edges = m == 2 ? 1 : m;
        const int per = std::max(1, n / static_cast<int>(edges));
        std::vector<Vec> out;
        for (std::size_t i = 0; i < edges; ++i) {
            const Vec& a = hull_[i];
            const Vec& b = hull_[(i + 1) % m];
            for (int j = 0; j < per; ++j)
                out.push_back(lerp(a, b, static_cast<double>(j) / per));
        }
        return out;
    }

    std::vector<BoundaryPiece> boundary_pieces() const override {
        if (space_.dim != 2) return {};
        std::vector<BoundaryPiece> pieces;
        const std::size_t m = hull_.size();
        if (m < 2) return pieces;
        const std::size_t edges = m == 2 ? 1 : m;
        for (std::size_t i = 0; i < edges; ++i) {
            BoundaryPiece p;
            p.t0 = 0.0;
            p.t1 = 1.0;
            p.cyclic = false;
            p.at = [a = hull_[i], b = hull_[(i + 1) % m]](double t) { return lerp(a, b, t); };
            pieces.push_back(std::move(p));
        }
        return pieces;
    }

    double bounding_radius(Vec* center) const override {
        if (center) *center = centroid_;
        return radius_;
    }
    bool convex_hint() const override { return true; }

    const std::vector<Vec>& hull() const { return hull_; }

private:
    // Nearest point in conv(hull_) for p = 2; pairwise-distance surrogate
    // otherwise.  Classic Frank-Wolfe with away steps on the simplex.
    double frank_wolfe_distance(const Vec& x, Vec* nearest) const {
        const std::size_t m = hull_.size();
        std::vector<double> lambda(m, 0.0);
        std::size_t best0 = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double d = norm2(x - hull_[i]);
            if (d < bd) {
                bd = d;
                best0 = i;
            }
        }
        lambda[best0] = 1.0;
        Vec y = hull_[best0];
        for (int it = 0; it < 2000; ++it) {
            const Vec g = y - x;  // gradient of 0.5||y - x||^2
            std::size_t fw = 0, away = best0;
            double fw_val = std::numeric_limits<double>::infinity();
            double away_val = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                const double s = dot(g, hull_[i]);
                if (s < fw_val) {
                    fw_val = s;
                    fw = i;
                }
                if (lambda[i] > 0.0 && s > away_val) {
                    away_val = s;
                    away = i;
                }
            }
            const double gap = dot(g, y) - fw_val;
            if (gap < 1e-14) break;
            const bool use_away = (away_val - dot(g, y)) > gap && lambda[away] > 0.0;
            Vec dir = use_away ? y - hull_[away] : hull_[fw] - y;
            const double den = dot(dir, dir);
            if (den < 1e-18) break;
            double step = -dot(g, dir) / den;
            const double max_step = use_away ? lambda[away] / (1.0 - lambda[away] + 1e-18) : 1.0;
            step = std::clamp(step, 0.0, max_step);
            if (step <= 0.0) break;
            if (use_away) {
                for (std::size_t i = 0; i < m; ++i) lambda[i] *= (1.0 + step);
                lambda[away] -= step;
            } else {
                for (std::size_t i = 0; i < m; ++i) lambda[i] *= (1.0 - step);
                lambda[fw] += step;
            }
            y = zero_vec(space_.dim);
            for (std::size_t i = 0; i < m; ++i)
                if (lambda[i] > 0.0) y += lambda[i] * hull_[i];
        }
        if (nearest) *nearest = y;
        return space_.dist(x, y);
    }

    std::vector<Vec> input_;
    std::vector<Vec> hull_;
    Vec centroid_;
    double radius_ = 0.0;
};

OraclePtr make_polytope(const PNormSpace& space, std::vector<Vec> vertices) {
    return std::make_shared<PolytopeOracle>(space, std::move(vertices));
}

// ---------------------------------------------------------------------------
// point cloud

class PointCloudOracle final : public SetOracle {
public:
    PointCloudOracle(const PNormSpace& space, std::vector<Vec> points)
        : SetOracle(space), pts_(std::move(points)) {
        if (pts_.empty()) throw DomainError("point cloud must be nonempty");
        Vec c = zero_vec(space_.dim);
        for (const auto& p : pts_) c += p;
        centroid_ = (1.0 / static_cast<double>(pts_.size())) * c;
        radius_ = 0.0;
        for (const auto& p : pts_) radius_ = std::max(radius_, space_.dist(p, centroid_));
    }

    bool contains(const Vec& x, double tol) const override { return distance(x) <= tol; }
    double distance(const Vec& x) const override {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts_) best = std::min(best, space_.dist(p, x));
        return best;
    }
    double boundary_distance(const Vec& x) const override { return distance(x); }
    std::vector<Vec> boundary_samples(int n) const override {
        std::vector<Vec> out;
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.push_back(pts_[i % pts_.size()]);
        return out;
    }
    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        std::vector<std::pair<double, Vec>> scored;
        for (const auto& p : pts_) scored.emplace_back(space_.dist(p, x), p);
        return dedupe_points(std::move(scored), k);
    }
    double bounding_radius(Vec* center) const override {
        if (center) *center = centroid_;
        return radius_;
    }
    std::vector<Vec> interior_samples(int n, std::uint64_t) const override {
        return boundary_samples(n);
    }

    const std::vector<Vec>& points() const { return pts_; }

private:
    std::vector<Vec> pts_;
    Vec centroid_;
    double radius_ = 0.0;
};

OraclePtr make_point_cloud(const PNormSpace& space, std::vector<Vec> points) {
    return std::make_shared<PointCloudOracle>(space, std::move(points));
}

// ---------------------------------------------------------------------------
// half-plane (intersection building block)

class HalfPlaneOracle final : public SetOracle {
public:
    HalfPlaneOracle(const PNormSpace& space, Vec normal, double offset)
        : SetOracle(space), n_(std::move(normal)), c_(offset) {
        if (space.dim != 2) throw DomainError("half-plane oracle is 2D only");
        const double nn = norm2(n_);
        if (nn < 1e-14) throw DomainError("half-plane normal must be nonzero");
        n_ = (1.0 / nn) * n_;
        c_ /= nn;
    }

    bool contains(const Vec& x, double tol) const override { return dot(n_, x) <= c_ + tol; }
    double distance(const Vec& x) const override {
        const double excess = dot(n_, x) - c_;
        if (excess <= 0.0) return 0.0;
        return excess / space_.dual_norm(n_);
    }
    double boundary_distance(const Vec& x) const override {
        return std::fabs(dot(n_, x) - c_) / space_.dual_norm(n_);
    }
    std::vector<Vec> nearest_candidates(const Vec& x, int) const override {
        if (contains(x, kGeomTol)) return {x};
        if (space_.p == 2.0) return {x - (dot(n_, x) - c_) * n_};
        const Vec foot = x - (dot(n_, x) - c_) * n_;
        const Vec tang = rotate90(n_);
        auto f = [&](double t) { return space_.dist(foot + t * tang, x); };
        const double t = golden_min(f, -10.0 * distance(x) - 1.0, 10.0 * distance(x) + 1.0, 80);
        return {foot + t * tang};
    }
    std::vector<Vec> boundary_samples(int n) const override {
        const Vec foot = c_ * n_;
        const Vec tang = rotate90(n_);
        std::vector<Vec> out;
        for (int i = 0; i < n; ++i)
            out.push_back(foot + (span_ * (2.0 * i / std::max(1, n - 1) - 1.0)) * tang);
        return out;
    }
    std::vector<BoundaryPiece> boundary_pieces() const override {
        BoundaryPiece p;
        p.t0 = -span_;
        p.t1 = span_;
        p.cyclic = false;
        p.at = [foot = c_ * n_, tang = rotate90(n_)](double t) { return foot + t * tang; };
        return {p};
    }
    bool bounded() const override { return false; }
    double bounding_radius(Vec*) const override {
        throw DomainError("half-plane is unbounded");
    }
    bool convex_hint() const override { return true; }

    const Vec& normal() const { return n_; }
    double offset() const { return c_; }

private:
    Vec n_;
    double c_;
    double span_ = 64.0;  // parameter span used when sampling the edge line
};

OraclePtr make_halfplane(const PNormSpace& space, Vec normal, double offset) {
    return std::make_shared<HalfPlaneOracle>(space, std::move(normal), offset);
}

// ---------------------------------------------------------------------------
// curve set (boundary curve, enclosed region, or closed complement)

class CurveSetOracle final : public SetOracle {
public:
    static constexpr int kDenseSamples = 4096;

    CurveSetOracle(const PNormSpace& space, Curve2D curve, CurveSide side)
        : SetOracle(space), curve_(std::move(curve)), side_(side) {
        if (space.dim != 2) throw DomainError("curve sets live in dimension 2");
        if (side != CurveSide::Boundary && !curve_.closed())
            throw DomainError("region sides need a closed curve");
        // dense parameter cache: distance queries scan this once and refine
        dense_t_.reserve(kDenseSamples);
        dense_x_.reserve(kDenseSamples);
        dense_y_.reserve(kDenseSamples);
        const int denom = curve_.closed() ? kDenseSamples : kDenseSamples - 1;
        for (int i = 0; i < kDenseSamples; ++i) {
            const double t = curve_.period() * static_cast<double>(i) / denom;
            const Vec p = curve_.at(t);
            dense_t_.push_back(t);
            dense_x_.push_back(p[0]);
            dense_y_.push_back(p[1]);
        }
    }

    // nearest-curve distance: dense scan plus Newton on the squared distance
    double curve_distance(const Vec& x) const {
        if (space_.p == 2.0) {
            if (auto np = curve_.exact_nearest2(x)) return norm2(x - *np);
            if ((curve_.kind() == Curve2D::Kind::Circle ||
                 curve_.kind() == Curve2D::Kind::Arc) &&
                norm2(x - curve_.center()) < 1e-14)
                return curve_.radius();
        }
        std::size_t best = 0;
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < dense_t_.size(); ++i) {
            const double dx = dense_x_[i] - x[0];
            const double dy = dense_y_[i] - x[1];
            const double sq = dx * dx + dy * dy;
            if (sq < best_sq) {
                best_sq = sq;
                best = i;
            }
        }
        double t = dense_t_[best];
        const double step = curve_.period() / dense_t_.size();
        if (space_.p == 2.0) {
            for (int it = 0; it < 3; ++it) {
                const Vec c = curve_.at(t);
                const Vec d1 = curve_.d1(t);
                const Vec d2 = curve_.d2(t);
                const Vec r = c - x;
                const double g = dot(r, d1);
                const double h = dot(d1, d1) + dot(r, d2);
                if (std::fabs(h) < 1e-14) break;
                double tn = t - g / h;
                if (!curve_.closed()) tn = std::clamp(tn, 0.0, curve_.period());
                if (std::fabs(tn - t) > 2.0 * step) break;  // untrusted jump
                t = tn;
            }
            double out = std::min(std::sqrt(best_sq), norm2(curve_.at(t) - x));
            if (!curve_.closed())
                out = std::min({out, norm2(curve_.at(0.0) - x),
                                norm2(curve_.at(curve_.period()) - x)});
            return out;
        }
        // general norm: golden around the best cached sample
        auto f = [&](double u) { return space_.dist(curve_.at(u), x); };
        double lo = t - step, hi = t + step;
        if (!curve_.closed()) {
            lo = std::max(lo, 0.0);
            hi = std::min(hi, curve_.period());
        }
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
        double f1 = f(c1), f2 = f(c2);
        for (int it = 0; it < 50; ++it) {
            if (f1 < f2) {
                hi = c2;
                c2 = c1;
                f2 = f1;
                c1 = hi - gr * (hi - lo);
                f1 = f(c1);
            } else {
                lo = c1;
                c1 = c2;
                f1 = f2;
                c2 = lo + gr * (hi - lo);
                f2 = f(c2);
            }
        }
        return std::min({space_.dist(curve_.at(dense_t_[best]), x), f1, f2});
    }

    bool inside_region(const Vec& x, double pad = 0.0) const {
        switch (curve_.kind()) {
            case Curve2D::Kind::Circle:
                return norm2(x - curve_.center()) <= curve_.radius() + pad;
            case Curve2D::Kind::Ellipse: {
                const double g = ellipse_gauge(x);
                return g <= 1.0 + pad / std::min(curve_.semi_a(), curve_.semi_b());
            }
            case Curve2D::Kind::Samples: {
                if (pad >= 0.0 && curve_distance(x) <= pad) return true;
                return ray_parity(x);
            }
            default:
                throw DomainError("open curve has no region side");
        }
    }

    bool contains(const Vec& x, double tol) const override {
        // the parity test for sampled curves is unreliable on the boundary
        const bool sampled = curve_.kind() == Curve2D::Kind::Samples;
        switch (side_) {
            case CurveSide::Boundary:
                return curve_distance(x) <= tol;
            case CurveSide::Inside:
                return inside_region(x, tol) || (sampled && curve_distance(x) <= tol);
            case CurveSide::Outside:
                return !inside_region(x, -tol) || (sampled && curve_distance(x) <= tol);
        }
        return false;
    }

    double distance(const Vec& x) const override {
        if (contains(x, 0.0)) return 0.0;
        return curve_distance(x);
    }

    double boundary_distance(const Vec& x) const override { return curve_distance(x); }

    std::vector<Vec> boundary_samples(int n) const override {
        std::vector<Vec> out;
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double denom = curve_.closed() ? n : std::max(1, n - 1);
            out.push_back(curve_.at(curve_.period() * static_cast<double>(i) / denom));
        }
        return out;
    }

    std::vector<BoundaryPiece> boundary_pieces() const override {
        BoundaryPiece p;
        p.t0 = 0.0;
        p.t1 = curve_.period();
        p.cyclic = curve_.closed();
        p.at = [c = curve_](double t) { return c.at(t); };
        return {p};
    }

    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        if (contains(x, kGeomTol)) return {x};
        if (space_.p == 2.0 && side_ == CurveSide::Boundary) {
            if (auto np = curve_.exact_nearest2(x)) {
                // the closed form hides symmetric ties; fall through when the
                // query sits at the center of a full circle
                const bool center_tie = curve_.kind() == Curve2D::Kind::Circle &&
                                        norm2(x - curve_.center()) < 1e-12;
                if (!center_tie) return {*np};
            }
        }
        std::vector<std::pair<double, Vec>> scored;
        for (double t : curve_.nearest_params(space_, x, 1024)) {
            const Vec p = curve_.at(t);
            scored.emplace_back(space_.dist(p, x), p);
        }
        return dedupe_points(std::move(scored), k);
    }

    bool bounded() const override { return side_ != CurveSide::Outside; }

    double bounding_radius(Vec* center) const override {
        if (!bounded()) throw DomainError("closed complement of a region is unbounded");
        if (center) *center = curve_.center();
        switch (curve_.kind()) {
            case Curve2D::Kind::Circle:
            case Curve2D::Kind::Arc: {
                if (center && curve_.kind() == Curve2D::Kind::Arc) {
                    *center = curve_.at(0.5 * curve_.period());
                    double r = 0.0;
                    for (int i = 0; i <= 32; ++i)
                        r = std::max(r, space_.dist(*center,
                                                    curve_.at(curve_.period() * i / 32.0)));
                    return r;
                }
                return curve_.radius();
            }
            case Curve2D::Kind::Ellipse:
                return std::max(curve_.semi_a(), curve_.semi_b());
            case Curve2D::Kind::Samples: {
                Vec c = zero_vec(2);
                for (const auto& p : curve_.sample_points()) c += p;
                c = (1.0 / static_cast<double>(curve_.sample_points().size())) * c;
                double r = 0.0;
                for (const auto& p : curve_.sample_points())
                    r = std::max(r, space_.dist(p, c));
                if (center) *center = c;
                return r;
            }
        }
        throw DomainError("unreachable curve kind");
    }

    bool convex_hint() const override {
        return side_ == CurveSide::Inside && (curve_.kind() == Curve2D::Kind::Circle ||
                                              curve_.kind() == Curve2D::Kind::Ellipse);
    }

    std::optional<double> gauge_at_origin(const Vec& x) const override {
        if (side_ != CurveSide::Inside) return std::nullopt;
        if (norm2(curve_.center()) > 1e-14) return std::nullopt;
        if (curve_.kind() == Curve2D::Kind::Circle) return norm2(x) / curve_.radius();
        if (curve_.kind() == Curve2D::Kind::Ellipse) return ellipse_gauge(x);
        return std::nullopt;
    }

    std::vector<Vec> interior_samples(int n, std::uint64_t seed) const override {
        if (side_ == CurveSide::Boundary) return boundary_samples(n);
        return SetOracle::interior_samples(n, seed);
    }

    const Curve2D& curve() const { return curve_; }
    CurveSide side() const { return side_; }

private:
    double ellipse_gauge(const Vec& x) const {
        // gauge of the ellipse region about its center
        const Vec local = rotate(x - curve_.center(), -curve_.rotation());
        const double u = local[0] / curve_.semi_a();
        const double v = local[1] / curve_.semi_b();
        return std::sqrt(u * u + v * v);
    }

    Curve2D curve_;
    CurveSide side_;
    std::vector<double> dense_t_, dense_x_, dense_y_;
    friend const Curve2D* weakconv::curve_of(const SetOracle&);
    friend CurveSide weakconv::curve_side_of(const SetOracle&);

    bool ray_parity(const Vec& x) const {
        // crossing parity against the sample polygon
        const auto& p = curve_.sample_points();
        bool in = false;
        for (std::size_t i = 0, j = p.size() - 1; i < p.size(); j = i++) {
            if ((p[i][1] > x[1]) != (p[j][1] > x[1])) {
                const double t = (x[1] - p[i][1]) / (p[j][1] - p[i][1]);
                if (x[0] < p[i][0] + t * (p[j][0] - p[i][0])) in = !in;
            }
        }
        return in;
    }
};

OraclePtr make_curve_set(const PNormSpace& space, const Curve2D& curve, CurveSide side) {
    return std::make_shared<CurveSetOracle>(space, curve, side);
}

// ---------------------------------------------------------------------------
// cavern cl(E \ body) ∩ clip

class CavernOracle final : public SetOracle {
public:
    CavernOracle(const PNormSpace& space, OraclePtr body, OraclePtr clip)
        : SetOracle(space), body_(std::move(body)), clip_(std::move(clip)) {
        if (!body_->convex_hint())
            throw PreconditionError("cavern body must be a convex body");
        if (!body_->bounded() || !clip_->bounded())
            throw PreconditionError("cavern body and clip must be bounded");
        body_boundary_in_clip_ = true;
        for (const auto& s : body_->boundary_samples(64))
            if (!clip_->contains(s, 1e-6)) {
                body_boundary_in_clip_ = false;
                break;
            }
    }

    bool strictly_in_body(const Vec& x, double tol) const {
        return body_->contains(x, 0.0) && body_->boundary_distance(x) > tol;
    }

    bool contains(const Vec& x, double tol) const override {
        return clip_->contains(x, tol) && !strictly_in_body(x, tol);
    }

    double distance(const Vec& x) const override {
        if (contains(x, 0.0)) return 0.0;
        if (strictly_in_body(x, 0.0) && clip_->contains(x) && body_boundary_in_clip_)
            return body_->boundary_distance(x);
        auto cands = nearest_candidates(x, 2);
        if (cands.empty()) throw DomainError("cavern produced no candidates");
        return space_.dist(cands.front(), x);
    }

    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        if (contains(x, kGeomTol)) return {x};
        auto feasible = [this](const Vec& p) { return contains(p, 1e-7); };
        auto pieces = boundary_pieces();
        auto cands = search_pieces_nearest(space_, pieces, feasible, x);
        std::vector<std::pair<double, Vec>> scored;
        for (auto& c : cands) scored.emplace_back(c.dist, c.point);
        return dedupe_points(std::move(scored), k);
    }

    std::vector<Vec> boundary_samples(int n) const override {
        std::vector<Vec> out;
        for (const auto& s : body_->boundary_samples(n))
            if (clip_->contains(s, 1e-7)) out.push_back(s);
        for (const auto& s : clip_->boundary_samples(n))
            if (contains(s, 1e-7)) out.push_back(s);
        return out;
    }

    std::vector<BoundaryPiece> boundary_pieces() const override {
        auto pieces = body_->boundary_pieces();
        for (auto& p : clip_->boundary_pieces()) pieces.push_back(std::move(p));
        return pieces;
    }

    double bounding_radius(Vec* center) const override { return clip_->bounding_radius(center); }

    const OraclePtr& body() const { return body_; }
    const OraclePtr& clip() const { return clip_; }

private:
    OraclePtr body_, clip_;
    bool body_boundary_in_clip_ = true;
};

OraclePtr make_cavern(const PNormSpace& space, OraclePtr body, OraclePtr clip) {
    return std::make_shared<CavernOracle>(space, std::move(body), std::move(clip));
}

// ---------------------------------------------------------------------------
// union / intersection

class UnionOracle final : public SetOracle {
public:
    UnionOracle(const PNormSpace& space, std::vector<OraclePtr> parts)
        : SetOracle(space), parts_(std::move(parts)) {
        if (parts_.empty()) throw DomainError("union of nothing");
    }

    bool contains(const Vec& x, double tol) const override {
        for (const auto& p : parts_)
            if (p->contains(x, tol)) return true;
        return false;
    }
    double distance(const Vec& x) const override {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : parts_) best = std::min(best, p->distance(x));
        return best;
    }
    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        std::vector<std::pair<double, Vec>> scored;
        for (const auto& p : parts_)
            for (const auto& c : p->nearest_candidates(x, k))
                scored.emplace_back(space_.dist(c, x), c);
        return dedupe_points(std::move(scored), k);
    }
    std::vector<Vec> boundary_samples(int n) const override {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            for (const auto& s : parts_[i]->boundary_samples(n)) {
                bool interior_elsewhere = false;
                for (std::size_t j = 0; j < parts_.size(); ++j) {
                    if (j == i) continue;
                    if (parts_[j]->contains(s, 0.0) && parts_[j]->boundary_distance(s) > 1e-7) {
                        interior_elsewhere = true;
                        break;
                    }
                }
                if (!interior_elsewhere) out.push_back(s);
            }
        }
        return out;
    }
    std::vector<BoundaryPiece> boundary_pieces() const override {
        std::vector<BoundaryPiece> pieces;
        for (const auto& p : parts_)
            for (auto& q : p->boundary_pieces()) pieces.push_back(std::move(q));
        return pieces;
    }
    bool bounded() const override {
        for (const auto& p : parts_)
            if (!p->bounded()) return false;
        return true;
    }
    double bounding_radius(Vec* center) const override {
        Vec c0;
        double r = 0.0;
        parts_[0]->bounding_radius(&c0);
        for (const auto& p : parts_) {
            Vec c;
            const double rp = p->bounding_radius(&c);
            r = std::max(r, space_.dist(c, c0) + rp);
        }
        if (center) *center = c0;
        return r;
    }

    const std::vector<OraclePtr>& parts() const { return parts_; }

private:
    std::vector<OraclePtr> parts_;
};

class IntersectionOracle final : public SetOracle {
public:
    IntersectionOracle(const PNormSpace& space, std::vector<OraclePtr> parts)
        : SetOracle(space), parts_(std::move(parts)) {
        if (parts_.empty()) throw DomainError("intersection of nothing");
        corners_ = compute_corners();
    }

    bool contains(const Vec& x, double tol) const override {
        for (const auto& p : parts_)
            if (!p->contains(x, tol)) return false;
        return true;
    }

    double distance(const Vec& x) const override {
        if (contains(x, 0.0)) return 0.0;
        auto cands = nearest_candidates(x, 2);
        if (cands.empty()) throw DomainError("empty intersection");
        return space_.dist(cands.front(), x);
    }

    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        if (contains(x, kGeomTol)) return {x};
        std::vector<std::pair<double, Vec>> scored;
        auto feasible = [this](const Vec& p) { return contains(p, 1e-7); };
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            for (const auto& c : parts_[i]->nearest_candidates(x, k))
                if (feasible(c)) scored.emplace_back(space_.dist(c, x), c);
            auto cands = search_pieces_nearest(space_, parts_[i]->boundary_pieces(),
                                               feasible, x);
            for (auto& c : cands) scored.emplace_back(c.dist, c.point);
        }
        for (const auto& c : corners_) scored.emplace_back(space_.dist(c, x), c);
        return dedupe_points(std::move(scored), k);
    }

    std::vector<Vec> boundary_samples(int n) const override {
        std::vector<Vec> out;
        for (const auto& part : parts_)
            for (const auto& s : part->boundary_samples(n))
                if (contains(s, 1e-7)) out.push_back(s);
        for (const auto& c : corners_) out.push_back(c);
        return out;
    }

    std::vector<BoundaryPiece> boundary_pieces() const override {
        std::vector<BoundaryPiece> pieces;
        for (const auto& p : parts_)
            for (auto& q : p->boundary_pieces()) pieces.push_back(std::move(q));
        return pieces;
    }

    bool bounded() const override {
        for (const auto& p : parts_)
            if (p->bounded()) return true;
        return false;
    }
    double bounding_radius(Vec* center) const override {
        double best = std::numeric_limits<double>::infinity();
        Vec bc;
        for (const auto& p : parts_) {
            if (!p->bounded()) continue;
            Vec c;
            const double r = p->bounding_radius(&c);
            if (r < best) {
                best = r;
                bc = c;
            }
        }
        if (!std::isfinite(best)) throw DomainError("unbounded intersection");
        if (center) *center = bc;
        return best;
    }
    bool convex_hint() const override {
        for (const auto& p : parts_)
            if (!p->convex_hint()) return false;
        return true;
    }

    const std::vector<OraclePtr>& parts() const { return parts_; }

private:
    // Points where a part's boundary crosses in or out of the others.
    std::vector<Vec> compute_corners() const {
        std::vector<Vec> corners;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            auto others_ok = [&](const Vec& p) {
                for (std::size_t j = 0; j < parts_.size(); ++j) {
                    if (j == i) continue;
                    if (!parts_[j]->contains(p, 1e-9)) return false;
                }
                return true;
            };
            for (const auto& piece : parts_[i]->boundary_pieces()) {
                const int n = 1024;
                const double span = piece.t1 - piece.t0;
                std::vector<char> ok(piece.cyclic ? n : n + 1);
                for (int s = 0; s < static_cast<int>(ok.size()); ++s)
                    ok[s] = others_ok(piece.at(piece.t0 + span * s / n)) ? 1 : 0;
                const int edges = piece.cyclic ? n : n;
                for (int s = 0; s < edges; ++s) {
                    const int t = piece.cyclic ? (s + 1) % n : s + 1;
                    if (t >= static_cast<int>(ok.size())) break;
                    if (ok[s] == ok[t]) continue;
                    double lo = piece.t0 + span * s / n;
                    double hi = lo + span / n;
                    const bool lo_ok = ok[s];
                    for (int it = 0; it < 60; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if (others_ok(piece.at(mid)) == lo_ok)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    corners.push_back(piece.at(lo_ok ? lo : hi));
                }
            }
        }
        return corners;
    }

    std::vector<OraclePtr> parts_;
    std::vector<Vec> corners_;
};

OraclePtr make_union(const PNormSpace& space, std::vector<OraclePtr> parts) {
    return std::make_shared<UnionOracle>(space, std::move(parts));
}

OraclePtr make_intersection(const PNormSpace& space, std::vector<OraclePtr> parts) {
    return std::make_shared<IntersectionOracle>(space, std::move(parts));
}

// ---------------------------------------------------------------------------
// Minkowski sum

class MinkowskiSumOracle final : public SetOracle {
public:
    MinkowskiSumOracle(const PNormSpace& space, OraclePtr a, OraclePtr b)
        : SetOracle(space), a_(std::move(a)), b_(std::move(b)) {
        if (!a_->bounded() || !b_->bounded())
            throw PreconditionError("Minkowski sum needs bounded parts");
        // sums with a norm ball collapse to a neighborhood of the other part
        if (auto bv = ball_view(*b_)) ball_ = bv;
        if (!ball_) {
            if (auto av = ball_view(*a_)) {
                ball_ = av;
                std::swap(a_, b_);
            }
        }
    }

    bool contains(const Vec& x, double tol) const override { return distance(x) <= tol; }

    double distance(const Vec& x) const override {
        if (ball_) return std::max(0.0, a_->distance(x - ball_->center) - ball_->radius);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a0 : a_->boundary_samples(24)) {
            Vec a = a0;
            Vec b = b_->nearest_point(x - a);
            for (int it = 0; it < 24; ++it) {
                a = a_->nearest_point(x - b);
                b = b_->nearest_point(x - a);
            }
            best = std::min(best, space_.dist(a + b, x));
        }
        return best;
    }

    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        if (ball_) {
            const Vec shifted = x - ball_->center;
            if (a_->distance(shifted) <= ball_->radius) return {x};
            std::vector<std::pair<double, Vec>> scored;
            for (const auto& a : a_->nearest_candidates(shifted, k)) {
                const Vec towards = shifted - a;
                const Vec y = a + ball_->center + ball_->radius * space_.unit(towards);
                scored.emplace_back(space_.dist(y, x), y);
            }
            return dedupe_points(std::move(scored), k);
        }
        return SetOracle::nearest_candidates(x, k);
    }

    std::vector<Vec> boundary_samples(int n) const override {
        // support points of the sum in sampled directions
        auto sa = a_->boundary_samples(std::max(64, n));
        auto sb = b_->boundary_samples(std::max(64, n));
        std::vector<Vec> out;
        for (int i = 0; i < n; ++i) {
            Vec u;
            if (space_.dim == 2) {
                const double th = kTau * i / n;
                u = Vec{std::cos(th), std::sin(th)};
            } else {
                u = seeded_directions(space_.dim, 1, 29 + static_cast<std::uint64_t>(i))[0];
            }
            auto support = [&](const std::vector<Vec>& pts) {
                double best = -std::numeric_limits<double>::infinity();
                Vec bp = pts[0];
                for (const auto& p : pts)
                    if (dot(u, p) > best) {
                        best = dot(u, p);
                        bp = p;
                    }
                return bp;
            };
            out.push_back(support(sa) + support(sb));
        }
        return out;
    }

    double bounding_radius(Vec* center) const override {
        Vec ca, cb;
        const double ra = a_->bounding_radius(&ca);
        const double rb = ball_ ? ball_->radius : b_->bounding_radius(&cb);
        if (ball_) cb = ball_->center;
        if (center) *center = ca + cb;
        return ra + rb;
    }
    bool convex_hint() const override { return a_->convex_hint() && b_->convex_hint(); }

    const OraclePtr& part_a() const { return a_; }
    const OraclePtr& part_b() const { return b_; }

private:
    OraclePtr a_, b_;
    std::optional<BallView> ball_;
};

OraclePtr make_minkowski_sum(const PNormSpace& space, OraclePtr a, OraclePtr b) {
    return std::make_shared<MinkowskiSumOracle>(space, std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// affine images

class AffineImageOracle final : public SetOracle {
public:
    AffineImageOracle(OraclePtr base, Vec shift, double sign)
        : SetOracle(base->space()), base_(std::move(base)), shift_(std::move(shift)), sign_(sign) {}

    Vec to_base(const Vec& x) const { return sign_ * (x - shift_); }
    Vec from_base(const Vec& x) const { return shift_ + sign_ * x; }

    bool contains(const Vec& x, double tol) const override {
        return base_->contains(to_base(x), tol);
    }
    double distance(const Vec& x) const override { return base_->distance(to_base(x)); }
    double boundary_distance(const Vec& x) const override {
        return base_->boundary_distance(to_base(x));
    }
    std::vector<Vec> boundary_samples(int n) const override {
        auto s = base_->boundary_samples(n);
        for (auto& p : s) p = from_base(p);
        return s;
    }
    std::vector<BoundaryPiece> boundary_pieces() const override {
        auto pieces = base_->boundary_pieces();
        for (auto& p : pieces) {
            auto inner = p.at;
            p.at = [this, inner](double t) { return from_base(inner(t)); };
        }
        return pieces;
    }
    std::vector<Vec> nearest_candidates(const Vec& x, int k) const override {
        auto c = base_->nearest_candidates(to_base(x), k);
        for (auto& p : c) p = from_base(p);
        return c;
    }
    bool bounded() const override { return base_->bounded(); }
    double bounding_radius(Vec* center) const override {
        Vec c;
        const double r = base_->bounding_radius(&c);
        if (center) *center = from_base(c);
        return r;
    }
    bool convex_hint() const override { return base_->convex_hint(); }

private:
    OraclePtr base_;
    Vec shift_;
    double sign_;
};

OraclePtr affine_image(const OraclePtr& a, const Vec& shift, double sign) {
    if (sign != 1.0 && sign != -1.0) throw DomainError("affine image sign must be +-1");
    const PNormSpace& sp = a->space();
    if (auto bv = ball_view(*a)) return make_ball(sp, shift + sign * bv->center, bv->radius);
    if (const Curve2D* c = curve_of(*a))
        return make_curve_set(sp, c->affine_image(shift, sign), curve_side_of(*a));
    if (const auto* verts = polytope_vertices(*a)) {
        std::vector<Vec> mapped;
        for (const auto& v : *verts) mapped.push_back(shift + sign * v);
        return make_polytope(sp, std::move(mapped));
    }
    if (auto* cloud = dynamic_cast<const PointCloudOracle*>(a.get())) {
        std::vector<Vec> mapped;
        for (const auto& v : cloud->points()) mapped.push_back(shift + sign * v);
        return make_point_cloud(sp, std::move(mapped));
    }
    if (auto* u = dynamic_cast<const UnionOracle*>(a.get())) {
        std::vector<OraclePtr> parts;
        for (const auto& p : u->parts()) parts.push_back(affine_image(p, shift, sign));
        return make_union(sp, std::move(parts));
    }
    if (auto* inter = dynamic_cast<const IntersectionOracle*>(a.get())) {
        std::vector<OraclePtr> parts;
        for (const auto& p : inter->parts()) parts.push_back(affine_image(p, shift, sign));
        return make_intersection(sp, std::move(parts));
    }
    if (auto* cav = dynamic_cast<const CavernOracle*>(a.get())) {
        return make_cavern(sp, affine_image(cav->body(), shift, sign),
                           affine_image(cav->clip(), shift, sign));
    }
    if (auto* ms = dynamic_cast<const MinkowskiSumOracle*>(a.get())) {
        // shift one part, reflect both
        return make_minkowski_sum(sp, affine_image(ms->part_a(), shift, sign),
                                  affine_image(ms->part_b(), zero_vec(sp.dim), sign));
    }
    return std::make_shared<AffineImageOracle>(a, shift, sign);
}

// ---------------------------------------------------------------------------
// views

std::optional<BallView> ball_view(const SetOracle& s) {
    if (auto* b = dynamic_cast<const BallOracle*>(&s)) return BallView{b->c_, b->r_};
    if (auto* c = dynamic_cast<const CurveSetOracle*>(&s)) {
        // a disk region is a norm ball only in the Euclidean plane
        if (c->space().p == 2.0 && c->side() == CurveSide::Inside &&
            c->curve().kind() == Curve2D::Kind::Circle)
            return BallView{c->curve().center(), c->curve().radius()};
    }
    return std::nullopt;
}

const Curve2D* curve_of(const SetOracle& s) {
    if (auto* c = dynamic_cast<const CurveSetOracle*>(&s)) return &c->curve_;
    return nullptr;
}

CurveSide curve_side_of(const SetOracle& s) {
    if (auto* c = dynamic_cast<const CurveSetOracle*>(&s)) return c->side();
    throw DomainError("not a curve set");
}

const std::vector<Vec>* polytope_vertices(const SetOracle& s) {
    if (auto* p = dynamic_cast<const PolytopeOracle*>(&s)) return &p->hull();
    return nullptr;
}

const std::vector<OraclePtr>* combinator_parts(const SetOracle& s) {
    if (auto* u = dynamic_cast<const UnionOracle*>(&s)) return &u->parts();
    if (auto* i = dynamic_cast<const IntersectionOracle*>(&s)) return &i->parts();
    return nullptr;
}

}  // namespace weakconv
