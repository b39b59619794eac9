#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace weakconv {

using Vec = std::vector<double>;

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Vec operator-(const Vec& a) { return -1.0 * a; }

inline Vec& operator+=(Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec midpoint(const Vec& a, const Vec& b) { return 0.5 * (a + b); }

inline Vec lerp(const Vec& a, const Vec& b, double t) {
    return (1.0 - t) * a + t * b;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec zero_vec(int dim) { return Vec(static_cast<std::size_t>(dim), 0.0); }

// Euclidean rotation in the plane, used by 2D geometry helpers.
inline Vec rotate90(const Vec& a) { return Vec{-a[1], a[0]}; }

inline Vec rotate(const Vec& a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Vec{c * a[0] - s * a[1], s * a[0] + c * a[1]};
}

}  // namespace weakconv
