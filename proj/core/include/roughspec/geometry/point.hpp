#pragma once

#include <cmath>
#include <cstdint>
#include <compare>

namespace roughspec::geom {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// Exact distance from p to the closed segment [a, b].
inline double dist_point_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return dist(p, a + t * ab);
}

/// Lattice site index: site (i, j) of a PixelDomain at pitch 1/n is the grid
/// point (i/n, j/n).
struct GridIndex {
    std::int64_t i = 0;
    std::int64_t j = 0;

    friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

}  // namespace roughspec::geom
