#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "roughspec/geometry/point.hpp"

namespace roughspec::geom {

/// Point-membership view of a planar domain. The membership predicate is the
/// algorithm's only window onto the domain; it must be deterministic and must
/// answer false outside |x| <= bounding_radius.
struct DomainOracle {
    std::function<bool(Point)> membership;
    double bounding_radius = 0.0;
    std::string label;

    bool contains(Point p) const { return membership(p); }
};

/// Filled-Julia-set oracle for f_c(z) = z^2 + c: a point is a member while no
/// iterate up to max_iter leaves |z| <= escape_radius.
DomainOracle oracle_julia(std::complex<double> c, int max_iter = 1000,
                          double escape_radius = 2.0);

/// Open axis-aligned square (a,b)^2.
DomainOracle oracle_square(double a, double b);

/// Interior of the level-th Koch snowflake prefractal polygon, built on an
/// equilateral triangle of side 1 centred at the origin. level <= 10.
DomainOracle oracle_koch(int level);

/// Annulus B_1(0) \ closure(B_eps(0)), 0 < eps < 1.
DomainOracle oracle_annulus(double eps);

/// Open disc of the given radius about the origin.
DomainOracle oracle_disc(double radius);

/// Strips counterexample domain: points of `base` that are within the sampled
/// eps-collar of its boundary, or within horizontal distance 2^{-k} * eps / 2
/// of the x-coordinate of anchor k (1-based). Anchors must lie in `base`.
DomainOracle oracle_strips(const DomainOracle& base,
                           const std::vector<Point>& anchors, double eps);

/// Vertices of the level-th Koch prefractal polygon (counter-clockwise).
std::vector<Point> koch_polygon(int level);

/// Even-odd point-in-polygon test.
bool point_in_polygon(Point p, const std::vector<Point>& poly);

/// Sampled distance from an interior point to the oracle's boundary: bisect
/// along the 4 axis rays (40 steps each) and take the nearest crossing.
/// Returns +inf when p is not a member.
double sampled_boundary_distance(const DomainOracle& oracle, Point p);

}  // namespace roughspec::geom
