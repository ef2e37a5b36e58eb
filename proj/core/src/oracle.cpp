#include "roughspec/geometry/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace roughspec::geom {

DomainOracle oracle_julia(std::complex<double> c, int max_iter,
                          double escape_radius) {
    if (max_iter < 1) throw std::invalid_argument("oracle_julia: max_iter >= 1");
    if (escape_radius < 2.0)
        throw std::invalid_argument("oracle_julia: escape_radius >= 2");
    DomainOracle o;
    o.bounding_radius = escape_radius;
    o.label = "julia(c=" + std::to_string(c.real()) + "+" +
              std::to_string(c.imag()) + "i)";
    o.membership = [c, max_iter, escape_radius](Point p) {
        const double esc2 = escape_radius * escape_radius;
        double zx = p.x, zy = p.y;
        for (int k = 0; k < max_iter; ++k) {
            if (zx * zx + zy * zy > esc2) return false;
            const double nx = zx * zx - zy * zy + c.real();
            zy = 2.0 * zx * zy + c.imag();
            zx = nx;
        }
        return zx * zx + zy * zy <= esc2;
    };
    return o;
}

DomainOracle oracle_square(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("oracle_square: need a < b");
    DomainOracle o;
    o.bounding_radius = std::sqrt(2.0) * std::max(std::abs(a), std::abs(b));
    o.label = "square(" + std::to_string(a) + "," + std::to_string(b) + ")";
    o.membership = [a, b](Point p) {
        return p.x > a && p.x < b && p.y > a && p.y < b;
    };
    return o;
}

std::vector<Point> koch_polygon(int level) {
    if (level < 0 || level > 10)
        throw std::invalid_argument("koch_polygon: level in [0,10]");
    // Equilateral triangle of side 1, centroid at the origin, CCW.
    const double R = 1.0 / std::sqrt(3.0);  // circumradius
    std::vector<Point> poly;
    for (int k = 0; k < 3; ++k) {
        const double ang = M_PI / 2.0 + 2.0 * M_PI * k / 3.0;
        poly.push_back({R * std::cos(ang), R * std::sin(ang)});
    }
    for (int l = 0; l < level; ++l) {
        std::vector<Point> next;
        next.reserve(poly.size() * 4);
        const size_t n = poly.size();
        for (size_t e = 0; e < n; ++e) {
            const Point a = poly[e];
            const Point b = poly[(e + 1) % n];
            const Point d = b - a;
            const Point p1 = a + (1.0 / 3.0) * d;
            const Point p2 = a + (2.0 / 3.0) * d;
            // Outward apex: for a CCW polygon the outward normal of edge a->b
            // is (dy, -dx).
            const Point mid = a + 0.5 * d;
            const Point apex{mid.x + d.y * std::sqrt(3.0) / 6.0,
                             mid.y - d.x * std::sqrt(3.0) / 6.0};
            next.push_back(a);
            next.push_back(p1);
            next.push_back(apex);
            next.push_back(p2);
        }
        poly = std::move(next);
    }
    return poly;
}

bool point_in_polygon(Point p, const std::vector<Point>& poly) {
    bool inside = false;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& vi = poly[i];
        const Point& vj = poly[j];
        if ((vi.y > p.y) != (vj.y > p.y)) {
            const double xcross =
                vi.x + (p.y - vi.y) * (vj.x - vi.x) / (vj.y - vi.y);
            if (p.x < xcross) inside = !inside;
        }
    }
    return inside;
}

DomainOracle oracle_koch(int level) {
    auto poly = koch_polygon(level);
    DomainOracle o;
    o.bounding_radius = 1.0;  // circumradius 1/sqrt(3), bumps stay within 1
    o.label = "koch(level=" + std::to_string(level) + ")";
    o.membership = [poly = std::move(poly)](Point p) {
        return point_in_polygon(p, poly);
    };
    return o;
}

DomainOracle oracle_annulus(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("oracle_annulus: eps in (0,1)");
    DomainOracle o;
    o.bounding_radius = 1.0;
    o.label = "annulus(eps=" + std::to_string(eps) + ")";
    o.membership = [eps](Point p) {
        const double r = norm(p);
        return r > eps && r < 1.0;
    };
    return o;
}

DomainOracle oracle_disc(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("oracle_disc: radius > 0");
    DomainOracle o;
    o.bounding_radius = radius;
    o.label = "disc(radius=" + std::to_string(radius) + ")";
    o.membership = [radius](Point p) { return norm(p) < radius; };
    return o;
}

double sampled_boundary_distance(const DomainOracle& oracle, Point p) {
    if (!oracle.contains(p)) return std::numeric_limits<double>::infinity();
    const Point dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const double far = 2.0 * oracle.bounding_radius + 1.0;
    double best = std::numeric_limits<double>::infinity();
    for (const Point& d : dirs) {
        // p is inside, p + far*d is outside; bisect the crossing.
        double lo = 0.0, hi = far;
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (oracle.contains(p + mid * d))
                lo = mid;
            else
                hi = mid;
        }
        best = std::min(best, hi);
    }
    return best;
}

DomainOracle oracle_strips(const DomainOracle& base,
                           const std::vector<Point>& anchors, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("oracle_strips: eps > 0");
    if (anchors.empty())
        throw std::invalid_argument("oracle_strips: anchors non-empty");
    for (const Point& a : anchors)
        if (!base.contains(a))
            throw std::invalid_argument("oracle_strips: anchor outside base");
    DomainOracle o;
    o.bounding_radius = base.bounding_radius;
    o.label = "strips(eps=" + std::to_string(eps) + ",anchors=" +
              std::to_string(anchors.size()) + ")";
    o.membership = [base, anchors, eps](Point p) {
        if (!base.contains(p)) return false;
        double half = 0.5 * eps;  // anchor k (1-based): half-width 2^{-k}*eps/2
        for (const Point& a : anchors) {
            half *= 0.5;
            if (std::abs(p.x - a.x) < half) return true;
        }
        return sampled_boundary_distance(base, p) < eps;
    };
    return o;
}

}  // namespace roughspec::geom
