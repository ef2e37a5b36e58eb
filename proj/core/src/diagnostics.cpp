#include "roughspec/geometry/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "roughspec/geometry/collar.hpp"

namespace roughspec::geom {

namespace {

/// Union-find over exposed-edge endpoints (exact 1/(2n)-lattice corners).
class UnionFind {
  public:
    explicit UnionFind(size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), size_t{0});
    }
    size_t find(size_t a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    void unite(size_t a, size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<size_t> parent_;
};

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](Point o, Point a, Point b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point> hull(2 * pts.size());
    size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

double point_set_diameter(const std::vector<Point>& pts) {
    const std::vector<Point> h =
        pts.size() > 64 ? convex_hull(pts) : pts;
    double diam = 0.0;
    for (size_t a = 0; a < h.size(); ++a)
        for (size_t b = a + 1; b < h.size(); ++b)
            diam = std::max(diam, dist(h[a], h[b]));
    return diam;
}

}  // namespace

double estimate_Q(const PixelDomain& pd) {
    if (pd.empty()) throw std::invalid_argument("estimate_Q: empty domain");
    const auto edges = exposed_edges(pd);
    std::map<GridIndex, size_t> corner_id;
    for (const ExposedEdge& e : edges) {
        corner_id.emplace(e.ca, corner_id.size());
        corner_id.emplace(e.cb, corner_id.size());
    }
    UnionFind uf(corner_id.size());
    for (const ExposedEdge& e : edges)
        uf.unite(corner_id.at(e.ca), corner_id.at(e.cb));

    std::map<size_t, std::vector<Point>> comps;
    const double half = 0.5 / pd.n;
    for (const auto& [corner, id] : corner_id)
        comps[uf.find(id)].push_back({corner.i * half, corner.j * half});

    double q = std::numeric_limits<double>::infinity();
    for (const auto& [root, pts] : comps)
        q = std::min(q, point_set_diameter(pts));
    return q;
}

SampledDomain sample_domain(const DomainOracle& oracle, int boundary_samples) {
    if (boundary_samples < 2)
        throw std::invalid_argument("sample_domain: boundary_samples >= 2");
    SampledDomain out;
    const double R = oracle.bounding_radius;
    const int g = boundary_samples;
    const Point dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const double far = 2.0 * R + 1.0;
    for (int ix = 0; ix < g; ++ix) {
        for (int iy = 0; iy < g; ++iy) {
            const Point p{-R + 2.0 * R * (ix + 0.5) / g,
                          -R + 2.0 * R * (iy + 0.5) / g};
            if (!oracle.contains(p)) continue;
            out.interior.points.push_back(p);
            for (const Point& d : dirs) {
                double lo = 0.0, hi = far;
                for (int it = 0; it < 40; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (oracle.contains(p + mid * d))
                        lo = mid;
                    else
                        hi = mid;
                }
                out.boundary.points.push_back(p + hi * d);
            }
        }
    }
    return out;
}

std::vector<GeometryReport> mosco_diagnostic(const DomainOracle& oracle,
                                             const std::vector<int>& n_list,
                                             int boundary_samples,
                                             bool with_collars) {
    const SampledDomain ref = sample_domain(oracle, boundary_samples);
    if (ref.interior.empty())
        throw std::runtime_error("mosco_diagnostic: no interior seeds found");

    std::vector<GeometryReport> reports;
    for (int n : n_list) {
        const PixelDomain pd = pixelate(oracle, n);
        if (pd.empty())
            throw std::runtime_error("mosco_diagnostic: empty pixelation at n=" +
                                     std::to_string(n));
        GeometryReport rep;
        rep.n = n;

        // O_n sampled by pixel centers plus boundary samples (the realized
        // set includes its boundary collar up to sampling density).
        PointCloud on = pixel_centers(pd);
        const PointCloud bn = boundary_points(pd, 3);
        PointCloud on_full = on;
        on_full.points.insert(on_full.points.end(), bn.points.begin(),
                              bn.points.end());

        PointCloud o_full = ref.interior;
        o_full.points.insert(o_full.points.end(), ref.boundary.points.begin(),
                             ref.boundary.points.end());

        rep.dh_domain = hausdorff(o_full, on_full);
        rep.dh_boundary = hausdorff(ref.boundary, bn);
        rep.l_n = rep.dh_domain + rep.dh_boundary;
        rep.q_estimate = estimate_Q(pd);
        if (with_collars) {
            for (double r : {0.5 / n, 1.0 / n, 2.0 / n}) {
                const CollarRaster cr = collar_mask(pd, r, 2 * n);
                rep.collar_areas[r] = cr.area;
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace roughspec::geom
