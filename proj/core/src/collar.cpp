#include "roughspec/geometry/collar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace roughspec::geom {

double dist_to_exposed_edges(Point p, const std::vector<ExposedEdge>& edges) {
    double best = std::numeric_limits<double>::infinity();
    for (const ExposedEdge& e : edges)
        best = std::min(best, dist_point_segment(p, e.a, e.b));
    return best;
}

EdgeDistanceIndex::EdgeDistanceIndex(std::vector<ExposedEdge> edges)
    : edges_(std::move(edges)) {
    if (edges_.empty()) throw std::invalid_argument("EdgeDistanceIndex: empty");
    double xmin = edges_[0].a.x, xmax = xmin, ymin = edges_[0].a.y, ymax = ymin;
    double lmax = 0.0;
    for (const ExposedEdge& e : edges_) {
        for (const Point& p : {e.a, e.b}) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        lmax = std::max(lmax, dist(e.a, e.b));
    }
    x0_ = xmin;
    y0_ = ymin;
    cell_ = std::max(lmax, 1e-12);
    nx_ = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil((xmax - xmin) / cell_)));
    ny_ = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil((ymax - ymin) / cell_)));
    cells_.resize(static_cast<size_t>(nx_ * ny_));
    for (size_t k = 0; k < edges_.size(); ++k) {
        const Point mid = edges_[k].a + 0.5 * (edges_[k].b - edges_[k].a);
        const auto gx = std::clamp<std::int64_t>(
            static_cast<std::int64_t>((mid.x - x0_) / cell_), 0, nx_ - 1);
        const auto gy = std::clamp<std::int64_t>(
            static_cast<std::int64_t>((mid.y - y0_) / cell_), 0, ny_ - 1);
        cells_[static_cast<size_t>(gy * nx_ + gx)].push_back(
            static_cast<std::int32_t>(k));
    }
}

double EdgeDistanceIndex::dist(Point p) const {
    const auto px = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor((p.x - x0_) / cell_)), -1, nx_);
    const auto py = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor((p.y - y0_) / cell_)), -1, ny_);
    double best = std::numeric_limits<double>::infinity();
    const std::int64_t rmax = std::max(nx_, ny_) + 2;
    for (std::int64_t ring = 0; ring <= rmax; ++ring) {
        // Edge midpoints binned per cell; an edge in a ring-r cell is at least
        // (r-1)*cell - cell/2 away (half-edge reach), so stop once that
        // exceeds the best found.
        if (best < std::numeric_limits<double>::infinity() &&
            (static_cast<double>(ring - 1) - 0.5) * cell_ > best)
            break;
        for (std::int64_t dx = -ring; dx <= ring; ++dx) {
            for (std::int64_t dy = -ring; dy <= ring; ++dy) {
                if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                const std::int64_t gx = px + dx, gy = py + dy;
                if (gx < 0 || gx >= nx_ || gy < 0 || gy >= ny_) continue;
                for (std::int32_t k :
                     cells_[static_cast<size_t>(gy * nx_ + gx)])
                    best = std::min(
                        best, dist_point_segment(p, edges_[k].a, edges_[k].b));
            }
        }
    }
    if (best == std::numeric_limits<double>::infinity())
        return dist_to_exposed_edges(p, edges_);
    return best;
}

CollarRaster collar_mask(const PixelDomain& pd, double r, int resolution) {
    if (pd.empty()) throw std::invalid_argument("collar_mask: empty domain");
    if (!(r > 0.0)) throw std::invalid_argument("collar_mask: r > 0");
    if (resolution < pd.n)
        throw std::invalid_argument("collar_mask: resolution >= n");

    const EdgeDistanceIndex index(exposed_edges(pd));
    const SiteSet set = pd.site_set();

    std::int64_t imin = INT64_MAX, imax = INT64_MIN, jmin = INT64_MAX,
                 jmax = INT64_MIN;
    for (const GridIndex& g : pd.sites) {
        imin = std::min(imin, g.i);
        imax = std::max(imax, g.i);
        jmin = std::min(jmin, g.j);
        jmax = std::max(jmax, g.j);
    }
    CollarRaster out;
    out.resolution = resolution;
    // Cell index ix covers [ix/res, (ix+1)/res); span the pixel bounding box.
    const double half = 0.5 / pd.n;
    out.ix0 = static_cast<std::int64_t>(
        std::floor((static_cast<double>(imin) / pd.n - half) * resolution));
    out.iy0 = static_cast<std::int64_t>(
        std::floor((static_cast<double>(jmin) / pd.n - half) * resolution));
    const auto ix1 = static_cast<std::int64_t>(
        std::ceil((static_cast<double>(imax) / pd.n + half) * resolution));
    const auto iy1 = static_cast<std::int64_t>(
        std::ceil((static_cast<double>(jmax) / pd.n + half) * resolution));
    out.width = ix1 - out.ix0 + 1;
    out.height = iy1 - out.iy0 + 1;
    out.mask.assign(static_cast<size_t>(out.width * out.height), false);

    std::int64_t count = 0;
    for (std::int64_t iy = out.iy0; iy <= iy1; ++iy) {
        for (std::int64_t ix = out.ix0; ix <= ix1; ++ix) {
            const Point p{(ix + 0.5) / resolution, (iy + 0.5) / resolution};
            if (!realized_contains(pd, set, p)) continue;
            if (index.dist(p) < r) {
                out.mask[static_cast<size_t>((iy - out.iy0) * out.width +
                                             (ix - out.ix0))] = true;
                ++count;
            }
        }
    }
    out.area = static_cast<double>(count) /
               (static_cast<double>(resolution) * resolution);
    return out;
}

}  // namespace roughspec::geom
