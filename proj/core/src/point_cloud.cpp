#include "roughspec/geometry/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace roughspec::geom {

namespace {

/// Uniform-grid nearest-point index; exact nearest via expanding ring search.
class NearestGrid {
  public:
    explicit NearestGrid(const std::vector<Point>& pts) : pts_(pts) {
        double xmin = pts[0].x, xmax = pts[0].x;
        double ymin = pts[0].y, ymax = pts[0].y;
        for (const Point& p : pts) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        x0_ = xmin;
        y0_ = ymin;
        const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
        nc_ = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(
                   std::sqrt(static_cast<double>(pts.size()))));
        cell_ = span / static_cast<double>(nc_);
        for (size_t k = 0; k < pts.size(); ++k)
            cells_[key(cx(pts[k].x), cy(pts[k].y))].push_back(k);
    }

    double dist(Point p) const {
        const std::int64_t px = cx(p.x), py = cy(p.y);
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t ring = 0;; ++ring) {
            // Once a candidate is found, rings beyond best/cell cannot win.
            if (best < std::numeric_limits<double>::infinity() &&
                static_cast<double>(ring - 1) * cell_ > best)
                return best;
            bool any_cell_in_range = false;
            for (std::int64_t dx = -ring; dx <= ring; ++dx) {
                for (std::int64_t dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    const std::int64_t gx = px + dx, gy = py + dy;
                    if (gx < -1 || gx > nc_ || gy < -1 || gy > nc_) continue;
                    any_cell_in_range = true;
                    auto it = cells_.find(key(gx, gy));
                    if (it == cells_.end()) continue;
                    for (size_t k : it->second)
                        best = std::min(best, geom::dist(p, pts_[k]));
                }
            }
            if (!any_cell_in_range &&
                best < std::numeric_limits<double>::infinity())
                return best;
            if (ring > 2 * nc_ + 2) {
                // p is far outside the grid; fall back to a direct scan.
                for (const Point& q : pts_)
                    best = std::min(best, geom::dist(p, q));
                return best;
            }
        }
    }

  private:
    std::int64_t cx(double x) const {
        return std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::floor((x - x0_) / cell_)), -1, nc_);
    }
    std::int64_t cy(double y) const {
        return std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::floor((y - y0_) / cell_)), -1, nc_);
    }
    static std::int64_t key(std::int64_t gx, std::int64_t gy) {
        return gx * 0x100000 + gy;
    }
    const std::vector<Point>& pts_;
    double x0_ = 0, y0_ = 0, cell_ = 1;
    std::int64_t nc_ = 1;
    std::map<std::int64_t, std::vector<size_t>> cells_;
};

double directed_sup(const std::vector<Point>& from, const NearestGrid& to) {
    double sup = 0.0;
    for (const Point& p : from) sup = std::max(sup, to.dist(p));
    return sup;
}

}  // namespace

double dist_to_cloud(Point p, const PointCloud& c) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : c.points) best = std::min(best, dist(p, q));
    return best;
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty())
        return std::numeric_limits<double>::infinity();
    const NearestGrid ga(a.points), gb(b.points);
    return std::max(directed_sup(a.points, gb), directed_sup(b.points, ga));
}

double attouch_wets(const PointCloud& a, const PointCloud& b, int k_max) {
    if (k_max < 1) throw std::invalid_argument("attouch_wets: k_max >= 1");
    if (a.empty() || b.empty())
        throw std::invalid_argument("attouch_wets: clouds non-empty");
    const NearestGrid ga(a.points), gb(b.points);
    auto diff_at = [&](Point p) {
        return std::abs(ga.dist(p) - gb.dist(p));
    };
    double total = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        double sup = 0.0;
        const double rad = static_cast<double>(k);
        const int grid = 200;
        for (int ix = 0; ix < grid; ++ix) {
            for (int iy = 0; iy < grid; ++iy) {
                const Point p{-rad + 2.0 * rad * (ix + 0.5) / grid,
                              -rad + 2.0 * rad * (iy + 0.5) / grid};
                if (p.x * p.x + p.y * p.y >= rad * rad) continue;
                sup = std::max(sup, diff_at(p));
                if (sup >= 1.0) break;
            }
            if (sup >= 1.0) break;
        }
        if (sup < 1.0) {
            for (const Point& p : a.points)
                if (norm(p) < rad) sup = std::max(sup, diff_at(p));
            for (const Point& p : b.points)
                if (norm(p) < rad) sup = std::max(sup, diff_at(p));
        }
        total += std::ldexp(std::min(1.0, sup), -k);
    }
    return total + std::ldexp(1.0, -k_max);  // truncation tail
}

PointCloud boundary_points(const PixelDomain& pd, int samples_per_edge) {
    if (pd.empty())
        throw std::invalid_argument("boundary_points: empty pixel domain");
    if (samples_per_edge < 1)
        throw std::invalid_argument("boundary_points: samples_per_edge >= 1");
    const auto edges = exposed_edges(pd);
    // Endpoints dedupe exactly on the 1/(2n) corner lattice.
    std::set<GridIndex> corners;
    PointCloud out;
    for (const ExposedEdge& e : edges) {
        corners.insert(e.ca);
        corners.insert(e.cb);
        for (int s = 1; s <= samples_per_edge; ++s) {
            const double t =
                static_cast<double>(s) / (samples_per_edge + 1);
            out.points.push_back(e.a + t * (e.b - e.a));
        }
    }
    const double half = 0.5 / pd.n;
    for (const GridIndex& c : corners)
        out.points.push_back({c.i * half, c.j * half});
    std::sort(out.points.begin(), out.points.end(),
              [](Point l, Point r) {
                  return l.x < r.x || (l.x == r.x && l.y < r.y);
              });
    return out;
}

PointCloud pixel_centers(const PixelDomain& pd) {
    PointCloud out;
    out.points.reserve(pd.sites.size());
    for (const GridIndex& g : pd.sites) out.points.push_back(pd.center(g));
    return out;
}

void write_csv(const PointCloud& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    f << "x,y\n";
    char buf[80];
    for (const Point& p : c.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
        f << buf;
    }
}

PointCloud read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    std::getline(f, line);  // header
    PointCloud c;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("read_csv: malformed row");
        c.points.push_back(
            {std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return c;
}

}  // namespace roughspec::geom
