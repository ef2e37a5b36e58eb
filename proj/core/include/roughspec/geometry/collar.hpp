#pragma once

#include <vector>

#include "roughspec/geometry/pixel_domain.hpp"

namespace roughspec::geom {

/// Boolean raster of the r-collar of a pixelated domain: cells of the realized
/// set whose center lies within distance r of the exposed boundary edges.
struct CollarRaster {
    int resolution = 1;               // cells per unit length
    std::int64_t ix0 = 0, iy0 = 0;    // index of the lower-left cell
    std::int64_t width = 0, height = 0;
    std::vector<bool> mask;           // row-major, width*height
    double area = 0.0;                // marked cells / resolution^2

    bool at(std::int64_t ix, std::int64_t iy) const {
        return mask[static_cast<size_t>((iy - iy0) * width + (ix - ix0))];
    }
};

/// Distance to the exposed boundary is exact point-to-segment distance, not a
/// raster dilation.
CollarRaster collar_mask(const PixelDomain& pd, double r, int resolution);

/// Distance from p to the nearest exposed edge of the pixelation.
double dist_to_exposed_edges(Point p, const std::vector<ExposedEdge>& edges);

/// Spatially binned variant for bulk queries.
class EdgeDistanceIndex {
  public:
    explicit EdgeDistanceIndex(std::vector<ExposedEdge> edges);
    double dist(Point p) const;
    const std::vector<ExposedEdge>& edges() const { return edges_; }

  private:
    std::vector<ExposedEdge> edges_;
    std::vector<std::vector<std::int32_t>> cells_;
    double x0_ = 0, y0_ = 0, cell_ = 1;
    std::int64_t nx_ = 1, ny_ = 1;
};

}  // namespace roughspec::geom
