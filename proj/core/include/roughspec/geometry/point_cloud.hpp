#pragma once

#include <string>
#include <vector>

#include "roughspec/geometry/pixel_domain.hpp"
#include "roughspec/geometry/point.hpp"

namespace roughspec::geom {

/// A sampled closed set for metric computations.
struct PointCloud {
    std::vector<Point> points;

    bool empty() const { return points.empty(); }
    size_t size() const { return points.size(); }
};

/// Distance from p to the nearest cloud point (+inf for the empty cloud).
double dist_to_cloud(Point p, const PointCloud& c);

/// Two-sided Hausdorff distance between finite clouds. By convention
/// d_H(empty, nonempty) = +inf and d_H(empty, empty) = 0.
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Truncated Attouch-Wets distance estimate:
///   sum_{k=1..k_max} 2^{-k} min{1, sup_{|x|<k} |dist(x,a) - dist(x,b)|}
/// with the inner sup evaluated on a 200x200 grid of each ball plus the cloud
/// points themselves; the truncation tail 2^{-k_max} is added, so the result
/// is an upper estimate.
double attouch_wets(const PointCloud& a, const PointCloud& b, int k_max);

/// Sample the exposed edges of a pixelation: all exposed-edge endpoints plus
/// samples_per_edge uniform interior points per edge. Errors on empty input.
PointCloud boundary_points(const PixelDomain& pd, int samples_per_edge);

/// Pixel centers as a cloud (samples the realized set).
PointCloud pixel_centers(const PixelDomain& pd);

/// CSV "x,y" with a header row.
void write_csv(const PointCloud& c, const std::string& path);
PointCloud read_csv(const std::string& path);

}  // namespace roughspec::geom
