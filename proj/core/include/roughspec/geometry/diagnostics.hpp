#pragma once

#include <map>
#include <vector>

#include "roughspec/geometry/oracle.hpp"
#include "roughspec/geometry/pixel_domain.hpp"
#include "roughspec/geometry/point_cloud.hpp"

namespace roughspec::geom {

/// Per-resolution geometric diagnostics.
struct GeometryReport {
    int n = 0;
    double l_n = 0.0;            // d_H(O, O_n) + d_H(bd O, bd O_n)
    double dh_domain = 0.0;      // d_H(O, O_n)
    double dh_boundary = 0.0;    // d_H(bd O, bd O_n)
    double q_estimate = 0.0;
    std::map<double, double> collar_areas;
};

/// Minimum, over edge-connected components of the exposed boundary, of the
/// component's point-set diameter.
double estimate_Q(const PixelDomain& pd);

/// Sample the oracle's domain and boundary (bisection along the 4 axis rays
/// from a grid of interior seeds) and compare against each pixelation.
/// boundary_samples is the seed grid resolution per axis.
std::vector<GeometryReport> mosco_diagnostic(const DomainOracle& oracle,
                                             const std::vector<int>& n_list,
                                             int boundary_samples,
                                             bool with_collars = false);

/// Interior seeds and sampled boundary of the reference domain.
struct SampledDomain {
    PointCloud interior;
    PointCloud boundary;
};
SampledDomain sample_domain(const DomainOracle& oracle, int boundary_samples);

}  // namespace roughspec::geom
