#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "roughspec/geometry/pixel_domain.hpp"

namespace roughspec::fem {

using geom::GridIndex;
using geom::PixelDomain;
using geom::Point;

/// Uniform right-isosceles triangulation of a pixelated domain at refinement
/// level m. Every pixel is split into 2^m x 2^m squares, each cut along the
/// lower-left to upper-right diagonal; legs have length h = 1/(n*2^m).
///
/// Vertices live on the integer lattice in units of 1/(2^{m+1} n): pixel
/// (i,j) spans [(2i-1)*2^m, (2i+1)*2^m] x [(2j-1)*2^m, (2j+1)*2^m]. Vertex
/// ids are assigned in lexicographic lattice order; triangles store the
/// right-angle vertex first, counter-clockwise.
struct Mesh {
    PixelDomain pd;
    int m = 0;
    double h = 0.0;
    std::int64_t unit_denominator = 0;  // 2^{m+1} * n

    std::vector<GridIndex> vertex_keys;       // integer lattice coords
    std::vector<Point> vertices;              // positions, key * 1/denom
    std::vector<std::array<std::int32_t, 3>> triangles;
    std::vector<std::int32_t> dof_of_vertex;  // -1 for boundary vertices
    std::int32_t n_interior = 0;

    size_t vertex_count() const { return vertices.size(); }
    size_t triangle_count() const { return triangles.size(); }
};

/// Build the level-m triangulation. Errors on an empty pixel domain.
Mesh triangulate(const PixelDomain& pd, int m);

/// ASCII legacy VTK unstructured grid of the mesh.
void write_vtk(const Mesh& mesh, const std::string& path);

/// Vertex field export: CSV table (x, y, value; 0 on boundary vertices) and
/// ASCII legacy VTK with point data. coefficients has one entry per interior
/// dof. Errors on length mismatch.
void export_eigenfunction(const Mesh& mesh,
                          const std::vector<double>& coefficients,
                          const std::string& csv_path,
                          const std::string& vtk_path,
                          bool b_normalized = false);

}  // namespace roughspec::fem
