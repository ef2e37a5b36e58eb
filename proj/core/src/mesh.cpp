#include "roughspec/fem/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace roughspec::fem {

namespace {

struct KeyHash {
    size_t operator()(const GridIndex& g) const {
        return std::hash<std::int64_t>()(g.i * 0x9E3779B97F4A7C15LL + g.j);
    }
};

}  // namespace

Mesh triangulate(const PixelDomain& pd, int m) {
    if (pd.empty()) throw std::invalid_argument("triangulate: empty domain");
    if (m < 0) throw std::invalid_argument("triangulate: m >= 0");
    Mesh mesh;
    mesh.pd = pd;
    mesh.m = m;
    const std::int64_t twom = std::int64_t{1} << m;
    mesh.unit_denominator = 2 * twom * pd.n;
    mesh.h = 1.0 / (static_cast<double>(pd.n) * static_cast<double>(twom));

    // Collect vertex keys (deduplicated), then sort for canonical ids.
    std::unordered_map<GridIndex, std::int32_t, KeyHash> id_of;
    for (const GridIndex& g : pd.sites) {
        const std::int64_t bx = (2 * g.i - 1) * twom;
        const std::int64_t by = (2 * g.j - 1) * twom;
        for (std::int64_t s = 0; s <= twom; ++s)
            for (std::int64_t t = 0; t <= twom; ++t)
                id_of.emplace(GridIndex{bx + 2 * s, by + 2 * t}, 0);
    }
    mesh.vertex_keys.reserve(id_of.size());
    for (const auto& [key, _] : id_of) mesh.vertex_keys.push_back(key);
    std::sort(mesh.vertex_keys.begin(), mesh.vertex_keys.end());
    for (size_t k = 0; k < mesh.vertex_keys.size(); ++k)
        id_of[mesh.vertex_keys[k]] = static_cast<std::int32_t>(k);

    const double unit = 1.0 / static_cast<double>(mesh.unit_denominator);
    mesh.vertices.reserve(mesh.vertex_keys.size());
    for (const GridIndex& key : mesh.vertex_keys)
        mesh.vertices.push_back({key.i * unit, key.j * unit});

    // Two triangles per subdivision square, right-angle vertex first, CCW.
    mesh.triangles.reserve(pd.sites.size() * static_cast<size_t>(twom) *
                           static_cast<size_t>(twom) * 2);
    for (const GridIndex& g : pd.sites) {
        const std::int64_t bx = (2 * g.i - 1) * twom;
        const std::int64_t by = (2 * g.j - 1) * twom;
        for (std::int64_t s = 0; s < twom; ++s) {
            for (std::int64_t t = 0; t < twom; ++t) {
                const std::int32_t ll = id_of[{bx + 2 * s, by + 2 * t}];
                const std::int32_t lr = id_of[{bx + 2 * s + 2, by + 2 * t}];
                const std::int32_t ur = id_of[{bx + 2 * s + 2, by + 2 * t + 2}];
                const std::int32_t ul = id_of[{bx + 2 * s, by + 2 * t + 2}];
                mesh.triangles.push_back({lr, ur, ll});
                mesh.triangles.push_back({ul, ll, ur});
            }
        }
    }

    // A vertex is interior iff all 4 incident subdivision cells are covered
    // by occupied pixels; this is exact on the integer lattice and classifies
    // corner-touching pixels as boundary.
    const geom::SiteSet set = pd.site_set();
    auto cell_covered = [&](std::int64_t cx, std::int64_t cy) {
        // Cell [cx, cx+1] x [cy, cy+1] in vertex units belongs to pixel i
        // with (2i-1)*twom <= cx < (2i+1)*twom.
        auto fld = [&](std::int64_t c) {
            const std::int64_t num = c + twom;
            const std::int64_t den = 2 * twom;
            return num >= 0 ? num / den : -(((-num) + den - 1) / den);
        };
        return set.count({fld(cx), fld(cy)}) > 0;
    };
    mesh.dof_of_vertex.assign(mesh.vertex_keys.size(), -1);
    std::int32_t dof = 0;
    for (size_t k = 0; k < mesh.vertex_keys.size(); ++k) {
        const GridIndex v = mesh.vertex_keys[k];
        const bool interior =
            cell_covered(v.i, v.j) && cell_covered(v.i - 1, v.j) &&
            cell_covered(v.i, v.j - 1) && cell_covered(v.i - 1, v.j - 1);
        if (interior) mesh.dof_of_vertex[k] = dof++;
    }
    mesh.n_interior = dof;
    return mesh;
}

void write_vtk(const Mesh& mesh, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_vtk: cannot open " + path);
    char buf[96];
    f << "# vtk DataFile Version 3.0\n";
    f << "roughspec mesh n=" << mesh.pd.n << " m=" << mesh.m << "\n";
    f << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    f << "POINTS " << mesh.vertices.size() << " double\n";
    for (const Point& p : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", p.x, p.y);
        f << buf;
    }
    f << "CELLS " << mesh.triangles.size() << " "
      << 4 * mesh.triangles.size() << "\n";
    for (const auto& t : mesh.triangles)
        f << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    f << "CELL_TYPES " << mesh.triangles.size() << "\n";
    for (size_t k = 0; k < mesh.triangles.size(); ++k) f << "5\n";
}

void export_eigenfunction(const Mesh& mesh,
                          const std::vector<double>& coefficients,
                          const std::string& csv_path,
                          const std::string& vtk_path,
                          bool b_normalized) {
    if (coefficients.size() != static_cast<size_t>(mesh.n_interior))
        throw std::invalid_argument(
            "export_eigenfunction: coefficient length != interior dof count");

    std::vector<double> values(mesh.vertex_count(), 0.0);
    for (size_t k = 0; k < mesh.vertex_count(); ++k)
        if (mesh.dof_of_vertex[k] >= 0)
            values[k] = coefficients[static_cast<size_t>(mesh.dof_of_vertex[k])];

    char buf[120];
    {
        std::ofstream f(csv_path);
        if (!f)
            throw std::runtime_error("export_eigenfunction: cannot open " +
                                     csv_path);
        f << "# b_normalized=" << (b_normalized ? 1 : 0) << "\n";
        f << "x,y,value\n";
        for (size_t k = 0; k < mesh.vertex_count(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n",
                          mesh.vertices[k].x, mesh.vertices[k].y, values[k]);
            f << buf;
        }
    }
    {
        std::ofstream f(vtk_path);
        if (!f)
            throw std::runtime_error("export_eigenfunction: cannot open " +
                                     vtk_path);
        f << "# vtk DataFile Version 3.0\n";
        f << "roughspec eigenfunction b_normalized="
          << (b_normalized ? 1 : 0) << "\n";
        f << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
        f << "POINTS " << mesh.vertices.size() << " double\n";
        for (const Point& p : mesh.vertices) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", p.x, p.y);
            f << buf;
        }
        f << "CELLS " << mesh.triangles.size() << " "
          << 4 * mesh.triangles.size() << "\n";
        for (const auto& t : mesh.triangles)
            f << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
        f << "CELL_TYPES " << mesh.triangles.size() << "\n";
        for (size_t k = 0; k < mesh.triangles.size(); ++k) f << "5\n";
        f << "POINT_DATA " << mesh.vertices.size() << "\n";
        f << "SCALARS eigenfunction double 1\nLOOKUP_TABLE default\n";
        for (double v : values) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            f << buf;
        }
    }
}

}  // namespace roughspec::fem
