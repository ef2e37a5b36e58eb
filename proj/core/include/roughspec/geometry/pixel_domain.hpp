#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

#include "roughspec/geometry/oracle.hpp"
#include "roughspec/geometry/point.hpp"

namespace roughspec::geom {

/// Hash for GridIndex so site membership checks are O(1).
struct GridIndexHash {
    size_t operator()(const GridIndex& g) const {
        return std::hash<std::int64_t>()(g.i * 0x9E3779B97F4A7C15LL + g.j);
    }
};

using SiteSet = std::unordered_set<GridIndex, GridIndexHash>;

/// Pixelated domain at grid pitch 1/n: the interior of the union of closed
/// squares of side 1/n centred at the occupied grid points j/n. Sites are
/// kept sorted lexicographically so outputs are deterministic.
struct PixelDomain {
    int n = 1;
    std::vector<GridIndex> sites;

    bool empty() const { return sites.empty(); }
    double pitch() const { return 1.0 / n; }
    double area() const {
        return static_cast<double>(sites.size()) / (static_cast<double>(n) * n);
    }
    Point center(GridIndex g) const {
        return {static_cast<double>(g.i) / n, static_cast<double>(g.j) / n};
    }
    SiteSet site_set() const { return SiteSet(sites.begin(), sites.end()); }
};

/// An exposed pixel edge (not shared by two occupied pixels), as a segment.
/// Corner coordinates are also kept in exact integer units of 1/(2n).
struct ExposedEdge {
    Point a, b;
    GridIndex ca, cb;  // endpoints in units of 1/(2n)
};

/// Evaluate the oracle on the grid (1/n)Z^2. With truncate, restrict the
/// query set to |j/n| <= n (the information model of the n-th algorithm).
/// The empty result is allowed and is reported by PixelDomain::empty().
PixelDomain pixelate(const DomainOracle& oracle, int n, bool truncate = false);

/// Partition into connected components under edge-adjacency (4-connectivity);
/// corner contact does not connect. Deterministic component order.
std::vector<PixelDomain> components(const PixelDomain& pd);

/// All exposed pixel edges, in canonical site/edge order.
std::vector<ExposedEdge> exposed_edges(const PixelDomain& pd);

/// True if p lies in the realized open set of pd.
bool realized_contains(const PixelDomain& pd, const SiteSet& set, Point p);

/// PBM (P1 ASCII) bitmap plus a JSON header {n, origin_index, width, height}.
void write_pbm(const PixelDomain& pd, const std::string& pbm_path,
               const std::string& json_header_path);
PixelDomain read_pbm(const std::string& pbm_path,
                     const std::string& json_header_path);

}  // namespace roughspec::geom
