#include "roughspec/geometry/pixel_domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace roughspec::geom {

PixelDomain pixelate(const DomainOracle& oracle, int n, bool truncate) {
    if (n < 1) throw std::invalid_argument("pixelate: n >= 1");
    PixelDomain pd;
    pd.n = n;
    const double R = truncate
                         ? std::min(oracle.bounding_radius,
                                    static_cast<double>(n))
                         : oracle.bounding_radius;
    const auto lim = static_cast<std::int64_t>(std::ceil(R * n));
    const double R2 = R * R;
    for (std::int64_t i = -lim; i <= lim; ++i) {
        for (std::int64_t j = -lim; j <= lim; ++j) {
            const Point p{static_cast<double>(i) / n,
                          static_cast<double>(j) / n};
            if (p.x * p.x + p.y * p.y > R2) continue;
            if (oracle.contains(p)) pd.sites.push_back({i, j});
        }
    }
    // Lexicographic site order is the canonical representation.
    std::sort(pd.sites.begin(), pd.sites.end());
    return pd;
}

std::vector<PixelDomain> components(const PixelDomain& pd) {
    std::vector<PixelDomain> out;
    if (pd.empty()) return out;
    const SiteSet set = pd.site_set();
    SiteSet seen;
    for (const GridIndex& start : pd.sites) {
        if (seen.count(start)) continue;
        PixelDomain comp;
        comp.n = pd.n;
        std::vector<GridIndex> stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            const GridIndex g = stack.back();
            stack.pop_back();
            comp.sites.push_back(g);
            const GridIndex nb[4] = {{g.i + 1, g.j}, {g.i - 1, g.j},
                                     {g.i, g.j + 1}, {g.i, g.j - 1}};
            for (const GridIndex& h : nb) {
                if (set.count(h) && !seen.count(h)) {
                    seen.insert(h);
                    stack.push_back(h);
                }
            }
        }
        std::sort(comp.sites.begin(), comp.sites.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<ExposedEdge> exposed_edges(const PixelDomain& pd) {
    std::vector<ExposedEdge> edges;
    const SiteSet set = pd.site_set();
    const double half = 0.5 / pd.n;
    for (const GridIndex& g : pd.sites) {
        const Point c = pd.center(g);
        // Corner integer coordinates in units of 1/(2n).
        const std::int64_t cx = 2 * g.i, cy = 2 * g.j;
        struct Nb {
            GridIndex n;
            Point a, b;
            GridIndex ca, cb;
        };
        const Nb nbs[4] = {
            {{g.i + 1, g.j}, {c.x + half, c.y - half}, {c.x + half, c.y + half},
             {cx + 1, cy - 1}, {cx + 1, cy + 1}},
            {{g.i - 1, g.j}, {c.x - half, c.y - half}, {c.x - half, c.y + half},
             {cx - 1, cy - 1}, {cx - 1, cy + 1}},
            {{g.i, g.j + 1}, {c.x - half, c.y + half}, {c.x + half, c.y + half},
             {cx - 1, cy + 1}, {cx + 1, cy + 1}},
            {{g.i, g.j - 1}, {c.x - half, c.y - half}, {c.x + half, c.y - half},
             {cx - 1, cy - 1}, {cx + 1, cy - 1}},
        };
        for (const Nb& nb : nbs)
            if (!set.count(nb.n))
                edges.push_back({nb.a, nb.b, nb.ca, nb.cb});
    }
    return edges;
}

bool realized_contains(const PixelDomain& pd, const SiteSet& set, Point p) {
    // Nearest site by rounding; points on internal pixel edges belong to the
    // interior but round to one of the adjacent pixels, which suffices here
    // since such points form a null set in every use below.
    const auto i = static_cast<std::int64_t>(std::llround(p.x * pd.n));
    const auto j = static_cast<std::int64_t>(std::llround(p.y * pd.n));
    if (!set.count({i, j})) return false;
    const double half = 0.5 / pd.n;
    return std::abs(p.x - static_cast<double>(i) / pd.n) < half &&
           std::abs(p.y - static_cast<double>(j) / pd.n) < half;
}

void write_pbm(const PixelDomain& pd, const std::string& pbm_path,
               const std::string& json_header_path) {
    std::int64_t imin = 0, imax = -1, jmin = 0, jmax = -1;
    if (!pd.empty()) {
        imin = jmin = INT64_MAX;
        imax = jmax = INT64_MIN;
        for (const GridIndex& g : pd.sites) {
            imin = std::min(imin, g.i);
            imax = std::max(imax, g.i);
            jmin = std::min(jmin, g.j);
            jmax = std::max(jmax, g.j);
        }
    }
    const std::int64_t w = pd.empty() ? 0 : imax - imin + 1;
    const std::int64_t h = pd.empty() ? 0 : jmax - jmin + 1;

    std::ofstream pbm(pbm_path);
    if (!pbm) throw std::runtime_error("write_pbm: cannot open " + pbm_path);
    pbm << "P1\n" << w << " " << h << "\n";
    const SiteSet set = pd.site_set();
    // Top raster row holds the largest j.
    for (std::int64_t j = jmax; j >= jmin; --j) {
        for (std::int64_t i = imin; i <= imax; ++i)
            pbm << (set.count({i, j}) ? '1' : '0')
                << (i == imax ? '\n' : ' ');
    }

    nlohmann::json hdr;
    hdr["n"] = pd.n;
    hdr["origin_index"] = {imin, jmin};
    hdr["width"] = w;
    hdr["height"] = h;
    std::ofstream js(json_header_path);
    if (!js)
        throw std::runtime_error("write_pbm: cannot open " + json_header_path);
    js << hdr.dump(2) << "\n";
}

PixelDomain read_pbm(const std::string& pbm_path,
                     const std::string& json_header_path) {
    std::ifstream js(json_header_path);
    if (!js)
        throw std::runtime_error("read_pbm: cannot open " + json_header_path);
    nlohmann::json hdr = nlohmann::json::parse(js);
    PixelDomain pd;
    pd.n = hdr.at("n").get<int>();
    const std::int64_t imin = hdr.at("origin_index")[0].get<std::int64_t>();
    const std::int64_t jmin = hdr.at("origin_index")[1].get<std::int64_t>();
    const std::int64_t w = hdr.at("width").get<std::int64_t>();
    const std::int64_t h = hdr.at("height").get<std::int64_t>();

    std::ifstream pbm(pbm_path);
    if (!pbm) throw std::runtime_error("read_pbm: cannot open " + pbm_path);
    std::string magic;
    pbm >> magic;
    if (magic != "P1") throw std::runtime_error("read_pbm: not a P1 bitmap");
    std::int64_t w2 = 0, h2 = 0;
    pbm >> w2 >> h2;
    if (w2 != w || h2 != h)
        throw std::runtime_error("read_pbm: header/bitmap size mismatch");
    for (std::int64_t row = 0; row < h; ++row) {
        const std::int64_t j = jmin + (h - 1 - row);
        for (std::int64_t col = 0; col < w; ++col) {
            char bit;
            pbm >> bit;
            if (bit == '1') pd.sites.push_back({imin + col, j});
        }
    }
    std::sort(pd.sites.begin(), pd.sites.end());
    return pd;
}

}  // namespace roughspec::geom
