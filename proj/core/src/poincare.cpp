#include "roughspec/analysis/poincare.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "roughspec/geometry/collar.hpp"
#include "roughspec/geometry/diagnostics.hpp"

namespace roughspec::analysis {

namespace {

/// Centroids of the 16 congruent sub-triangles of a 4-fold refinement,
/// in reference coordinates (xi, eta) on the triangle (0,0)-(1,0)-(0,1).
std::vector<geom::Point> reference_samples16() {
    std::vector<geom::Point> pts;
    const int k = 4;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k - i; ++j)
            pts.push_back({(3.0 * i + 1.0) / (3 * k), (3.0 * j + 1.0) / (3 * k)});
    for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < k - 1 - i; ++j)
            pts.push_back({(3.0 * i + 2.0) / (3 * k), (3.0 * j + 2.0) / (3 * k)});
    return pts;
}

}  // namespace

PoincareReport poincare_check(const fem::Mesh& mesh, double r, int trials,
                              unsigned seed) {
    if (!(r > 0.0)) throw std::invalid_argument("poincare_check: r > 0");
    if (trials < 1) throw std::invalid_argument("poincare_check: trials >= 1");
    if (mesh.n_interior == 0)
        throw std::runtime_error("poincare_check: mesh has no interior dof");

    PoincareReport rep;
    rep.r = r;
    rep.trials = trials;
    rep.q_estimate = geom::estimate_Q(mesh.pd);
    rep.hypothesis_ok = 4.0 * std::sqrt(2.0) * r < rep.q_estimate;
    if (!rep.hypothesis_ok)
        rep.warning = "hypothesis 4*sqrt(2)*r < Q(boundary) fails; "
                      "the continuum inequality is not guaranteed here";

    const double r_grad = 2.0 * std::sqrt(2.0) * r;
    const geom::EdgeDistanceIndex edge_index(geom::exposed_edges(mesh.pd));
    const auto ref = reference_samples16();

    // Collar-weighted element accumulation, Dirichlet-restricted.
    const int dof = mesh.n_interior;
    std::vector<std::tuple<std::int32_t, std::int32_t, double>> tm, tk;
    double me[3][3];
    fem::element_mass(mesh.h, me);
    double w_mass_total = 0.0, w_grad_total = 0.0;
    for (const auto& tri : mesh.triangles) {
        const geom::Point v0 = mesh.vertices[static_cast<size_t>(tri[0])];
        const geom::Point v1 = mesh.vertices[static_cast<size_t>(tri[1])];
        const geom::Point v2 = mesh.vertices[static_cast<size_t>(tri[2])];
        int in_r = 0, in_g = 0;
        for (const geom::Point& s : ref) {
            const geom::Point p = v0 + s.x * (v1 - v0) + s.y * (v2 - v0);
            const double d = edge_index.dist(p);
            if (d < r) ++in_r;
            if (d < r_grad) ++in_g;
        }
        if (in_r == 0 && in_g == 0) continue;
        const double wr = in_r / 16.0;
        const double wg = in_g / 16.0;
        w_mass_total += wr;
        w_grad_total += wg;
        std::int32_t d3[3];
        for (int a = 0; a < 3; ++a)
            d3[a] = mesh.dof_of_vertex[static_cast<size_t>(tri[a])];
        for (int a = 0; a < 3; ++a) {
            if (d3[a] < 0) continue;
            for (int b = a; b < 3; ++b) {
                if (d3[b] < 0) continue;
                const std::int32_t lo = std::min(d3[a], d3[b]);
                const std::int32_t hi = std::max(d3[a], d3[b]);
                if (wr > 0.0) tm.emplace_back(lo, hi, wr * me[a][b]);
                if (wg > 0.0)
                    tk.emplace_back(lo, hi, wg * fem::kElementStiffness[a][b]);
            }
        }
    }
    if (w_mass_total == 0.0) {
        rep.degenerate = true;
        rep.warning += rep.warning.empty() ? "" : "; ";
        rep.warning += "collar empty at this r";
        return rep;
    }
    auto reduce = [](std::vector<std::tuple<std::int32_t, std::int32_t,
                                            double>>& t) {
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) < std::get<0>(b) ||
                   (std::get<0>(a) == std::get<0>(b) &&
                    std::get<1>(a) < std::get<1>(b));
        });
        std::vector<std::tuple<std::int32_t, std::int32_t, double>> out;
        for (const auto& e : t) {
            if (!out.empty() && std::get<0>(out.back()) == std::get<0>(e) &&
                std::get<1>(out.back()) == std::get<1>(e))
                std::get<2>(out.back()) += std::get<2>(e);
            else
                out.push_back(e);
        }
        return out;
    };
    const fem::SymmetricSparse M_r(dof, reduce(tm));
    const fem::SymmetricSparse K_g(dof, reduce(tk));

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> u(static_cast<size_t>(dof));
    for (int t = 0; t < trials; ++t) {
        for (double& x : u) x = gauss(rng);
        const double num2 = M_r.quadratic(u, u);
        const double den2 = K_g.quadratic(u, u);
        if (den2 < 1e-28) {
            // u concentrated away from the collar; the nested-collar ratio is
            // 0/0 and carries no information.
            ++rep.skipped;
            continue;
        }
        const double ratio = std::sqrt(std::max(num2, 0.0)) /
                             (r * std::sqrt(den2));
        rep.ratios.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    rep.pass = !rep.degenerate && rep.max_ratio <= 5.5;
    return rep;
}

void write_csv(const PoincareReport& rep, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    f << "trial,ratio\n";
    char buf[64];
    for (size_t t = 0; t < rep.ratios.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, rep.ratios[t]);
        f << buf;
    }
}

}  // namespace roughspec::analysis
