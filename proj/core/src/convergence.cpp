#include "roughspec/analysis/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "roughspec/fem/mesh.hpp"
#include "roughspec/fem/pencil.hpp"

namespace roughspec::analysis {

std::vector<double> ConvergenceTable::diffs(int n) const {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.n == n && r.has_diff) out.push_back(r.diff);
    return out;
}

double ConvergenceTable::fitted_rate(int n) const {
    // log2 diff_m = log2 C - rate * m; least squares over rows with diffs.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& r : rows) {
        if (r.n != n || !r.has_diff || !(r.diff > 0.0)) continue;
        const double x = static_cast<double>(r.m);
        const double y = std::log2(r.diff);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) throw std::runtime_error("fitted_rate: need >= 2 differences");
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return -slope;
}

ConvergenceTable converge_study(const geom::DomainOracle& oracle,
                                const std::vector<int>& n_list, int m_max,
                                const eig::DescentOptions& opts) {
    if (m_max < 1)
        throw std::invalid_argument("converge_study: need >= 2 levels per n");
    ConvergenceTable table;
    for (int n : n_list) {
        const geom::PixelDomain pd = geom::pixelate(oracle, n);
        if (pd.empty())
            throw std::runtime_error("converge_study: empty pixelation at n=" +
                                     std::to_string(n));
        double prev = 0.0;
        bool have_prev = false;
        for (int m = 0; m <= m_max; ++m) {
            ConvergenceRow row;
            row.n = n;
            row.m = m;
            const fem::Mesh mesh = fem::triangulate(pd, m);
            row.h = mesh.h;
            if (mesh.n_interior == 0) {
                row.status = "no-dof";
                table.rows.push_back(row);
                continue;
            }
            const fem::Pencil pencil = fem::assemble(mesh);
            const auto dr = eig::rayleigh_descent(pencil.A, pencil.B, 1, opts);
            const auto& p = dr.pairs.front();
            row.lambda1 = p.value;
            switch (p.status) {
                case eig::DescentStatus::kConverged:
                    row.status = "converged";
                    break;
                case eig::DescentStatus::kFloor:
                    row.status = "floor";
                    break;
                case eig::DescentStatus::kMaxIter:
                    row.status = "stalled";
                    break;
            }
            if (have_prev) {
                row.diff = std::abs(prev - p.value);
                row.has_diff = true;
            }
            prev = p.value;
            have_prev = true;
            table.rows.push_back(row);
        }
    }
    return table;
}

void write_csv(const ConvergenceTable& table, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    f << "n,m,h,lambda1,diff,status\n";
    char buf[160];
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%s\n", r.n,
                      r.m, r.h, r.lambda1, r.has_diff ? r.diff : 0.0,
                      r.status.c_str());
        f << buf;
    }
}

ConvergenceTable convergence_from_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("convergence_from_csv: cannot open " + path);
    std::string line;
    std::getline(f, line);  // header
    ConvergenceTable t;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        ConvergenceRow r;
        std::getline(ss, tok, ',');
        r.n = std::stoi(tok);
        std::getline(ss, tok, ',');
        r.m = std::stoi(tok);
        std::getline(ss, tok, ',');
        r.h = std::stod(tok);
        std::getline(ss, tok, ',');
        r.lambda1 = std::stod(tok);
        std::getline(ss, tok, ',');
        r.diff = std::stod(tok);
        std::getline(ss, tok, ',');
        r.status = tok;
        r.has_diff = r.diff != 0.0;
        t.rows.push_back(r);
    }
    return t;
}

}  // namespace roughspec::analysis
