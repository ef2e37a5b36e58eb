#include "roughspec/fem/pencil.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

namespace roughspec::fem {

const double kElementStiffness[3][3] = {
    {1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};

void element_mass(double h, double out[3][3]) {
    const double c = h * h / 24.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out[a][b] = (a == b ? 2.0 : 1.0) * c;
}

SymmetricSparse::SymmetricSparse(
    std::int32_t dim,
    std::vector<std::tuple<std::int32_t, std::int32_t, double>> upper_entries)
    : dim_(dim), upper_(std::move(upper_entries)) {
    std::sort(upper_.begin(), upper_.end(),
              [](const auto& a, const auto& b) {
                  return std::get<0>(a) < std::get<0>(b) ||
                         (std::get<0>(a) == std::get<0>(b) &&
                          std::get<1>(a) < std::get<1>(b));
              });
    // Full pattern for the matvec.
    std::vector<std::int64_t> count(static_cast<size_t>(dim_) + 1, 0);
    for (const auto& [r, c, v] : upper_) {
        ++count[static_cast<size_t>(r) + 1];
        if (r != c) ++count[static_cast<size_t>(c) + 1];
    }
    row_ptr_.assign(static_cast<size_t>(dim_) + 1, 0);
    for (std::int32_t i = 0; i < dim_; ++i)
        row_ptr_[static_cast<size_t>(i) + 1] =
            row_ptr_[static_cast<size_t>(i)] + count[static_cast<size_t>(i) + 1];
    cols_.resize(static_cast<size_t>(row_ptr_[static_cast<size_t>(dim_)]));
    vals_.resize(cols_.size());
    std::vector<std::int64_t> fill(row_ptr_.begin(), row_ptr_.end() - 1);
    auto put = [&](std::int32_t r, std::int32_t c, double v) {
        const auto slot = static_cast<size_t>(fill[static_cast<size_t>(r)]++);
        cols_[slot] = c;
        vals_[slot] = v;
    };
    for (const auto& [r, c, v] : upper_) {
        put(r, c, v);
        if (r != c) put(c, r, v);
    }
    // Canonical in-row order.
    for (std::int32_t i = 0; i < dim_; ++i) {
        const auto lo = static_cast<size_t>(row_ptr_[static_cast<size_t>(i)]);
        const auto hi =
            static_cast<size_t>(row_ptr_[static_cast<size_t>(i) + 1]);
        std::vector<std::pair<std::int32_t, double>> row;
        row.reserve(hi - lo);
        for (size_t k = lo; k < hi; ++k) row.emplace_back(cols_[k], vals_[k]);
        std::sort(row.begin(), row.end());
        for (size_t k = lo; k < hi; ++k) {
            cols_[k] = row[k - lo].first;
            vals_[k] = row[k - lo].second;
        }
    }
}

void SymmetricSparse::matvec(std::span<const double> x,
                             std::span<double> y) const {
    if (x.size() != static_cast<size_t>(dim_) || y.size() != x.size())
        throw std::invalid_argument("matvec: dimension mismatch");
#pragma omp parallel for schedule(static)
    for (std::int32_t i = 0; i < dim_; ++i) {
        double acc = 0.0;
        const auto lo = row_ptr_[static_cast<size_t>(i)];
        const auto hi = row_ptr_[static_cast<size_t>(i) + 1];
        for (std::int64_t k = lo; k < hi; ++k)
            acc += vals_[static_cast<size_t>(k)] *
                   x[static_cast<size_t>(cols_[static_cast<size_t>(k)])];
        y[static_cast<size_t>(i)] = acc;
    }
}

std::vector<double> SymmetricSparse::matvec(const std::vector<double>& x) const {
    std::vector<double> y(x.size());
    matvec(std::span<const double>(x), std::span<double>(y));
    return y;
}

double SymmetricSparse::quadratic(std::span<const double> x,
                                  std::span<const double> y) const {
    std::vector<double> tmp(y.size());
    matvec(y, std::span<double>(tmp));
    double acc = 0.0;
    for (size_t k = 0; k < tmp.size(); ++k) acc += x[k] * tmp[k];
    return acc;
}

Pencil assemble(const Mesh& mesh) {
    if (mesh.n_interior == 0)
        throw std::runtime_error("assemble: mesh too coarse for Dirichlet problem");
    double Me[3][3];
    element_mass(mesh.h, Me);

    std::vector<std::tuple<std::int32_t, std::int32_t, double>> ta, tb;
    ta.reserve(mesh.triangle_count() * 6);
    tb.reserve(mesh.triangle_count() * 6);
    for (const auto& tri : mesh.triangles) {
        std::int32_t d[3];
        for (int a = 0; a < 3; ++a)
            d[a] = mesh.dof_of_vertex[static_cast<size_t>(tri[a])];
        for (int a = 0; a < 3; ++a) {
            if (d[a] < 0) continue;
            for (int b = a; b < 3; ++b) {
                if (d[b] < 0) continue;
                const std::int32_t r = std::min(d[a], d[b]);
                const std::int32_t c = std::max(d[a], d[b]);
                ta.emplace_back(r, c, kElementStiffness[a][b]);
                tb.emplace_back(r, c, Me[a][b]);
            }
        }
    }
    auto reduce = [&](std::vector<std::tuple<std::int32_t, std::int32_t,
                                             double>>& t) {
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) < std::get<0>(b) ||
                   (std::get<0>(a) == std::get<0>(b) &&
                    std::get<1>(a) < std::get<1>(b));
        });
        std::vector<std::tuple<std::int32_t, std::int32_t, double>> out;
        out.reserve(t.size() / 2);
        for (const auto& e : t) {
            if (!out.empty() && std::get<0>(out.back()) == std::get<0>(e) &&
                std::get<1>(out.back()) == std::get<1>(e))
                std::get<2>(out.back()) += std::get<2>(e);
            else
                out.push_back(e);
        }
        return out;
    };
    Pencil p;
    p.dof = mesh.n_interior;
    p.h = mesh.h;
    p.A = SymmetricSparse(p.dof, reduce(ta));
    p.B = SymmetricSparse(p.dof, reduce(tb));
    return p;
}

void write_matrix_market(const SymmetricSparse& mat, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_matrix_market: cannot open " + path);
    f << "%%MatrixMarket matrix coordinate real symmetric\n";
    f << mat.dim() << " " << mat.dim() << " " << mat.upper().size() << "\n";
    char buf[96];
    // Symmetric coordinate format stores the lower triangle; our logical
    // entries are (row <= col), so emit transposed indices.
    for (const auto& [r, c, v] : mat.upper()) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", c + 1, r + 1, v);
        f << buf;
    }
}

}  // namespace roughspec::fem
