#include "roughspec/eig/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "roughspec/eig/dense.hpp"

namespace roughspec::eig {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (size_t k = 0; k < y.size(); ++k) y[k] += alpha * x[k];
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// Remove the B-components of v along the (B-orthonormal) columns in basis.
void deflate(const fem::SymmetricSparse& b,
             const std::vector<std::vector<double>>& basis,
             std::vector<double>& v) {
    if (basis.empty()) return;
    const std::vector<double> bv = b.matvec(v);
    for (const auto& w : basis) axpy(-dot(w, bv), w, v);
}

/// Smallest eigenvalue and coefficients of the 2x2 pencil on span{v, g}.
/// Returns false when the span is numerically degenerate.
bool line_search(double a11, double a12, double a22, double b11, double b12,
                 double b22, double& lam, double& c1, double& c2) {
    const double p = a11 * b22 + a22 * b11 - 2.0 * a12 * b12;
    const double q = b11 * b22 - b12 * b12;
    const double s = a11 * a22 - a12 * a12;
    if (!(q > 0.0)) return false;
    const double disc = std::max(p * p - 4.0 * q * s, 0.0);
    lam = (p - std::sqrt(disc)) / (2.0 * q);
    const double m11 = a11 - lam * b11;
    const double m12 = a12 - lam * b12;
    const double m22 = a22 - lam * b22;
    if (std::abs(m12) + std::abs(m22) > std::abs(m11) + std::abs(m12)) {
        c1 = m22;
        c2 = -m12;
    } else {
        c1 = m12;
        c2 = -m11;
    }
    return std::abs(c2) > 0.0;
}

}  // namespace

DescentResult rayleigh_descent(const fem::SymmetricSparse& a,
                               const fem::SymmetricSparse& b, int k,
                               const DescentOptions& opts) {
    const int n = a.dim();
    if (k < 1 || k > n)
        throw std::invalid_argument("rayleigh_descent: need 1 <= k <= dof");
    constexpr std::int64_t kFloorWindow = 500;
    const double eps = std::numeric_limits<double>::epsilon();

    std::mt19937 rng(opts.seed);
    std::vector<std::vector<double>> basis;  // B-orthonormal converged block
    DescentResult result;

    for (int pair = 0; pair < k; ++pair) {
        std::vector<double> v;
        if (opts.initial_vectors &&
            pair < static_cast<int>(opts.initial_vectors->size()) &&
            !(*opts.initial_vectors)[static_cast<size_t>(pair)].empty()) {
            v = (*opts.initial_vectors)[static_cast<size_t>(pair)];
            if (static_cast<int>(v.size()) != n)
                throw std::invalid_argument(
                    "rayleigh_descent: initial vector length mismatch");
        } else if (opts.seed != 0) {
            std::normal_distribution<double> gauss(0.0, 1.0);
            v.resize(static_cast<size_t>(n));
            for (double& x : v) x = gauss(rng);
        } else {
            v.assign(static_cast<size_t>(n), 1.0);
        }
        deflate(b, basis, v);
        {
            double bn = std::sqrt(std::max(b.quadratic(v, v), 0.0));
            if (!(bn > 0.0)) {
                // Deflated start collapsed; deterministic unit-vector restart.
                for (int j = 0; j < n; ++j) {
                    v.assign(static_cast<size_t>(n), 0.0);
                    v[static_cast<size_t>(j)] = 1.0;
                    deflate(b, basis, v);
                    bn = std::sqrt(std::max(b.quadratic(v, v), 0.0));
                    if (bn > 1e-8) break;
                }
            }
            for (double& x : v) x /= bn;
        }

        DescentPair out;
        out.status = DescentStatus::kMaxIter;
        std::vector<double> av(static_cast<size_t>(n)),
            bv(static_cast<size_t>(n)), g, ag(static_cast<size_t>(n)),
            bg(static_cast<size_t>(n));
        double mark_R = std::numeric_limits<double>::infinity();
        std::int64_t mark_it = 0;

        std::int64_t it = 0;
        for (; it < opts.max_iter; ++it) {
            a.matvec(v, av);
            b.matvec(v, bv);
            const double R = dot(v, av);  // v stays B-normalized
            g = av;
            axpy(-R, bv, g);
            const double res = norm2(g);
            if (res < opts.grad_tol) {
                out.status = DescentStatus::kConverged;
                out.value = R;
                out.residual = res;
                break;
            }
            if (it - mark_it >= kFloorWindow) {
                if (mark_R - R < 8.0 * eps * std::abs(R)) {
                    out.status = DescentStatus::kFloor;
                    out.value = R;
                    out.residual = res;
                    break;
                }
                mark_it = it;
                mark_R = R;
            }
            for (double& x : g) x *= 2.0;  // gradient of R at v^T B v = 1
            deflate(b, basis, g);
            a.matvec(g, ag);
            b.matvec(g, bg);
            double lam, c1, c2;
            if (!line_search(R, dot(v, ag), dot(g, ag), 1.0, dot(v, bg),
                             dot(g, bg), lam, c1, c2)) {
                out.status = DescentStatus::kFloor;
                out.value = R;
                out.residual = res;
                break;
            }
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = c1 * v[j] + c2 * g[j];
            const double bn = std::sqrt(b.quadratic(v, v));
            for (double& x : v) x /= bn;
        }
        if (out.status == DescentStatus::kMaxIter) {
            a.matvec(v, av);
            b.matvec(v, bv);
            out.value = dot(v, av);
            g = av;
            axpy(-out.value, bv, g);
            out.residual = norm2(g);
            if (opts.strict) throw std::runtime_error("descent stalled");
        }
        out.iterations = it;
        out.vector = v;
        basis.push_back(v);
        result.pairs.push_back(std::move(out));
    }

    // Final Rayleigh-Ritz on the computed block: values become variational
    // upper bounds of the first k pencil eigenvalues.
    if (k > 1) {
        DenseMatrix aw(k, k), bw(k, k);
        std::vector<double> tmp(static_cast<size_t>(n));
        for (int i = 0; i < k; ++i) {
            a.matvec(basis[static_cast<size_t>(i)], tmp);
            for (int j = 0; j < k; ++j)
                aw(i, j) = dot(basis[static_cast<size_t>(j)], tmp);
            b.matvec(basis[static_cast<size_t>(i)], tmp);
            for (int j = 0; j < k; ++j)
                bw(i, j) = dot(basis[static_cast<size_t>(j)], tmp);
        }
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const double sa = 0.5 * (aw(i, j) + aw(j, i));
                aw(i, j) = aw(j, i) = sa;
                const double sb = 0.5 * (bw(i, j) + bw(j, i));
                bw(i, j) = bw(j, i) = sb;
            }
        const JacobiResult rr = jacobi_pencil(aw, bw, 100);
        std::vector<std::vector<double>> rotated(
            static_cast<size_t>(k),
            std::vector<double>(static_cast<size_t>(n), 0.0));
        for (int col = 0; col < k; ++col)
            for (int row = 0; row < k; ++row)
                axpy(rr.vectors(row, col), basis[static_cast<size_t>(row)],
                     rotated[static_cast<size_t>(col)]);
        for (int col = 0; col < k; ++col) {
            auto& p = result.pairs[static_cast<size_t>(col)];
            p.value = rr.values[static_cast<size_t>(col)];
            p.vector = std::move(rotated[static_cast<size_t>(col)]);
            const double bn = std::sqrt(b.quadratic(p.vector, p.vector));
            for (double& x : p.vector) x /= bn;
        }
        std::sort(result.pairs.begin(), result.pairs.end(),
                  [](const DescentPair& x, const DescentPair& y) {
                      return x.value < y.value;
                  });
    }
    return result;
}

}  // namespace roughspec::eig
