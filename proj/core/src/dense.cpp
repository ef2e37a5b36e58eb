#include "roughspec/eig/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace roughspec::eig {

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double DenseMatrix::frobenius() const {
    double acc = 0.0;
    for (double v : data_) acc += v * v;
    return std::sqrt(acc);
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("DenseMatrix: product shape mismatch");
    DenseMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("DenseMatrix: difference shape mismatch");
    DenseMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

DenseMatrix cholesky(const DenseMatrix& b) {
    const int n = b.rows();
    if (b.cols() != n) throw std::invalid_argument("cholesky: square input");
    DenseMatrix L(n, n);
    for (int j = 0; j < n; ++j) {
        double d = b(j, j);
        for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0)) throw std::runtime_error("B not positive definite");
        L(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = b(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return L;
}

namespace {

/// Solve L X = Y for X (L lower triangular), column by column.
DenseMatrix solve_lower(const DenseMatrix& L, const DenseMatrix& y) {
    const int n = L.rows();
    DenseMatrix x = y;
    for (int c = 0; c < x.cols(); ++c) {
        for (int i = 0; i < n; ++i) {
            double s = x(i, c);
            for (int k = 0; k < i; ++k) s -= L(i, k) * x(k, c);
            x(i, c) = s / L(i, i);
        }
    }
    return x;
}

/// Solve L^T X = Y for X.
DenseMatrix solve_lower_transpose(const DenseMatrix& L, const DenseMatrix& y) {
    const int n = L.rows();
    DenseMatrix x = y;
    for (int c = 0; c < x.cols(); ++c) {
        for (int i = n - 1; i >= 0; --i) {
            double s = x(i, c);
            for (int k = i + 1; k < n; ++k) s -= L(k, i) * x(k, c);
            x(i, c) = s / L(i, i);
        }
    }
    return x;
}

double off_diagonal_norm(const DenseMatrix& c) {
    double acc = 0.0;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            if (i != j) acc += c(i, j) * c(i, j);
    return std::sqrt(acc);
}

/// One cyclic-by-rows Jacobi sweep on C, rotations accumulated into Q.
void jacobi_sweep(DenseMatrix& c, DenseMatrix& q) {
    const int n = c.rows();
    for (int p = 0; p < n - 1; ++p) {
        for (int r = p + 1; r < n; ++r) {
            const double cpr = c(p, r);
            if (cpr == 0.0) continue;
            const double theta = (c(r, r) - c(p, p)) / (2.0 * cpr);
            const double t =
                (theta >= 0.0 ? 1.0 : -1.0) /
                (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            const double cs = 1.0 / std::sqrt(1.0 + t * t);
            const double sn = t * cs;
            for (int k = 0; k < n; ++k) {
                const double ckp = c(k, p), ckr = c(k, r);
                c(k, p) = cs * ckp - sn * ckr;
                c(k, r) = sn * ckp + cs * ckr;
            }
            for (int k = 0; k < n; ++k) {
                const double cpk = c(p, k), crk = c(r, k);
                c(p, k) = cs * cpk - sn * crk;
                c(r, k) = sn * cpk + cs * crk;
            }
            for (int k = 0; k < n; ++k) {
                const double qkp = q(k, p), qkr = q(k, r);
                q(k, p) = cs * qkp - sn * qkr;
                q(k, r) = sn * qkp + cs * qkr;
            }
        }
    }
}

struct JacobiState {
    DenseMatrix L, C, Q;
    double c_norm = 0.0;
    int sweeps = 0;
};

JacobiState jacobi_init(const DenseMatrix& a, const DenseMatrix& b) {
    JacobiState st;
    st.L = cholesky(b);
    // C = L^{-1} A L^{-T}
    st.C = solve_lower(st.L, a);
    st.C = solve_lower(st.L, st.C.transposed()).transposed();
    // Enforce symmetry lost to rounding.
    for (int i = 0; i < st.C.rows(); ++i)
        for (int j = i + 1; j < st.C.cols(); ++j) {
            const double s = 0.5 * (st.C(i, j) + st.C(j, i));
            st.C(i, j) = s;
            st.C(j, i) = s;
        }
    st.Q = DenseMatrix::identity(st.C.rows());
    st.c_norm = st.C.frobenius();
    return st;
}

JacobiResult jacobi_finish(const JacobiState& st) {
    const int n = st.C.rows();
    JacobiResult out;
    out.sweeps = st.sweeps;
    out.off_norm = off_diagonal_norm(st.C);
    out.reduced = st.C;  // kept for diagnostics; D = diag of it
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return st.C(i, i) < st.C(j, j); });
    out.values.resize(static_cast<size_t>(n));
    DenseMatrix qs(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<size_t>(k)] = st.C(order[k], order[k]);
        for (int i = 0; i < n; ++i) qs(i, k) = st.Q(i, order[k]);
    }
    out.rotation = qs;
    out.vectors = solve_lower_transpose(st.L, qs);  // P = L^{-T} Q
    return out;
}

}  // namespace

JacobiResult jacobi_pencil(const DenseMatrix& a, const DenseMatrix& b,
                           int sweep_budget) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("jacobi_pencil: shape mismatch");
    if (sweep_budget < 1)
        throw std::invalid_argument("jacobi_pencil: sweep_budget >= 1");
    JacobiState st = jacobi_init(a, b);
    const DenseMatrix c0 = st.C;
    const double tol = 1e-14 * st.c_norm;
    for (int s = 0; s < sweep_budget; ++s) {
        if (off_diagonal_norm(st.C) < tol) break;
        jacobi_sweep(st.C, st.Q);
        ++st.sweeps;
    }
    JacobiResult out = jacobi_finish(st);
    out.reduced = c0;
    return out;
}

static std::vector<double> bound_in_reduced_frame(const DenseMatrix& c0,
                                                  const std::vector<double>& d,
                                                  const DenseMatrix& q) {
    const int n = c0.rows();
    DenseMatrix D(n, n);
    for (int k = 0; k < n; ++k) D(k, k) = d[static_cast<size_t>(k)];
    const DenseMatrix qt = q.transposed();
    const double ortho = (qt * q - DenseMatrix::identity(n)).frobenius();
    const double resid = (qt * D * q - c0).frobenius();
    std::vector<double> bounds(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        bounds[static_cast<size_t>(k)] =
            std::abs(d[static_cast<size_t>(k)]) * ortho + resid;
    return bounds;
}

std::vector<double> oishi_bound(const DenseMatrix& a, const DenseMatrix& b,
                                const std::vector<double>& d,
                                const DenseMatrix& p) {
    if (static_cast<int>(d.size()) != p.cols())
        throw std::invalid_argument("oishi_bound: shape mismatch");
    JacobiState st = jacobi_init(a, b);
    const DenseMatrix q = st.L.transposed() * p;  // Q = L^T P
    return bound_in_reduced_frame(st.C, d, q);
}

EigenApprox gamma_mat(const DenseMatrix& a, const DenseMatrix& b, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("gamma_mat: eps > 0");
    constexpr int kMaxSweeps = 200;
    JacobiState st = jacobi_init(a, b);
    const DenseMatrix c0 = st.C;
    for (int sweeps = 1; sweeps <= kMaxSweeps; ++sweeps) {
        jacobi_sweep(st.C, st.Q);
        st.sweeps = sweeps;
        JacobiResult it = jacobi_finish(st);
        const auto bounds = bound_in_reduced_frame(c0, it.values, it.rotation);
        if (std::all_of(bounds.begin(), bounds.end(),
                        [&](double e) { return e <= eps; })) {
            EigenApprox out;
            out.values = std::move(it.values);
            out.vectors = std::move(it.vectors);
            out.residual_bounds = bounds;
            out.sweeps = sweeps;
            out.certified = true;
            return out;
        }
    }
    throw std::runtime_error("gamma_mat: bound not achieved");
}

}  // namespace roughspec::eig
