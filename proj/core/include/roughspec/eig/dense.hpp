#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace roughspec::eig {

/// Row-major dense square-ish matrix, just enough for the dense solvers.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols),
          data_(static_cast<size_t>(rows) * cols, fill) {}

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }
    double operator()(int r, int c) const {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }
    const std::vector<double>& data() const { return data_; }

    DenseMatrix transposed() const;
    double frobenius() const;

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Lower Cholesky factor of an SPD matrix; throws "B not positive definite".
DenseMatrix cholesky(const DenseMatrix& b);

/// Result of the cyclic Jacobi iteration on the pencil (A, B).
struct JacobiResult {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // columns approximate eigenvectors of B^{-1}A
    DenseMatrix rotation;        // orthogonal accumulate in the reduced frame
    DenseMatrix reduced;         // C = L^{-1} A L^{-T} (the reduced input)
    int sweeps = 0;
    double off_norm = 0.0;       // final off-diagonal Frobenius norm
};

/// Cholesky-reduce (A, B) to C = L^{-1} A L^{-T} and run cyclic Jacobi sweeps
/// until the off-diagonal Frobenius norm falls below 1e-14 * ||C||_F or the
/// sweep budget is exhausted. Back-transformed vectors satisfy P^T B P = I up
/// to rotation accuracy.
JacobiResult jacobi_pencil(const DenseMatrix& a, const DenseMatrix& b,
                           int sweep_budget);

/// A-posteriori eigenvalue error bounds from approximate eigenpairs,
/// evaluated in the reduced frame where the rotation product is
/// near-orthogonal:
///   bound_k = |d_k| * ||Q^T Q - I||_F + ||Q^T D Q - C||_F.
/// D and P are as returned by jacobi_pencil (P back-transformed; Q = L^T P).
std::vector<double> oishi_bound(const DenseMatrix& a, const DenseMatrix& b,
                                const std::vector<double>& d,
                                const DenseMatrix& p);

/// Eigenpair approximation with certified per-eigenvalue bounds.
struct EigenApprox {
    std::vector<double> values;            // ascending
    DenseMatrix vectors;                   // columns, pencil eigenvectors
    std::vector<double> residual_bounds;   // |lambda_k - value_k| <= bound_k
    int sweeps = 0;
    bool certified = false;
};

/// Run Jacobi sweeps m = 1, 2, ... and return the first iterate whose bounds
/// all satisfy bound_k <= eps. Aborts after 200 sweeps with "bound not
/// achieved" (eps below floating-point resolution).
EigenApprox gamma_mat(const DenseMatrix& a, const DenseMatrix& b, double eps);

}  // namespace roughspec::eig
