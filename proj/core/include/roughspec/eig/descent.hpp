#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "roughspec/fem/pencil.hpp"

namespace roughspec::eig {

enum class DescentStatus {
    kConverged,  // gradient surrogate below grad_tol
    kFloor,      // Rayleigh quotient stopped improving at machine precision
    kMaxIter,    // iteration budget exhausted while still making progress
};

struct DescentOptions {
    double grad_tol = 1e-10;      // stop when ||Av - R Bv||_2 / (v^T B v) < tol
    std::int64_t max_iter = 200000;
    unsigned seed = 0;            // 0: deterministic all-ones start
    bool strict = false;          // throw "descent stalled" on kMaxIter
    std::optional<std::vector<std::vector<double>>> initial_vectors;
};

struct DescentPair {
    double value = 0.0;
    std::vector<double> vector;   // B-normalized, v^T B v = 1
    double residual = 0.0;        // final ||Av - R Bv||_2
    std::int64_t iterations = 0;
    DescentStatus status = DescentStatus::kConverged;
};

struct DescentResult {
    std::vector<DescentPair> pairs;  // ascending by value
    bool all_converged_or_floor() const {
        for (const auto& p : pairs)
            if (p.status == DescentStatus::kMaxIter) return false;
        return true;
    }
};

/// Minimize the Rayleigh quotient (v^T A v)/(v^T B v) by gradient descent
/// with exact line search along the gradient (2-point Rayleigh-Ritz on
/// span{v, grad}); subsequent eigenpairs by B-orthogonal deflation against
/// the converged vectors, each restarted from the deflated all-ones vector.
/// The Rayleigh quotient is nonincreasing per step; the iteration additionally
/// stops with kFloor when R improves by less than 8*eps*|R| over a
/// 500-iteration window (the double-precision floor of the surrogate).
/// A final k x k Rayleigh-Ritz over the computed block makes the returned
/// values variational upper bounds of the first k pencil eigenvalues.
DescentResult rayleigh_descent(const fem::SymmetricSparse& a,
                               const fem::SymmetricSparse& b, int k,
                               const DescentOptions& opts = {});

}  // namespace roughspec::eig
