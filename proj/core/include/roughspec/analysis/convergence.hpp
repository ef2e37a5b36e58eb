#pragma once

#include <string>
#include <vector>

#include "roughspec/eig/descent.hpp"
#include "roughspec/geometry/oracle.hpp"

namespace roughspec::analysis {

struct ConvergenceRow {
    int n = 0;
    int m = 0;
    double h = 0.0;
    double lambda1 = 0.0;
    double diff = 0.0;       // |lambda^{m} - lambda^{m-1}|, 0 for the first row
    bool has_diff = false;
    std::string status;      // converged | floor | stalled
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    /// Least-squares fit of log2(diff) vs m per n; the rate is the negated
    /// slope (diff ~ C * 2^{-rate*m}).
    double fitted_rate(int n) const;
    std::vector<double> diffs(int n) const;
};

/// lambda_1 at each (n, m), m = 0..m_max, via rayleigh_descent.
/// Solver stalls are recorded per row; remaining rows still run.
ConvergenceTable converge_study(const geom::DomainOracle& oracle,
                                const std::vector<int>& n_list, int m_max,
                                const eig::DescentOptions& opts = {});

void write_csv(const ConvergenceTable& table, const std::string& path);
ConvergenceTable convergence_from_csv(const std::string& path);

}  // namespace roughspec::analysis
