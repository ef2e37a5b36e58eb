#pragma once

#include <string>
#include <vector>

#include "roughspec/fem/mesh.hpp"
#include "roughspec/fem/pencil.hpp"

namespace roughspec::analysis {

/// Numerical check of the collar inequality
///   ||u||_{L2(col_r)} <= 5 r ||grad u||_{L2(col_{2*sqrt(2)*r})}
/// over random discrete H^1_0 samples on a pixelation. Collar-restricted
/// forms use 16-point subsampling per triangle, so the reported ratios carry
/// that quadrature bias.
struct PoincareReport {
    double r = 0.0;
    double q_estimate = 0.0;
    bool hypothesis_ok = false;  // 4*sqrt(2)*r < Q
    int trials = 0;
    int skipped = 0;             // both norms ~0 (u away from the collar)
    double max_ratio = 0.0;
    std::vector<double> ratios;
    bool pass = false;           // max_ratio <= 5.5
    bool degenerate = false;     // empty collar at this r
    std::string warning;
};

PoincareReport poincare_check(const fem::Mesh& mesh, double r, int trials,
                              unsigned seed = 0);

void write_csv(const PoincareReport& rep, const std::string& path);

}  // namespace roughspec::analysis
