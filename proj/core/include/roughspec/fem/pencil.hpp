#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "roughspec/fem/mesh.hpp"

namespace roughspec::fem {

/// Symmetric sparse matrix. The logical content is the upper triangle
/// (row <= col); a full CSR pattern is kept alongside for the matvec, whose
/// per-row accumulation order is fixed so results are bit-reproducible
/// independently of threading.
class SymmetricSparse {
  public:
    SymmetricSparse() = default;

    /// entries must hold each logical (row <= col) entry exactly once.
    SymmetricSparse(std::int32_t dim,
                    std::vector<std::tuple<std::int32_t, std::int32_t, double>>
                        upper_entries);

    std::int32_t dim() const { return dim_; }
    const std::vector<std::tuple<std::int32_t, std::int32_t, double>>&
    upper() const {
        return upper_;
    }

    void matvec(std::span<const double> x, std::span<double> y) const;
    std::vector<double> matvec(const std::vector<double>& x) const;

    /// x^T (this) y.
    double quadratic(std::span<const double> x, std::span<const double> y) const;

  private:
    std::int32_t dim_ = 0;
    std::vector<std::tuple<std::int32_t, std::int32_t, double>> upper_;
    std::vector<std::int64_t> row_ptr_;
    std::vector<std::int32_t> cols_;
    std::vector<double> vals_;
};

/// Stiffness/mass pair over the interior degrees of freedom.
struct Pencil {
    SymmetricSparse A;  // stiffness
    SymmetricSparse B;  // mass (positive definite)
    std::int32_t dof = 0;
    double h = 0.0;
};

/// P1 element matrices for a right isosceles triangle with legs h and the
/// right-angle vertex first: K_e = (1/2) [[2,-1,-1],[-1,1,0],[-1,0,1]] and
/// M_e = (h^2/24) [[2,1,1],[1,2,1],[1,1,2]].
extern const double kElementStiffness[3][3];
void element_mass(double h, double out[3][3]);

/// Assemble the pencil with Dirichlet rows/columns dropped. Errors when the
/// mesh has no interior dof ("mesh too coarse for Dirichlet problem").
Pencil assemble(const Mesh& mesh);

/// Matrix Market symmetric coordinate export (upper triangle entries).
void write_matrix_market(const SymmetricSparse& mat, const std::string& path);

}  // namespace roughspec::fem
