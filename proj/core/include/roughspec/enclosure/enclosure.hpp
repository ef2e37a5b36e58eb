#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roughspec/eig/descent.hpp"
#include "roughspec/fem/mesh.hpp"
#include "roughspec/fem/pencil.hpp"
#include "roughspec/geometry/oracle.hpp"
#include "roughspec/geometry/pixel_domain.hpp"

namespace roughspec::enc {

/// How q^m is obtained. The pencil route (the Liu-Oishi (D^m, E^m) pencil)
/// requires element formulas from the companion paper that this codebase does
/// not carry; requesting it is an explicit error, never a silent fallback.
enum class QmMode { kConstant, kPencil };

struct QmConfig {
    QmMode mode = QmMode::kConstant;
    double c0 = 0.493;  // configuration default, not ground truth
};

/// q^m = (C0 * h)^2 in constant mode.
double compute_qm(const fem::Mesh& mesh, const QmConfig& cfg);

/// Two-sided enclosure (lambda_m/(1 + lambda_m q_m), lambda_m); valid only
/// while q_m * lambda_m < 1, otherwise the caller must refine.
std::pair<double, double> enclose(double lambda_m, double q_m);

/// The two d_AW error terms of the refinement schedule, evaluated verbatim:
///   E1 = max_{k<=M} (q+d)(l_k+d)^2 / (1 + (q-d)_+ (l_k-d)_+)
///   E2 = 2^{-(l_M-d)/2+1}
std::pair<double, double> error_terms(int M, double delta, double q_md,
                                      const std::vector<double>& lambdas_md);

struct EnclosureInterval {
    int k = 0;
    double lower = 0.0;
    double upper = 0.0;
};

struct ComponentProvenance {
    int component = 0;
    size_t sites = 0;
    int m = 0;
    int M = 0;
    double delta = 0.0;
    double q_m = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    std::int32_t dof = 0;
    bool dense_certified = false;  // matrix level carried Oishi bounds
    std::string solver;
};

struct ScheduleTraceEntry {
    int component = 0;
    int M = 0;
    int m = 0;
    double delta = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double total = 0.0;
};

struct SpectrumEnclosure {
    std::vector<EnclosureInterval> intervals;  // sorted by upper
    double q_m = 0.0;        // max over components
    double aw_radius = 0.0;  // achieved d_AW accuracy vs sigma(O_n)
    bool certified = false;  // true only for pencil-mode q and dense bounds
    bool target_reached = true;
    bool asymptotic_only = false;  // gamma_n: Mosco term unquantified
    int n = 0;
    double eps_requested = 0.0;
    double c0 = 0.0;
    std::vector<ComponentProvenance> provenance;
    std::vector<ScheduleTraceEntry> trace;
    std::string note;
};

struct GammaPixLimits {
    int m_max = 10;
    int M_max = 64;
    std::int64_t dof_max = 400000;
};

struct SolverConfig {
    QmConfig qm;
    std::int32_t dense_cap = 3000;  // largest dof solved by certified Jacobi
    double grad_tol = 1e-10;
    std::int64_t max_iter = 200000;
};

/// Adaptive two-sided enclosure of the Dirichlet spectrum of a pixelated
/// domain, to d_AW accuracy eps against sigma(O_n). Processes connected
/// components separately and unites the spectra. When limits are exhausted
/// the partial result is flagged (target_reached = false) and aw_radius
/// reports the achieved delta + E1 + E2.
SpectrumEnclosure gamma_pix(const geom::PixelDomain& pd, double eps,
                            const GammaPixLimits& limits = {},
                            const SolverConfig& solver = {});

/// The n-th algorithm: pixelate with the |x| <= n information truncation,
/// then gamma_pix at eps = 1/n. The returned radius concerns sigma(O_n) only;
/// the Mosco term toward sigma(O) carries no rate (asymptotic_only).
SpectrumEnclosure gamma_n(const geom::DomainOracle& oracle, int n,
                          const GammaPixLimits& limits = {},
                          const SolverConfig& solver = {});

std::string to_json(const SpectrumEnclosure& se);
SpectrumEnclosure spectrum_from_json(const std::string& text);
void write_json(const SpectrumEnclosure& se, const std::string& path);

}  // namespace roughspec::enc
