#include "roughspec/enclosure/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "roughspec/eig/dense.hpp"

namespace roughspec::enc {

double compute_qm(const fem::Mesh& mesh, const QmConfig& cfg) {
    if (cfg.mode == QmMode::kPencil)
        throw std::runtime_error(
            "compute_qm: pencil mode external formula not provided");
    const double c0h = cfg.c0 * mesh.h;
    return c0h * c0h;
}

std::pair<double, double> enclose(double lambda_m, double q_m) {
    if (!(q_m * lambda_m < 1.0))
        throw std::runtime_error("enclose: enclosure invalid at this refinement");
    return {lambda_m / (1.0 + lambda_m * q_m), lambda_m};
}

std::pair<double, double> error_terms(int M, double delta, double q_md,
                                      const std::vector<double>& lambdas_md) {
    if (M < 1 || lambdas_md.size() < static_cast<size_t>(M))
        throw std::invalid_argument("error_terms: need M sorted eigenvalues");
    auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
    double e1 = 0.0;
    for (int k = 0; k < M; ++k) {
        const double lk = lambdas_md[static_cast<size_t>(k)];
        const double num = (q_md + delta) * (lk + delta) * (lk + delta);
        const double den = 1.0 + pos(q_md - delta) * pos(lk - delta);
        e1 = std::max(e1, num / den);
    }
    const double lM = lambdas_md[static_cast<size_t>(M - 1)];
    const double e2 = std::exp2(-(lM - delta) / 2.0 + 1.0);
    return {e1, e2};
}

namespace {

struct MatrixLevel {
    std::vector<double> values;
    bool dense_certified = false;
    std::string solver;
    std::int32_t dof = 0;
};

eig::DenseMatrix to_dense(const fem::SymmetricSparse& s) {
    eig::DenseMatrix d(s.dim(), s.dim());
    for (const auto& [r, c, v] : s.upper()) {
        d(r, c) = v;
        if (r != c) d(c, r) = v;
    }
    return d;
}

/// First M pencil eigenvalues at accuracy delta: certified Jacobi when the
/// problem is small enough, Rayleigh descent (uncertified) otherwise.
MatrixLevel matrix_eigenvalues(const fem::Pencil& pencil, int M, double delta,
                               const SolverConfig& solver) {
    MatrixLevel out;
    out.dof = pencil.dof;
    if (pencil.dof <= solver.dense_cap) {
        try {
            const auto ea =
                eig::gamma_mat(to_dense(pencil.A), to_dense(pencil.B), delta);
            out.values.assign(ea.values.begin(),
                              ea.values.begin() +
                                  std::min<size_t>(ea.values.size(),
                                                   static_cast<size_t>(M)));
            out.dense_certified = true;
            out.solver = "jacobi";
            return out;
        } catch (const std::runtime_error&) {
            // delta below the Jacobi bound's floating-point floor; degrade to
            // the uncertified path below.
        }
    }
    {
        eig::DescentOptions opts;
        opts.grad_tol = solver.grad_tol;
        opts.max_iter = solver.max_iter;
        const auto dr = eig::rayleigh_descent(pencil.A, pencil.B,
                                              std::min<int>(M, pencil.dof),
                                              opts);
        for (const auto& p : dr.pairs) out.values.push_back(p.value);
        out.dense_certified = false;
        out.solver = "rayleigh_descent";
    }
    return out;
}

struct ComponentResult {
    std::vector<EnclosureInterval> intervals;
    ComponentProvenance prov;
    std::vector<ScheduleTraceEntry> trace;
    double achieved = 0.0;
    bool reached = false;
};

ComponentResult drive_component(const geom::PixelDomain& comp, int index,
                                double eps, const GammaPixLimits& limits,
                                const SolverConfig& solver) {
    ComponentResult res;
    res.prov.component = index;
    res.prov.sites = comp.sites.size();

    // Coarsest refinement with at least one interior dof.
    int m = 0;
    fem::Mesh mesh;
    fem::Pencil pencil;
    bool have_mesh = false;
    for (; m <= limits.m_max; ++m) {
        mesh = fem::triangulate(comp, m);
        if (mesh.n_interior > 0) {
            pencil = fem::assemble(mesh);
            have_mesh = true;
            break;
        }
    }
    if (!have_mesh)
        throw std::runtime_error(
            "gamma_pix: no interior dof within refinement limits");

    MatrixLevel lvl;
    double q = compute_qm(mesh, solver.qm);
    int current_M = 0;
    double current_delta = std::numeric_limits<double>::infinity();
    auto ensure_values = [&](int M, double delta) {
        if (current_M < M || delta < current_delta) {
            lvl = matrix_eigenvalues(pencil, M, delta, solver);
            current_M = M;
            current_delta = delta;
        }
    };

    double best_total = std::numeric_limits<double>::infinity();
    for (int M = 1; M <= limits.M_max; ++M) {
        if (pencil.dof < M) {
            // M may not exceed dim V^m; refine to admit more eigenvalues.
            if (m >= limits.m_max) break;
            ++m;
            mesh = fem::triangulate(comp, m);
            pencil = fem::assemble(mesh);
            q = compute_qm(mesh, solver.qm);
            current_M = 0;
            current_delta = std::numeric_limits<double>::infinity();
        }
        ensure_values(M, 1.0 / M);
        const double lam_M = lvl.values[static_cast<size_t>(M - 1)];
        // Matrix accuracy decoupled from the schedule target so that the
        // delta-inflation in E1 cannot dominate the budget.
        const double delta =
            std::min(1.0 / M, eps / (8.0 * (lam_M + 1.0) * (lam_M + 1.0)));
        ensure_values(M, delta);
        auto [e1, e2] = error_terms(M, delta, q, lvl.values);
        // The tail term only shrinks by admitting more eigenvalues.
        if (e2 > 0.5 * eps && M < limits.M_max &&
            (pencil.dof > M || m < limits.m_max))
            continue;

        // Refine m until delta + E1 + E2 meets eps (or limits stop us).
        while (true) {
            const double total = delta + e1 + e2;
            res.trace.push_back({index, M, m, delta, e1, e2, total});
            best_total = std::min(best_total, total);
            if (total <= eps || m >= limits.m_max) break;
            const fem::Mesh finer = fem::triangulate(comp, m + 1);
            if (static_cast<std::int64_t>(finer.n_interior) > limits.dof_max)
                break;
            ++m;
            mesh = finer;
            pencil = fem::assemble(mesh);
            q = compute_qm(mesh, solver.qm);
            current_M = 0;
            current_delta = std::numeric_limits<double>::infinity();
            ensure_values(M, delta);
            std::tie(e1, e2) = error_terms(M, delta, q, lvl.values);
        }

        const double total = delta + e1 + e2;
        res.achieved = total;
        res.reached = total <= eps;
        res.prov.m = m;
        res.prov.M = M;
        res.prov.delta = delta;
        res.prov.q_m = q;
        res.prov.e1 = e1;
        res.prov.e2 = e2;
        res.prov.dof = pencil.dof;
        res.prov.dense_certified = lvl.dense_certified;
        res.prov.solver = lvl.solver;
        for (int k = 0; k < M; ++k) {
            const double lk = lvl.values[static_cast<size_t>(k)];
            EnclosureInterval iv;
            iv.k = k + 1;
            iv.upper = lk + delta;
            // Guaranteed lower bound: lambda >= lambda^m/(1+lambda^m q) with
            // lambda^m >= lk - delta and q <= q + delta (monotonicity).
            const double lo = std::max(lk - delta, 0.0);
            const double qk = (q + delta) * (lk + delta);
            iv.lower = qk < 1.0 ? lo / (1.0 + lo * (q + delta)) : 0.0;
            res.intervals.push_back(iv);
        }
        return res;
    }
    // Limits exhausted before any M step completed its refinement.
    res.achieved = best_total;
    res.reached = false;
    res.prov.m = m;
    res.prov.dof = pencil.dof;
    return res;
}

}  // namespace

SpectrumEnclosure gamma_pix(const geom::PixelDomain& pd, double eps,
                            const GammaPixLimits& limits,
                            const SolverConfig& solver) {
    if (pd.empty()) throw std::invalid_argument("gamma_pix: empty pixel domain");
    if (!(eps > 0.0)) throw std::invalid_argument("gamma_pix: eps > 0");

    SpectrumEnclosure se;
    se.n = pd.n;
    se.eps_requested = eps;
    se.c0 = solver.qm.c0;
    se.certified = false;  // constant-mode q or uncertified matrix level

    const auto comps = geom::components(pd);
    double aw = 0.0;
    bool reached = true;
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        ComponentResult cr = drive_component(comps[ci], static_cast<int>(ci),
                                             eps, limits, solver);
        aw = std::max(aw, cr.achieved);
        reached = reached && cr.reached;
        se.q_m = std::max(se.q_m, cr.prov.q_m);
        se.provenance.push_back(cr.prov);
        se.trace.insert(se.trace.end(), cr.trace.begin(), cr.trace.end());
        se.intervals.insert(se.intervals.end(), cr.intervals.begin(),
                            cr.intervals.end());
    }
    std::sort(se.intervals.begin(), se.intervals.end(),
              [](const EnclosureInterval& a, const EnclosureInterval& b) {
                  return a.upper < b.upper;
              });
    for (size_t k = 0; k < se.intervals.size(); ++k)
        se.intervals[k].k = static_cast<int>(k) + 1;
    se.aw_radius = aw;
    se.target_reached = reached;
    if (!reached) se.note = "target accuracy not reached";
    return se;
}

SpectrumEnclosure gamma_n(const geom::DomainOracle& oracle, int n,
                          const GammaPixLimits& limits,
                          const SolverConfig& solver) {
    if (n < 1) throw std::invalid_argument("gamma_n: n >= 1");
    const geom::PixelDomain pd = geom::pixelate(oracle, n, /*truncate=*/true);
    if (pd.empty())
        throw std::runtime_error("gamma_n: empty pixelation at n=" +
                                 std::to_string(n));
    SpectrumEnclosure se = gamma_pix(pd, 1.0 / n, limits, solver);
    se.asymptotic_only = true;
    se.note += se.note.empty() ? "" : "; ";
    se.note +=
        "radius bounds d_AW to sigma(O_n) only; the Mosco term toward "
        "sigma(O) is o(1) without a rate";
    return se;
}

std::string to_json(const SpectrumEnclosure& se) {
    nlohmann::json j;
    j["n"] = se.n;
    j["eps_requested"] = se.eps_requested;
    j["eps_achieved"] = se.aw_radius;
    j["certified"] = se.certified;
    j["target_reached"] = se.target_reached;
    j["asymptotic_only"] = se.asymptotic_only;
    j["q_m"] = se.q_m;
    j["C0"] = se.c0;
    j["note"] = se.note;
    j["intervals"] = nlohmann::json::array();
    for (const auto& iv : se.intervals)
        j["intervals"].push_back(
            {{"k", iv.k}, {"lower", iv.lower}, {"upper", iv.upper}});
    j["provenance"] = nlohmann::json::array();
    for (const auto& p : se.provenance)
        j["provenance"].push_back({{"component", p.component},
                                   {"sites", p.sites},
                                   {"m", p.m},
                                   {"M", p.M},
                                   {"delta", p.delta},
                                   {"q_m", p.q_m},
                                   {"E1", p.e1},
                                   {"E2", p.e2},
                                   {"dof", p.dof},
                                   {"dense_certified", p.dense_certified},
                                   {"solver", p.solver}});
    return j.dump(2);
}

SpectrumEnclosure spectrum_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SpectrumEnclosure se;
    se.n = j.at("n").get<int>();
    se.eps_requested = j.at("eps_requested").get<double>();
    se.aw_radius = j.at("eps_achieved").get<double>();
    se.certified = j.at("certified").get<bool>();
    se.target_reached = j.at("target_reached").get<bool>();
    se.asymptotic_only = j.at("asymptotic_only").get<bool>();
    se.q_m = j.at("q_m").get<double>();
    se.c0 = j.at("C0").get<double>();
    se.note = j.at("note").get<std::string>();
    for (const auto& iv : j.at("intervals"))
        se.intervals.push_back({iv.at("k").get<int>(),
                                iv.at("lower").get<double>(),
                                iv.at("upper").get<double>()});
    for (const auto& p : j.at("provenance")) {
        ComponentProvenance cp;
        cp.component = p.at("component").get<int>();
        cp.sites = p.at("sites").get<size_t>();
        cp.m = p.at("m").get<int>();
        cp.M = p.at("M").get<int>();
        cp.delta = p.at("delta").get<double>();
        cp.q_m = p.at("q_m").get<double>();
        cp.e1 = p.at("E1").get<double>();
        cp.e2 = p.at("E2").get<double>();
        cp.dof = p.at("dof").get<std::int32_t>();
        cp.dense_certified = p.at("dense_certified").get<bool>();
        cp.solver = p.at("solver").get<std::string>();
        se.provenance.push_back(cp);
    }
    return se;
}

void write_json(const SpectrumEnclosure& se, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_json: cannot open " + path);
    f << to_json(se) << "\n";
}

}  // namespace roughspec::enc
