#include "core/geomopt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/Dense>

#include "core/integrals.hpp"

namespace radscf {

namespace {

constexpr int kMultistarts = 3;
constexpr double kPerturbation = 0.05;       // bohr
constexpr std::uint64_t kSeed = 0x9e3779b97f4a7c15ULL;
constexpr int kMaxBacktracks = 20;
constexpr double kMaxStepNorm = 0.5;         // bohr, trust-region style cap

Eigen::VectorXd coordinates(const Molecule& m) {
    Eigen::VectorXd x(3 * m.n_atoms());
    for (int a = 0; a < m.n_atoms(); ++a) x.segment<3>(3 * a) = m.atoms[a].position;
    return x;
}

Molecule with_coordinates(const Molecule& m, const Eigen::VectorXd& x) {
    Molecule out = m;
    for (int a = 0; a < out.n_atoms(); ++a) out.atoms[a].position = x.segment<3>(3 * a);
    return out;
}

// Orthonormal basis of the rigid-body motions (3 translations plus the
// rotations about the centroid), rank-reduced so linear molecules lose the
// axis rotation.
Eigen::MatrixXd rigid_motion_basis(const Molecule& m) {
    const int n = m.n_atoms();
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& a : m.atoms) centroid += a.position;
    centroid /= static_cast<double>(n);

    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3 * n, 6);
    for (int a = 0; a < n; ++a) {
        for (int d = 0; d < 3; ++d) b(3 * a + d, d) = 1.0;
        const Eigen::Vector3d r = m.atoms[a].position - centroid;
        for (int axis = 0; axis < 3; ++axis) {
            Eigen::Vector3d e = Eigen::Vector3d::Zero();
            e[axis] = 1.0;
            b.block<3, 1>(3 * a, 3 + axis) = e.cross(r);
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-8 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixU().leftCols(rank);
}

void project_out_rigid_motion(const Molecule& m, Eigen::VectorXd& g) {
    const Eigen::MatrixXd q = rigid_motion_basis(m);
    g -= q * (q.transpose() * g);
}

SCFConfig warm_config(const SCFConfig& base, const SCFResult& from) {
    SCFConfig cfg = base;
    cfg.initial_guess = InitialGuess::provided_density;
    cfg.initial_p_alpha = from.p_alpha;
    cfg.initial_p_beta = from.p_beta;
    return cfg;
}

Eigen::VectorXd gradient_at(const Molecule& m, const BasisSet& set, const SCFConfig& scf_cfg,
                            const OptimizerConfig& cfg, const SCFResult& base) {
    if (cfg.fd_step <= 0.0) throw InputError("finite-difference step must be positive");
    if (cfg.grad_tol <= 0.0) throw InputError("gradient tolerance must be positive");
    const int n = m.n_atoms();
    const SCFConfig warm = warm_config(scf_cfg, base);
    Eigen::VectorXd g(3 * n);
    static const char axis_name[3] = {'x', 'y', 'z'};
    for (int a = 0; a < n; ++a) {
        for (int d = 0; d < 3; ++d) {
            double e_pm[2];
            for (int side = 0; side < 2; ++side) {
                const double sign = side == 0 ? 1.0 : -1.0;
                Molecule disp = m;
                disp.atoms[a].position[d] += sign * cfg.fd_step;
                const SCFResult r = single_point(disp, set, warm);
                if (!r.converged) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf,
                                  "gradient evaluation failed: SCF did not converge at the "
                                  "geometry displaced %c%.4g bohr along %c of atom %d",
                                  sign > 0 ? '+' : '-', cfg.fd_step, axis_name[d], a);
                    throw ScfError(buf);
                }
                e_pm[side] = r.e_total;
            }
            g(3 * a + d) = (e_pm[0] - e_pm[1]) / (2.0 * cfg.fd_step);
        }
    }
    project_out_rigid_motion(m, g);
    return g;
}

struct StartOutcome {
    OptimizationResult result;
    bool stalled = false;
    std::string stall_message;
    Molecule stall_geometry;
};

StartOutcome optimize_one_start(const Molecule& m0, const BasisSet& set,
                                const SCFConfig& scf_cfg, const OptimizerConfig& cfg) {
    StartOutcome out;
    OptimizationResult& res = out.result;

    SCFResult current = single_point(m0, set, scf_cfg);
    if (!current.converged)
        throw ScfError("geometry optimization requires a converged SCF at the starting geometry");

    Molecule mol = m0;
    double energy = current.e_total;
    res.energy_trace.push_back(energy);
    res.trajectory.push_back(mol);

    Eigen::VectorXd g = gradient_at(mol, set, scf_cfg, cfg, current);
    const int dim = static_cast<int>(g.size());
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(dim, dim);

    for (int step = 0; step < cfg.max_steps; ++step) {
        if (g.cwiseAbs().maxCoeff() < cfg.grad_tol) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd p = cfg.method == OptMethod::quasi_newton
                                ? Eigen::VectorXd(-(hinv * g))
                                : Eigen::VectorXd(-g);
        if (p.dot(g) >= 0.0) {  // not a descent direction, restart the Hessian
            hinv.setIdentity();
            p = -g;
        }
        const double pnorm = p.norm();
        if (pnorm > kMaxStepNorm) p *= kMaxStepNorm / pnorm;

        const Eigen::VectorXd x = coordinates(mol);
        double alpha = 1.0;
        bool accepted = false;
        Molecule trial_mol;
        SCFResult trial;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            trial_mol = with_coordinates(mol, x + alpha * p);
            trial = single_point(trial_mol, set, warm_config(scf_cfg, current));
            if (trial.converged && trial.e_total < energy) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "optimization stalled: no energy decrease after %d backtracks at step %d",
                          kMaxBacktracks, step + 1);
            out.stalled = true;
            out.stall_message = buf;
            out.stall_geometry = mol;
            return out;
        }

        const Eigen::VectorXd g_new = gradient_at(trial_mol, set, scf_cfg, cfg, trial);
        if (cfg.method == OptMethod::quasi_newton) {
            const Eigen::VectorXd s = alpha * p;
            const Eigen::VectorXd y = g_new - g;
            const double sy = s.dot(y);
            if (sy > 1e-10) {  // curvature condition, else keep the previous estimate
                const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(dim, dim);
                const double rho = 1.0 / sy;
                hinv = (i - rho * s * y.transpose()) * hinv * (i - rho * y * s.transpose()) +
                       rho * s * s.transpose();
            }
        }

        mol = trial_mol;
        current = trial;
        energy = trial.e_total;
        g = g_new;
        res.energy_trace.push_back(energy);
        res.trajectory.push_back(mol);
        ++res.steps;
    }
    if (!res.converged && g.cwiseAbs().maxCoeff() < cfg.grad_tol) res.converged = true;

    res.geometry = mol;
    res.e_total = energy;
    res.grad_max = g.cwiseAbs().maxCoeff();
    return out;
}

}  // namespace

SCFResult single_point(const Molecule& m, const BasisSet& set, const SCFConfig& cfg) {
    const MolecularBasis basis = assign_basis(m, set);
    const IntegralTables tables = build_integral_tables(basis, m, cfg.n_threads);
    return scf_uhf(m, basis, tables, cfg);
}

Eigen::VectorXd numerical_gradient(const Molecule& m, const BasisSet& set,
                                   const SCFConfig& scf_cfg, const OptimizerConfig& cfg) {
    const SCFResult base = single_point(m, set, scf_cfg);
    if (!base.converged)
        throw ScfError("gradient evaluation requires a converged SCF at the base geometry");
    return gradient_at(m, set, scf_cfg, cfg, base);
}

OptimizationResult optimize(const Molecule& m, const BasisSet& set, const SCFConfig& scf_cfg,
                            const OptimizerConfig& cfg) {
    if (cfg.max_steps < 1) throw InputError("max_steps must be at least 1");

    StartOutcome primary = optimize_one_start(m, set, scf_cfg, cfg);
    if (primary.stalled)
        throw StalledOptimization(primary.stall_message, primary.stall_geometry);

    // Gradient already below tolerance at the input geometry: done, skip the
    // perturbed restarts.
    if (primary.result.steps == 0 && primary.result.converged) return primary.result;

    // Crude global-minimum guard: restart from slightly displaced geometries
    // and keep whichever basin ends lowest. A restart that stalls or fails is
    // dropped; the primary start's outcome already stands on its own.
    std::mt19937_64 rng(kSeed);
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    };
    OptimizationResult best = primary.result;
    for (int k = 0; k < kMultistarts; ++k) {
        Molecule pert = m;
        for (auto& atom : pert.atoms)
            for (int d = 0; d < 3; ++d)
                atom.position[d] += kPerturbation * (2.0 * uniform() - 1.0);
        try {
            StartOutcome alt = optimize_one_start(pert, set, scf_cfg, cfg);
            if (alt.stalled || !alt.result.converged) continue;
            if (alt.result.e_total < best.e_total - 1e-10) best = alt.result;
        } catch (const Error&) {
            continue;
        }
    }
    return best;
}

std::vector<ScanPoint> scan_bond(const Molecule& m, const BasisSet& set,
                                 const SCFConfig& scf_cfg, int atom_a, int atom_b, double from,
                                 double to, int steps) {
    const int n = m.n_atoms();
    if (atom_a < 0 || atom_a >= n || atom_b < 0 || atom_b >= n)
        throw InputError("scan atom index out of range");
    if (atom_a == atom_b) throw InputError("scan needs two distinct atoms");
    if (steps < 1) throw InputError("scan needs at least one step");
    if (from <= 0.0 || to <= 0.0) throw InputError("scan distances must be positive");

    const Eigen::Vector3d pa = m.atoms[atom_a].position;
    Eigen::Vector3d axis = m.atoms[atom_b].position - pa;
    const double r0 = axis.norm();
    if (r0 < 1e-12) throw InputError("scan atoms coincide; the displacement axis is undefined");
    axis /= r0;

    std::vector<ScanPoint> points;
    points.reserve(static_cast<size_t>(steps));
    SCFConfig cfg = scf_cfg;
    for (int i = 0; i < steps; ++i) {
        const double r =
            steps == 1 ? from : from + (to - from) * static_cast<double>(i) / (steps - 1);
        Molecule point_mol = m;
        point_mol.atoms[atom_b].position = pa + r * axis;
        const SCFResult res = single_point(point_mol, set, cfg);
        if (!res.converged) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "scan point at %.6f bohr did not converge", r);
            throw ScfError(buf);
        }
        points.push_back({r, res.e_total});
        // Warm-start the next point from this converged density.
        cfg = warm_config(scf_cfg, res);
    }
    return points;
}

std::string trajectory_xyz(const OptimizationResult& r) {
    std::string out;
    char comment[64];
    for (size_t i = 0; i < r.trajectory.size(); ++i) {
        std::snprintf(comment, sizeof comment, "e_total=%.12f", r.energy_trace[i]);
        out += serialize_xyz(r.trajectory[i], comment);
    }
    return out;
}

}  // namespace radscf
