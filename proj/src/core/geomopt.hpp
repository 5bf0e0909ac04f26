#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "core/basis.hpp"
#include "core/error.hpp"
#include "core/molsys.hpp"
#include "core/scf.hpp"

namespace radscf {

enum class OptMethod { steepest_descent_with_backtracking, quasi_newton };

struct OptimizerConfig {
    double fd_step = 5e-3;   // bohr, central-difference displacement
    double grad_tol = 3e-4;  // hartree/bohr, max-norm of the projected gradient
    int max_steps = 100;
    OptMethod method = OptMethod::quasi_newton;
};

struct OptimizationResult {
    Molecule geometry;
    std::vector<double> energy_trace;  // starting energy plus each accepted step
    std::vector<Molecule> trajectory;  // geometries matching energy_trace
    bool converged = false;            // gradient tolerance reached
    int steps = 0;                     // accepted line-search steps
    double grad_max = 0.0;             // max |g_i| at the returned geometry
    double e_total = 0.0;
};

// Line search exhausted its backtracks; carries the geometry the optimizer
// was at so the caller can inspect or save it.
struct StalledOptimization : ScfError {
    Molecule last_geometry;
    StalledOptimization(const std::string& msg, Molecule geom)
        : ScfError(msg), last_geometry(std::move(geom)) {}
};

struct ScanPoint {
    double distance = 0.0;  // bohr
    double e_total = 0.0;
};

// Full SCF at one geometry: basis assignment, integrals, UHF.
SCFResult single_point(const Molecule& m, const BasisSet& set, const SCFConfig& cfg);

// Central-difference Cartesian gradient in hartree/bohr, length 3n ordered
// (atom0.x, atom0.y, atom0.z, atom1.x, ...). Rigid translations and rotations
// are projected out; displaced SCF runs warm-start from the base density.
Eigen::VectorXd numerical_gradient(const Molecule& m, const BasisSet& set,
                                   const SCFConfig& scf_cfg, const OptimizerConfig& cfg);

// Energy minimization over Cartesian coordinates with backtracking line
// search. Runs the given start plus three slightly perturbed starts (fixed
// seed) and reports the lowest minimum found.
OptimizationResult optimize(const Molecule& m, const BasisSet& set, const SCFConfig& scf_cfg,
                            const OptimizerConfig& cfg);

// Energy profile over the a-b separation: atom_b slides along the a->b axis,
// all other atoms stay fixed. Distances in bohr, endpoints included, points
// evenly spaced. Indices are 0-based.
std::vector<ScanPoint> scan_bond(const Molecule& m, const BasisSet& set,
                                 const SCFConfig& scf_cfg, int atom_a, int atom_b, double from,
                                 double to, int steps);

// Multi-frame XYZ; every frame's comment line carries its energy.
std::string trajectory_xyz(const OptimizationResult& r);

}  // namespace radscf
