#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "core/integrals.hpp"
#include "core/molsys.hpp"

namespace radscf {

enum class InitialGuess { core_hamiltonian, provided_density };

struct SCFConfig {
    int max_iterations = 128;
    double energy_tol = 1e-9;        // hartree
    double density_rms_tol = 1e-8;
    int diis_depth = 8;              // below 2 disables DIIS
    InitialGuess initial_guess = InitialGuess::core_hamiltonian;
    double level_shift = 0.0;        // hartree, raises virtuals during iteration
    bool restricted = false;         // RHF: requires n_alpha == n_beta
    int n_threads = 1;               // Fock-build parallelism
    Eigen::MatrixXd initial_p_alpha; // used with InitialGuess::provided_density
    Eigen::MatrixXd initial_p_beta;
};

struct SCFIteration {
    int iteration;
    double e_total;
    double delta_e;
    double density_rms;
    double diis_error;
};

struct SCFResult {
    Eigen::MatrixXd c_alpha, c_beta;   // MO coefficients, columns by ascending energy
    Eigen::VectorXd eps_alpha, eps_beta;
    Eigen::MatrixXd p_alpha, p_beta;
    double e_total = 0.0;
    double e_electronic = 0.0;
    double e_nuclear = 0.0;
    int iterations = 0;
    bool converged = false;
    double s_squared = 0.0;
    double commutator_max = 0.0;       // max |FPS - SPF| over both spins at exit
    std::vector<SCFIteration> log;
};

// Symmetric (Löwdin) orthogonalizer S^(-1/2). Throws on near linear
// dependence, naming the offending overlap eigenvalue.
Eigen::MatrixXd lowdin_x(const Eigen::MatrixXd& S);

Eigen::MatrixXd core_hamiltonian(const IntegralTables& t);

// P = sum of outer products of the first n_occ columns.
Eigen::MatrixXd density_matrix(const Eigen::MatrixXd& C, int n_occ);

// F^sigma = h + J[P_alpha + P_beta] - K[P^sigma]
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_fock_uhf(const Eigen::MatrixXd& p_alpha,
                                                           const Eigen::MatrixXd& p_beta,
                                                           const Eigen::MatrixXd& h,
                                                           const IntegralTables& t,
                                                           int n_threads = 1);

// FC = SCE via symmetric orthogonalization; eigenvalues ascending.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> solve_roothaan(const Eigen::MatrixXd& F,
                                                           const Eigen::MatrixXd& S);

struct DiisEntry {
    Eigen::MatrixXd fock;      // any consistent stacking of the Fock data
    Eigen::VectorXd error;     // flattened orthonormal-basis commutator
};

// Least-squares extrapolation with sum(c) = 1. Drops the oldest entry while
// the bordered system is ill-conditioned; a single survivor is returned as is.
Eigen::MatrixXd diis_extrapolate(std::vector<DiisEntry>& history);

double total_energy(const Eigen::MatrixXd& p_alpha, const Eigen::MatrixXd& p_beta,
                    const Eigen::MatrixXd& h, const Eigen::MatrixXd& f_alpha,
                    const Eigen::MatrixXd& f_beta, double e_nn);

SCFResult scf_uhf(const Molecule& m, const MolecularBasis& basis, const IntegralTables& t,
                  const SCFConfig& cfg);

// One machine-parseable "key=value" record per iteration.
std::string format_iteration_log(const std::vector<SCFIteration>& log);

}  // namespace radscf
