#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "core/jsonw.hpp"
#include "core/molsys.hpp"
#include "core/scf.hpp"

namespace radscf {

struct AtomicPopulations {
    std::vector<double> population;  // gross Mulliken population per atom
    std::vector<double> charge;      // Z minus population
    std::vector<double> spin;        // alpha-minus-beta population per atom
};

struct BondOrder {
    int a, b;  // atom indices, a < b
    double overlap_population;
};

struct BondOrderTable {
    std::vector<BondOrder> entries;  // sorted by (a, b)

    const BondOrder* find(int a, int b) const;
};

// q_A = sum over A's basis functions of (P_total S) diagonal elements.
std::vector<double> mulliken_populations(const Eigen::MatrixXd& p_total, const Eigen::MatrixXd& S,
                                         const std::vector<int>& owner, int n_atoms);

// Same condensation applied to the spin density P_alpha - P_beta.
std::vector<double> atomic_spin_densities(const Eigen::MatrixXd& p_alpha,
                                          const Eigen::MatrixXd& p_beta, const Eigen::MatrixXd& S,
                                          const std::vector<int>& owner, int n_atoms);

// A = 2 sum_{i on A, j on B} P_ij S_ij
double overlap_population(const Eigen::MatrixXd& p_total, const Eigen::MatrixXd& S,
                          const std::vector<int>& owner, int atom_a, int atom_b);

struct AnalysisResult {
    AtomicPopulations populations;
    BondOrderTable bond_orders;
};

// Condenses a converged SCF result; bond orders cover all perceived-bond
// pairs plus any extra requested pairs. Refuses unconverged input.
AnalysisResult analyze(const SCFResult& result, const IntegralTables& tables, const Molecule& m,
                       const MolecularBasis& basis,
                       const std::vector<std::pair<int, int>>& extra_pairs = {});

Json analysis_report_json(const Molecule& m, const AnalysisResult& ar);
std::string analysis_report_text(const Molecule& m, const AnalysisResult& ar);

}  // namespace radscf
