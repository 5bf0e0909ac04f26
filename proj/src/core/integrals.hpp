#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "core/basis.hpp"
#include "core/molsys.hpp"

namespace radscf {

// Reference integrals over single contracted functions (McMurchie-Davidson).
// These are the ground truth the table builder is checked against.
double overlap(const BasisFunction& a, const BasisFunction& b);
double kinetic(const BasisFunction& a, const BasisFunction& b);
double nuclear_attraction(const BasisFunction& a, const BasisFunction& b, const Molecule& m);
double eri(const BasisFunction& a, const BasisFunction& b, const BasisFunction& c,
           const BasisFunction& d);

inline std::size_t pair_index(int i, int j) {
    const auto hi = static_cast<std::size_t>(i > j ? i : j);
    const auto lo = static_cast<std::size_t>(i > j ? j : i);
    return hi * (hi + 1) / 2 + lo;
}

inline std::size_t quad_index(std::size_t pij, std::size_t pkl) {
    if (pij < pkl) {
        const auto t = pij;
        pij = pkl;
        pkl = t;
    }
    return pij * (pij + 1) / 2 + pkl;
}

struct IntegralTables {
    int n = 0;
    Eigen::MatrixXd S;  // overlap
    Eigen::MatrixXd T;  // kinetic energy
    Eigen::MatrixXd V;  // nuclear attraction (negative)
    std::vector<double> eri;  // unique two-electron integrals, packed by quad_index

    double eri_value(int i, int j, int k, int l) const {
        return eri[quad_index(pair_index(i, j), pair_index(k, l))];
    }
};

// Builds all tables shell-pair driven; every unique ERI slot is written exactly
// once, so the result is bit-identical for any n_threads.
IntegralTables build_integral_tables(const MolecularBasis& basis, const Molecule& m,
                                     int n_threads = 1);

// Binary snapshot of a table set ("RADSCF-INT v1", little-endian doubles).
void dump_integrals(const IntegralTables& t, const std::string& path);
IntegralTables load_integrals(const std::string& path);

}  // namespace radscf
