#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "core/elements.hpp"
#include "core/error.hpp"

namespace radscf {

inline constexpr double kAngstromToBohr = 1.8897259886;

struct Atom {
    std::string element;
    int atomic_number = 0;
    Eigen::Vector3d position = Eigen::Vector3d::Zero();  // bohr
};

struct Molecule {
    std::vector<Atom> atoms;
    int charge = 0;
    int multiplicity = 1;

    int n_atoms() const { return static_cast<int>(atoms.size()); }
    int n_electrons() const;
    void validate() const;  // throws InputError on impossible charge/spin state
};

struct Bond {
    int a = 0, b = 0;        // atom indices, a < b
    double distance = 0.0;   // bohr
};

struct BondGraph {
    std::vector<Bond> edges;  // sorted by (a, b)

    bool connected(int a, int b) const;
    std::vector<int> neighbors(int atom) const;
};

struct ElectronCounts {
    int alpha = 0;
    int beta = 0;
};

// XYZ text -> Molecule.  Positions in the file are angstrom and are converted
// to bohr; "charge=<int>" and "mult=<int>" tokens are honored on the comment
// line.  An absent multiplicity defaults to singlet for even electron counts
// and doublet for odd ones.
Molecule parse_xyz(const std::string& text);
Molecule parse_xyz_file(const std::string& path);

// Molecule -> XYZ text (angstrom), carrying charge/multiplicity on the
// comment line so parse_xyz(serialize_xyz(m)) round-trips.
std::string serialize_xyz(const Molecule& m, const std::string& extra_comment = "");

ElectronCounts electron_counts(const Molecule& m);

double nuclear_repulsion(const Molecule& m);

// Covalent-distance bond perception: edge iff R <= scale * (r_cov_a + r_cov_b).
BondGraph perceive_bonds(const Molecule& m, double scale = 1.2);

}  // namespace radscf
