#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "core/molsys.hpp"

namespace radscf {

struct Primitive {
    double exponent = 0.0;
    double coefficient = 0.0;
};

struct Shell {
    int l = 0;  // 0 = s, 1 = p, 2 = d
    std::vector<Primitive> primitives;
};

struct BasisSet {
    std::string name;
    std::map<std::string, std::vector<Shell>> shells;  // element symbol -> shells
};

struct BasisFunction {
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    std::array<int, 3> powers = {0, 0, 0};
    std::vector<Primitive> primitives;  // coefficients carry full normalization
    int atom_index = 0;
};

// Shell-level view of the assigned functions: all Cartesian components of one
// shell share primitives (normalized for the axis component) and differ only
// by a per-component scale; integral drivers iterate these blocks.
struct ShellBlock {
    int first = 0;   // index of the block's first basis function
    int count = 0;   // number of Cartesian components (1, 3, or 6)
    int l = 0;
    int atom_index = 0;
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    std::vector<Primitive> primitives;          // axis-normalized, contraction-scaled
    std::array<double, 6> component_scale{};    // per-component factor
};

struct MolecularBasis {
    std::vector<BasisFunction> functions;
    std::vector<ShellBlock> blocks;
    std::vector<int> owner;  // function index -> atom index

    int n() const { return static_cast<int>(functions.size()); }
};

// Cartesian component order within a shell; p is x,y,z and d is
// xx,yy,zz,xy,xz,yz.
const std::vector<std::array<int, 3>>& cartesian_powers(int l);

// Basis-file text -> BasisSet (see README for the format).  Raw coefficients
// are kept as written; normalization happens in assign_basis.
BasisSet load_basis(const std::string& text, const std::string& name = "");
BasisSet load_basis_file(const std::string& path);

// Locates "<name>.bas" in the colon-separated directory list `search_path`
// (empty entries skipped), then in RADSCF_BASIS_PATH, then in the built-in
// data directory.
std::string find_basis_file(const std::string& name, const std::string& search_path = "");

// N such that N * x^lx y^ly z^lz exp(-alpha r^2) has unit self-overlap.
double normalization_constant(double alpha, const std::array<int, 3>& powers);

// Expands the set over a molecule into normalized basis functions, emitted
// atom-by-atom, shells in file order, components in cartesian_powers order.
MolecularBasis assign_basis(const Molecule& m, const BasisSet& set);

}  // namespace radscf
