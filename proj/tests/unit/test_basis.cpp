#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "core/basis.hpp"
#include "core/integrals.hpp"
#include "support/paths.hpp"

using namespace radscf;
namespace ts = radscf::testsupport;

namespace {

Molecule single_atom(const std::string& element) {
    Molecule m;
    m.atoms.push_back({element, 0, Eigen::Vector3d::Zero()});
    m.atoms[0].atomic_number = atomic_number(element).value();
    if (m.n_electrons() % 2 == 1) m.multiplicity = 2;
    return m;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("minimal set shell inventory for H and O") {
    BasisSet set = load_basis_file(ts::basis_path("sto-3g"));
    CHECK(set.name == "sto-3g");
    REQUIRE(set.shells.count("H") == 1);
    REQUIRE(set.shells.at("H").size() == 1);
    CHECK(set.shells.at("H")[0].l == 0);
    CHECK(set.shells.at("H")[0].primitives.size() == 3);

    REQUIRE(set.shells.count("O") == 1);
    // 1s, 2s, 2p
    REQUIRE(set.shells.at("O").size() == 3);
    CHECK(set.shells.at("O")[0].l == 0);
    CHECK(set.shells.at("O")[1].l == 0);
    CHECK(set.shells.at("O")[2].l == 1);
}

TEST_CASE("basis text parser rejects malformed shells") {
    CHECK_THROWS_AS(load_basis("element H\nQ 1\n 1.0 1.0\n"), InputError);
    CHECK_THROWS_AS(load_basis("element H\nS 2\n 1.0 1.0\n"), InputError);
    CHECK_THROWS_AS(load_basis("S 1\n 1.0 1.0\n"), InputError);
    CHECK_THROWS_AS(load_basis("element H\nS 1\n -1.0 1.0\n"), InputError);
    CHECK_THROWS_AS(load_basis("element Xq\nS 1\n 1.0 1.0\n"), InputError);
}

TEST_CASE("function expansion order is atom-major, components in x,y,z order") {
    Molecule m = parse_xyz_file(ts::geometry_path("h2o"));
    BasisSet set = load_basis_file(ts::basis_path("sto-3g"));
    MolecularBasis basis = assign_basis(m, set);
    REQUIRE(basis.n() == 7);
    // O: 1s 2s 2px 2py 2pz, then H 1s, H 1s
    CHECK(basis.owner == std::vector<int>{0, 0, 0, 0, 0, 1, 2});
    CHECK(basis.functions[2].powers == std::array<int, 3>{1, 0, 0});
    CHECK(basis.functions[3].powers == std::array<int, 3>{0, 1, 0});
    CHECK(basis.functions[4].powers == std::array<int, 3>{0, 0, 1});
    REQUIRE(basis.blocks.size() == 5);
    CHECK(basis.blocks[2].count == 3);
}

TEST_CASE("every contracted function has unit self-overlap") {
    BasisSet set = load_basis_file(ts::basis_path("sto-3g"));
    for (const char* el : {"H", "C", "N", "O"}) {
        Molecule m = single_atom(el);
        MolecularBasis basis = assign_basis(m, set);
        for (const BasisFunction& f : basis.functions) {
            CAPTURE(el);
            CHECK(overlap(f, f) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    // split-valence d functions included
    BasisSet split = load_basis_file(ts::basis_path("3-21g"));
    MolecularBasis basis = assign_basis(single_atom("O"), split);
    REQUIRE(basis.n() == 9);
    for (const BasisFunction& f : basis.functions) {
        CHECK(overlap(f, f) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("normalization constant reproduces the closed form for s and p") {
    // N^2 * (pi/2a)^(3/2) = 1 for an s primitive
    const double a = 1.7;
    const double ns = normalization_constant(a, {0, 0, 0});
    CHECK(ns == doctest::Approx(std::pow(2.0 * a / M_PI, 0.75)).epsilon(1e-12));
    const double np = normalization_constant(a, {0, 1, 0});
    CHECK(np == doctest::Approx(2.0 * std::sqrt(a) * std::pow(2.0 * a / M_PI, 0.75))
                    .epsilon(1e-12));
}

TEST_CASE("element missing from the set is reported by name") {
    BasisSet set = load_basis("element H\nS 1\n 1.0 1.0\n");  // hydrogen-only set
    Molecule m = single_atom("C");
    CHECK_THROWS_WITH_AS(assign_basis(m, set), doctest::Contains("C"), InputError);
}

TEST_CASE("basis file resolution honors the explicit search path") {
    const std::string direct = find_basis_file("sto-3g");
    CHECK(direct == ts::basis_path("sto-3g"));
    const std::string via_path = find_basis_file("sto-3g", "/nonexistent:" + ts::data_dir() + "/basis");
    CHECK(via_path == ts::basis_path("sto-3g"));
    CHECK_THROWS_AS(find_basis_file("no-such-set"), InputError);
}

}  // TEST_SUITE
