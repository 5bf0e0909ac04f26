#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace radscf {

// H through Ar is all this artifact needs; extend both tables together.
inline constexpr int kMaxZ = 18;

inline constexpr std::array<std::string_view, kMaxZ + 1> kSymbols = {
    "", "H", "He", "Li", "Be", "B", "C", "N", "O", "F",
    "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar"};

// Covalent radii in angstrom (Cordero et al. consensus values), used only by
// bond perception; sp3 values where hybridization matters.
inline constexpr std::array<double, kMaxZ + 1> kCovalentRadius = {
    0.0, 0.31, 0.28, 1.28, 0.96, 0.84, 0.76, 0.71, 0.66, 0.57,
    0.58, 1.66, 1.41, 1.21, 1.11, 1.07, 1.05, 1.02, 1.06};

inline std::optional<int> atomic_number(std::string_view symbol) {
    for (int z = 1; z <= kMaxZ; ++z)
        if (kSymbols[z] == symbol) return z;
    return std::nullopt;
}

inline std::string element_symbol(int z) {
    return std::string(kSymbols.at(static_cast<std::size_t>(z)));
}

}  // namespace radscf
