#include "core/basis.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace radscf {

namespace {

double double_factorial(int n) {
    double r = 1.0;
    for (; n > 1; n -= 2) r *= n;
    return r;
}

[[noreturn]] void basis_fail(int line, const std::string& what) {
    throw InputError("basis parse error, line " + std::to_string(line) + ": " + what);
}

// Overlap of two same-center primitives with identical powers (lx,ly,lz).
double axis_self_overlap(double a, double b, int l) {
    const double p = a + b;
    return std::pow(std::numbers::pi / p, 1.5) * double_factorial(2 * l - 1) / std::pow(2.0 * p, l);
}

}  // namespace

const std::vector<std::array<int, 3>>& cartesian_powers(int l) {
    static const std::vector<std::array<int, 3>> s = {{0, 0, 0}};
    static const std::vector<std::array<int, 3>> p = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    static const std::vector<std::array<int, 3>> d = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2},
                                                      {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    switch (l) {
        case 0: return s;
        case 1: return p;
        case 2: return d;
        default: throw InputError("angular momentum l = " + std::to_string(l) + " not supported (max is d)");
    }
}

BasisSet load_basis(const std::string& text, const std::string& name) {
    BasisSet set;
    set.name = name;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string element;
    int pending_prims = 0;
    Shell shell;

    auto flush_shell = [&] {
        if (pending_prims > 0) basis_fail(lineno, "shell promised more primitives than were given");
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;

        if (pending_prims > 0) {
            Primitive prim;
            std::string ctok;
            if (!(ls >> ctok)) basis_fail(lineno, "expected '<exponent> <coefficient>'");
            try {
                prim.exponent = std::stod(tok);
                prim.coefficient = std::stod(ctok);
            } catch (...) {
                basis_fail(lineno, "non-numeric primitive entry");
            }
            if (!(prim.exponent > 0.0)) basis_fail(lineno, "primitive exponent must be positive");
            shell.primitives.push_back(prim);
            if (--pending_prims == 0) set.shells[element].push_back(std::move(shell));
            continue;
        }

        if (tok == "element") {
            flush_shell();
            if (!(ls >> element)) basis_fail(lineno, "missing element symbol");
            if (!atomic_number(element)) basis_fail(lineno, "unknown element symbol '" + element + "'");
            set.shells.try_emplace(element);
            continue;
        }

        if (element.empty()) basis_fail(lineno, "shell block before any 'element' line");
        int l = -1;
        if (tok == "S") l = 0;
        else if (tok == "P") l = 1;
        else if (tok == "D") l = 2;
        else basis_fail(lineno, "unknown angular momentum letter '" + tok + "' (expected S, P, or D)");

        std::string ntok;
        if (!(ls >> ntok)) basis_fail(lineno, "missing primitive count");
        try {
            pending_prims = std::stoi(ntok);
        } catch (...) {
            basis_fail(lineno, "bad primitive count '" + ntok + "'");
        }
        if (pending_prims < 1) basis_fail(lineno, "primitive count must be >= 1");
        shell = Shell{l, {}};
    }
    if (pending_prims > 0) basis_fail(lineno, "file ended inside a shell block (primitive count mismatch)");
    if (set.shells.empty()) basis_fail(lineno == 0 ? 1 : lineno, "no shells");
    return set;
}

BasisSet load_basis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open basis file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_basis(buf.str(), std::filesystem::path(path).stem().string());
}

std::string find_basis_file(const std::string& name, const std::string& search_path) {
    std::vector<std::string> dirs;
    auto split_into = [&dirs](const std::string& list) {
        std::string cur;
        std::istringstream ss(list);
        while (std::getline(ss, cur, ':'))
            if (!cur.empty()) dirs.push_back(cur);
    };
    split_into(search_path);
    if (const char* env = std::getenv("RADSCF_BASIS_PATH")) split_into(env);
#ifdef RADSCF_DATA_DIR
    dirs.push_back(std::string(RADSCF_DATA_DIR) + "/basis");
#endif
    for (const auto& d : dirs) {
        auto candidate = std::filesystem::path(d) / (name + ".bas");
        if (std::filesystem::exists(candidate)) return candidate.string();
    }
    throw InputError("basis set '" + name + "' not found (searched " + std::to_string(dirs.size()) +
                     " directories; set RADSCF_BASIS_PATH to add more)");
}

double normalization_constant(double alpha, const std::array<int, 3>& powers) {
    const int L = powers[0] + powers[1] + powers[2];
    const double num = std::pow(2.0 * alpha / std::numbers::pi, 1.5) * std::pow(4.0 * alpha, L);
    const double den = double_factorial(2 * powers[0] - 1) * double_factorial(2 * powers[1] - 1) *
                       double_factorial(2 * powers[2] - 1);
    return std::sqrt(num / den);
}

MolecularBasis assign_basis(const Molecule& m, const BasisSet& set) {
    MolecularBasis out;
    for (int ai = 0; ai < m.n_atoms(); ++ai) {
        const auto& atom = m.atoms[ai];
        auto it = set.shells.find(atom.element);
        if (it == set.shells.end() || it->second.empty())
            throw InputError("basis set '" + set.name + "' has no shells for element " + atom.element);

        for (const auto& shell : it->second) {
            const auto& comps = cartesian_powers(shell.l);
            ShellBlock block;
            block.first = out.n();
            block.count = static_cast<int>(comps.size());
            block.l = shell.l;
            block.atom_index = ai;
            block.center = atom.position;

            // normalize against the axis component (l,0,0); other components
            // differ only by a ratio of double factorials
            const std::array<int, 3> axis = {shell.l, 0, 0};
            block.primitives = shell.primitives;
            for (auto& prim : block.primitives) prim.coefficient *= normalization_constant(prim.exponent, axis);
            double self = 0.0;
            for (const auto& pj : block.primitives)
                for (const auto& pk : block.primitives)
                    self += pj.coefficient * pk.coefficient * axis_self_overlap(pj.exponent, pk.exponent, shell.l);
            const double rescale = 1.0 / std::sqrt(self);
            for (auto& prim : block.primitives) prim.coefficient *= rescale;

            const double axis_df = double_factorial(2 * shell.l - 1);
            for (int c = 0; c < block.count; ++c) {
                const auto& pw = comps[static_cast<std::size_t>(c)];
                const double comp_df = double_factorial(2 * pw[0] - 1) * double_factorial(2 * pw[1] - 1) *
                                       double_factorial(2 * pw[2] - 1);
                block.component_scale[static_cast<std::size_t>(c)] = std::sqrt(axis_df / comp_df);

                BasisFunction f;
                f.center = atom.position;
                f.powers = pw;
                f.atom_index = ai;
                f.primitives = block.primitives;
                for (auto& prim : f.primitives)
                    prim.coefficient *= block.component_scale[static_cast<std::size_t>(c)];
                out.functions.push_back(std::move(f));
                out.owner.push_back(ai);
            }
            out.blocks.push_back(std::move(block));
        }
    }
    return out;
}

}  // namespace radscf
