#include "core/molsys.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace radscf {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw InputError("xyz parse error, line " + std::to_string(line) + ": " + what);
}

bool parse_int(const std::string& tok, int& out) {
    try {
        std::size_t used = 0;
        out = std::stoi(tok, &used);
        return used == tok.size();
    } catch (...) {
        return false;
    }
}

bool parse_real(const std::string& tok, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(tok, &used);
        return used == tok.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

int Molecule::n_electrons() const {
    int z = 0;
    for (const auto& a : atoms) z += a.atomic_number;
    return z - charge;
}

void Molecule::validate() const {
    const int ne = n_electrons();
    if (ne < 1) throw InputError("molecule has " + std::to_string(ne) + " electrons; need at least 1");
    if (multiplicity < 1) throw InputError("multiplicity must be a positive integer");
    if ((ne - (multiplicity - 1)) % 2 != 0)
        throw InputError("electron count " + std::to_string(ne) + " is incompatible with multiplicity " +
                         std::to_string(multiplicity) + " (parity mismatch)");
    if (multiplicity - 1 > ne)
        throw InputError("multiplicity " + std::to_string(multiplicity) + " needs more unpaired electrons than the " +
                         std::to_string(ne) + " available");
}

bool BondGraph::connected(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const auto& e : edges)
        if (e.a == a && e.b == b) return true;
    return false;
}

std::vector<int> BondGraph::neighbors(int atom) const {
    std::vector<int> out;
    for (const auto& e : edges) {
        if (e.a == atom) out.push_back(e.b);
        if (e.b == atom) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Molecule parse_xyz(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) parse_fail(1, "empty input");
    ++lineno;
    {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) parse_fail(lineno, "missing atom count");
        int n = 0;
        if (!parse_int(tok, n) || n < 1) parse_fail(lineno, "atom count must be a positive integer, got '" + tok + "'");
        line.clear();
        Molecule m;
        m.atoms.reserve(static_cast<std::size_t>(n));

        if (!std::getline(in, line)) parse_fail(lineno + 1, "missing comment line");
        ++lineno;
        bool have_mult = false;
        {
            std::istringstream cs(line);
            std::string t;
            while (cs >> t) {
                if (t.rfind("charge=", 0) == 0) {
                    if (!parse_int(t.substr(7), m.charge))
                        parse_fail(lineno, "bad charge token '" + t + "'");
                } else if (t.rfind("mult=", 0) == 0) {
                    if (!parse_int(t.substr(5), m.multiplicity) || m.multiplicity < 1)
                        parse_fail(lineno, "bad multiplicity token '" + t + "'");
                    have_mult = true;
                }
            }
        }

        for (int i = 0; i < n; ++i) {
            if (!std::getline(in, line)) parse_fail(lineno + 1, "expected " + std::to_string(n) +
                                                    " atom lines, found " + std::to_string(i));
            ++lineno;
            std::istringstream as(line);
            Atom a;
            std::string sx, sy, sz;
            if (!(as >> a.element >> sx >> sy >> sz))
                parse_fail(lineno, "expected '<symbol> <x> <y> <z>'");
            auto z = atomic_number(a.element);
            if (!z) parse_fail(lineno, "unknown element symbol '" + a.element + "'");
            a.atomic_number = *z;
            double x, y, zc;
            if (!parse_real(sx, x) || !parse_real(sy, y) || !parse_real(sz, zc))
                parse_fail(lineno, "non-numeric coordinate");
            a.position = Eigen::Vector3d(x, y, zc) * kAngstromToBohr;
            m.atoms.push_back(std::move(a));
        }

        if (!have_mult) m.multiplicity = (m.n_electrons() % 2 == 0) ? 1 : 2;
        m.validate();
        return m;
    }
}

Molecule parse_xyz_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open geometry file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_xyz(buf.str());
}

std::string serialize_xyz(const Molecule& m, const std::string& extra_comment) {
    std::ostringstream out;
    out << m.n_atoms() << "\n";
    out << "charge=" << m.charge << " mult=" << m.multiplicity;
    if (!extra_comment.empty()) out << " " << extra_comment;
    out << "\n";
    char buf[128];
    for (const auto& a : m.atoms) {
        const Eigen::Vector3d ang = a.position / kAngstromToBohr;
        std::snprintf(buf, sizeof buf, "%s %.12f %.12f %.12f\n", a.element.c_str(), ang.x(), ang.y(), ang.z());
        out << buf;
    }
    return out.str();
}

ElectronCounts electron_counts(const Molecule& m) {
    m.validate();
    const int ne = m.n_electrons();
    ElectronCounts c;
    c.alpha = (ne + m.multiplicity - 1) / 2;
    c.beta = ne - c.alpha;
    return c;
}

double nuclear_repulsion(const Molecule& m) {
    double e = 0.0;
    for (int i = 0; i < m.n_atoms(); ++i) {
        for (int j = 0; j < i; ++j) {
            const double r = (m.atoms[i].position - m.atoms[j].position).norm();
            if (r < 1e-6)
                throw InputError("atoms " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                 " are coincident (R = " + std::to_string(r) + " bohr)");
            e += m.atoms[i].atomic_number * m.atoms[j].atomic_number / r;
        }
    }
    return e;
}

BondGraph perceive_bonds(const Molecule& m, double scale) {
    BondGraph g;
    for (int j = 0; j < m.n_atoms(); ++j) {
        for (int i = 0; i < j; ++i) {
            const double r = (m.atoms[i].position - m.atoms[j].position).norm();
            const double cutoff = scale * (kCovalentRadius[m.atoms[i].atomic_number] +
                                           kCovalentRadius[m.atoms[j].atomic_number]) * kAngstromToBohr;
            if (r <= cutoff) g.edges.push_back({i, j, r});
        }
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Bond& x, const Bond& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    return g;
}

}  // namespace radscf
