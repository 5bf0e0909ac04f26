#include "core/analysis.hpp"

#include <algorithm>
#include <cstdio>

#include "core/error.hpp"

namespace radscf {

const BondOrder* BondOrderTable::find(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const auto& e : entries)
        if (e.a == a && e.b == b) return &e;
    return nullptr;
}

std::vector<double> mulliken_populations(const Eigen::MatrixXd& p_total, const Eigen::MatrixXd& S,
                                         const std::vector<int>& owner, int n_atoms) {
    if (static_cast<int>(owner.size()) != p_total.rows())
        throw InputError("owner map does not match matrix dimension");
    const Eigen::VectorXd diag = (p_total * S).diagonal();
    std::vector<double> q(static_cast<std::size_t>(n_atoms), 0.0);
    for (std::size_t mu = 0; mu < owner.size(); ++mu)
        q[static_cast<std::size_t>(owner[mu])] += diag(static_cast<Eigen::Index>(mu));
    return q;
}

std::vector<double> atomic_spin_densities(const Eigen::MatrixXd& p_alpha,
                                          const Eigen::MatrixXd& p_beta, const Eigen::MatrixXd& S,
                                          const std::vector<int>& owner, int n_atoms) {
    return mulliken_populations(p_alpha - p_beta, S, owner, n_atoms);
}

double overlap_population(const Eigen::MatrixXd& p_total, const Eigen::MatrixXd& S,
                          const std::vector<int>& owner, int atom_a, int atom_b) {
    double sum = 0.0;
    const auto n = static_cast<Eigen::Index>(owner.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (owner[static_cast<std::size_t>(i)] != atom_a) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (owner[static_cast<std::size_t>(j)] != atom_b) continue;
            sum += p_total(i, j) * S(i, j);
        }
    }
    return 2.0 * sum;
}

AnalysisResult analyze(const SCFResult& result, const IntegralTables& tables, const Molecule& m,
                       const MolecularBasis& basis,
                       const std::vector<std::pair<int, int>>& extra_pairs) {
    if (!result.converged)
        throw ScfError("analysis requires a converged SCF result (SCF did not converge in " +
                       std::to_string(result.iterations) + " iterations)");

    const Eigen::MatrixXd p_total = result.p_alpha + result.p_beta;
    AnalysisResult out;
    out.populations.population =
        mulliken_populations(p_total, tables.S, basis.owner, m.n_atoms());
    out.populations.spin =
        atomic_spin_densities(result.p_alpha, result.p_beta, tables.S, basis.owner, m.n_atoms());
    out.populations.charge.resize(static_cast<std::size_t>(m.n_atoms()));
    for (int a = 0; a < m.n_atoms(); ++a)
        out.populations.charge[static_cast<std::size_t>(a)] =
            m.atoms[static_cast<std::size_t>(a)].atomic_number -
            out.populations.population[static_cast<std::size_t>(a)];

    std::vector<std::pair<int, int>> pairs;
    for (const auto& bond : perceive_bonds(m).edges) pairs.emplace_back(bond.a, bond.b);
    for (auto [a, b] : extra_pairs) {
        if (a == b) throw InputError("bond order requested for a self-pair");
        if (a < 0 || b < 0 || a >= m.n_atoms() || b >= m.n_atoms())
            throw InputError("bond order pair out of range");
        if (a > b) std::swap(a, b);
        pairs.emplace_back(a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    for (auto [a, b] : pairs)
        out.bond_orders.entries.push_back(
            {a, b, overlap_population(p_total, tables.S, basis.owner, a, b)});
    return out;
}

Json analysis_report_json(const Molecule& m, const AnalysisResult& ar) {
    Json atoms = Json::array();
    for (int a = 0; a < m.n_atoms(); ++a) {
        const auto ua = static_cast<std::size_t>(a);
        Json rec = Json::object();
        rec.set("index", a);
        rec.set("element", m.atoms[ua].element);
        rec.set("population", ar.populations.population[ua]);
        rec.set("charge", ar.populations.charge[ua]);
        rec.set("spin", ar.populations.spin[ua]);
        atoms.push(std::move(rec));
    }
    Json bonds = Json::array();
    for (const auto& e : ar.bond_orders.entries) {
        Json rec = Json::object();
        rec.set("a", e.a);
        rec.set("b", e.b);
        rec.set("overlap_population", e.overlap_population);
        rec.set("distance_angstrom",
                (m.atoms[static_cast<std::size_t>(e.a)].position -
                 m.atoms[static_cast<std::size_t>(e.b)].position)
                        .norm() /
                    kAngstromToBohr);
        bonds.push(std::move(rec));
    }
    Json root = Json::object();
    root.set("atoms", std::move(atoms));
    root.set("bonds", std::move(bonds));
    return root;
}

std::string analysis_report_text(const Molecule& m, const AnalysisResult& ar) {
    std::string out;
    char buf[160];
    out += "atom element population    charge      spin\n";
    for (int a = 0; a < m.n_atoms(); ++a) {
        const auto ua = static_cast<std::size_t>(a);
        std::snprintf(buf, sizeof buf, "%4d %-7s %10.6f %+9.6f %+9.6f\n", a,
                      m.atoms[ua].element.c_str(), ar.populations.population[ua],
                      ar.populations.charge[ua], ar.populations.spin[ua]);
        out += buf;
    }
    out += "bond        overlap_population distance_angstrom\n";
    for (const auto& e : ar.bond_orders.entries) {
        const double dist = (m.atoms[static_cast<std::size_t>(e.a)].position -
                             m.atoms[static_cast<std::size_t>(e.b)].position)
                                .norm() /
                            kAngstromToBohr;
        std::snprintf(buf, sizeof buf, "%3d-%-3d %*s %12.6f %13.6f\n", e.a, e.b, 6, "",
                      e.overlap_population, dist);
        out += buf;
    }
    return out;
}

}  // namespace radscf
