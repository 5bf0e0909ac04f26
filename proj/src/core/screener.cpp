#include "core/screener.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "core/error.hpp"

namespace radscf {

namespace {

constexpr double kAntiferroMagnitude = 0.1;

// Depth-first walk for the longest simple path within the qualifying set.
void longest_path_from(int node, const std::vector<std::vector<int>>& adj,
                       std::vector<char>& visited, std::vector<int>& path,
                       std::vector<int>& best) {
    visited[static_cast<std::size_t>(node)] = 1;
    path.push_back(node);
    if (path.size() > best.size()) best = path;
    for (int next : adj[static_cast<std::size_t>(node)])
        if (!visited[static_cast<std::size_t>(next)])
            longest_path_from(next, adj, visited, path, best);
    path.pop_back();
    visited[static_cast<std::size_t>(node)] = 0;
}

}  // namespace

OrderingAssessment detect_ordering_group(const Molecule& m, const BondGraph& g, int min_len) {
    const int n = m.n_atoms();
    std::vector<char> qualifies(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
        if (m.atoms[static_cast<std::size_t>(a)].element != "C") continue;
        int n_h = 0, n_heavy = 0;
        for (int nb : g.neighbors(a)) {
            if (m.atoms[static_cast<std::size_t>(nb)].element == "H") ++n_h;
            else ++n_heavy;
        }
        if (n_h == 2 && n_heavy == 2) qualifies[static_cast<std::size_t>(a)] = 1;
    }

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& bond : g.edges)
        if (qualifies[static_cast<std::size_t>(bond.a)] &&
            qualifies[static_cast<std::size_t>(bond.b)]) {
            adj[static_cast<std::size_t>(bond.a)].push_back(bond.b);
            adj[static_cast<std::size_t>(bond.b)].push_back(bond.a);
        }

    OrderingAssessment out;
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<int> path;
    for (int a = 0; a < n; ++a) {
        if (!qualifies[static_cast<std::size_t>(a)]) continue;
        longest_path_from(a, adj, visited, path, out.chain_atoms);
    }
    out.chain_length = static_cast<int>(out.chain_atoms.size());
    out.pass = out.chain_length >= min_len;
    return out;
}

AnchorAssessment detect_anchor_group(const Molecule& m, const BondGraph& g) {
    AnchorAssessment out;
    for (int c = 0; c < m.n_atoms(); ++c) {
        if (m.atoms[static_cast<std::size_t>(c)].element != "C") continue;
        const auto& nbrs = g.neighbors(c);
        if (nbrs.size() != 3) continue;
        std::vector<int> oxygens, carbons;
        for (int nb : nbrs) {
            const auto& el = m.atoms[static_cast<std::size_t>(nb)].element;
            if (el == "O") oxygens.push_back(nb);
            else if (el == "C") carbons.push_back(nb);
        }
        if (oxygens.size() != 2 || carbons.size() != 1) continue;
        std::vector<int> hydroxyl;
        for (int o : oxygens)
            for (int nb : g.neighbors(o))
                if (m.atoms[static_cast<std::size_t>(nb)].element == "H") {
                    hydroxyl.push_back(o);
                    break;
                }
        if (hydroxyl.size() != 1) continue;
        out.matches.push_back({c, {oxygens[0], oxygens[1]}, hydroxyl[0]});
    }
    out.pass = !out.matches.empty();
    return out;
}

LocalizationAssessment assess_spin_localization(const Molecule& m,
                                                const std::vector<double>& spins, int k,
                                                double f) {
    if (static_cast<int>(spins.size()) != m.n_atoms())
        throw InputError("spin vector length does not match atom count");
    if (k < 1) throw InputError("localization top-k must be at least 1");
    if (!(f > 0.0) || f > 1.0) throw InputError("localization fraction must be in (0, 1]");

    LocalizationAssessment out;
    out.net_spin = std::accumulate(spins.begin(), spins.end(), 0.0);
    if (std::abs(out.net_spin) < 1e-8)
        throw InputError("spin vector has zero net spin: not a radical");
    const double sign = out.net_spin > 0.0 ? 1.0 : -1.0;

    std::vector<int> order(spins.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(spins[static_cast<std::size_t>(a)]) >
               std::abs(spins[static_cast<std::size_t>(b)]);
    });

    const int kk = std::min<int>(k, static_cast<int>(spins.size()));
    double top_sum = 0.0;
    bool signs_ok = true;
    for (int i = 0; i < kk; ++i) {
        const int atom = order[static_cast<std::size_t>(i)];
        const double s = spins[static_cast<std::size_t>(atom)];
        out.top_sites.push_back({atom, s});
        top_sum += s;
        if (s * sign < 0.0) signs_ok = false;
    }
    out.top_fraction = top_sum / out.net_spin;
    out.pass = signs_ok && top_sum * sign >= f * std::abs(out.net_spin);

    for (std::size_t i = 0; i < out.top_sites.size(); ++i)
        for (std::size_t j = i + 1; j < out.top_sites.size(); ++j) {
            const int a = out.top_sites[i].atom;
            const int b = out.top_sites[j].atom;
            out.separations.push_back(
                {a, b,
                 (m.atoms[static_cast<std::size_t>(a)].position -
                  m.atoms[static_cast<std::size_t>(b)].position)
                     .norm()});
        }

    for (int a = 0; a < m.n_atoms(); ++a)
        if (spins[static_cast<std::size_t>(a)] * sign < -kAntiferroMagnitude)
            out.antiferromagnetic_atoms.push_back(a);
    return out;
}

StabilityAssessment assess_bond_stability(const BondOrderTable& bond_orders,
                                          const std::vector<int>& spin_atoms, double threshold) {
    if (spin_atoms.empty()) throw InputError("bond stability needs at least one spin site");

    StabilityAssessment out;
    for (int s : spin_atoms) {
        bool found = false;
        for (const auto& e : bond_orders.entries)
            if (e.a == s || e.b == s) {
                found = true;
                const bool seen = std::any_of(
                    out.bonds_considered.begin(), out.bonds_considered.end(),
                    [&](const BondOrder& x) { return x.a == e.a && x.b == e.b; });
                if (!seen) out.bonds_considered.push_back(e);
            }
        if (!found)
            throw InputError("spin-bearing atom " + std::to_string(s) +
                             " has no bonds in the table (isolated spin)");
    }
    std::sort(out.bonds_considered.begin(), out.bonds_considered.end(),
              [](const BondOrder& x, const BondOrder& y) {
                  return x.a != y.a ? x.a < y.a : x.b < y.b;
              });
    out.min_overlap_population = out.bonds_considered.front().overlap_population;
    for (const auto& e : out.bonds_considered)
        if (e.overlap_population < out.min_overlap_population)
            out.min_overlap_population = e.overlap_population;
    out.pass = out.min_overlap_population >= threshold;
    return out;
}

SuitabilityReport screen(const Molecule& m, const ScreenInput& input,
                         const ScreeningThresholds& th) {
    for (const auto& p : th.anchor_patterns)
        if (p != "carboxyl")
            throw InputError("unknown anchor pattern '" + p + "' (supported: carboxyl)");

    SuitabilityReport rep;
    const BondGraph g = perceive_bonds(m);
    rep.criterion_1_ordering = detect_ordering_group(m, g, th.min_chain_length);
    rep.criterion_2_anchor = detect_anchor_group(m, g);
    if (th.anchor_patterns.empty()) {
        rep.criterion_2_anchor.matches.clear();
        rep.criterion_2_anchor.pass = false;
    }

    if (!input.scf_converged) {
        rep.overall = false;
        rep.reason = "scf-unconverged";
        return rep;
    }

    rep.criterion_3_localization =
        assess_spin_localization(m, input.spins, th.localization_top_k, th.localization_fraction);
    std::vector<int> spin_atoms;
    for (const auto& site : rep.criterion_3_localization.top_sites) spin_atoms.push_back(site.atom);
    rep.criterion_4_stability =
        assess_bond_stability(input.bond_orders, spin_atoms, th.bond_order_min);

    rep.overall = rep.criterion_1_ordering.pass && rep.criterion_2_anchor.pass &&
                  rep.criterion_3_localization.pass && rep.criterion_4_stability.pass;
    return rep;
}

Json screening_report_json(const SuitabilityReport& r) {
    Json root = Json::object();

    Json c1 = Json::object();
    c1.set("pass", r.criterion_1_ordering.pass);
    Json ev1 = Json::object();
    ev1.set("chain_length", r.criterion_1_ordering.chain_length);
    Json chain = Json::array();
    for (int a : r.criterion_1_ordering.chain_atoms) chain.push(a);
    ev1.set("chain_atoms", std::move(chain));
    c1.set("evidence", std::move(ev1));
    root.set("criterion_1_ordering", std::move(c1));

    Json c2 = Json::object();
    c2.set("pass", r.criterion_2_anchor.pass);
    Json ev2 = Json::object();
    Json matches = Json::array();
    for (const auto& mt : r.criterion_2_anchor.matches) {
        Json rec = Json::object();
        rec.set("carbon", mt.carbon);
        Json oxy = Json::array();
        oxy.push(mt.oxygens[0]);
        oxy.push(mt.oxygens[1]);
        rec.set("oxygens", std::move(oxy));
        rec.set("hydroxyl_oxygen", mt.hydroxyl_oxygen);
        matches.push(std::move(rec));
    }
    ev2.set("matches", std::move(matches));
    c2.set("evidence", std::move(ev2));
    root.set("criterion_2_anchor", std::move(c2));

    Json c3 = Json::object();
    c3.set("pass", r.criterion_3_localization.pass);
    if (r.reason.empty()) {
        Json ev3 = Json::object();
        ev3.set("net_spin", r.criterion_3_localization.net_spin);
        Json sites = Json::array();
        for (const auto& s : r.criterion_3_localization.top_sites) {
            Json rec = Json::object();
            rec.set("atom", s.atom);
            rec.set("spin", s.spin);
            sites.push(std::move(rec));
        }
        ev3.set("top_sites", std::move(sites));
        ev3.set("top_fraction", r.criterion_3_localization.top_fraction);
        Json seps = Json::array();
        for (const auto& s : r.criterion_3_localization.separations) {
            Json rec = Json::object();
            rec.set("a", s.a);
            rec.set("b", s.b);
            rec.set("distance_bohr", s.distance_bohr);
            seps.push(std::move(rec));
        }
        ev3.set("separations", std::move(seps));
        Json anti = Json::array();
        for (int a : r.criterion_3_localization.antiferromagnetic_atoms) anti.push(a);
        ev3.set("antiferromagnetic_atoms", std::move(anti));
        c3.set("evidence", std::move(ev3));
    }
    root.set("criterion_3_localization", std::move(c3));

    Json c4 = Json::object();
    c4.set("pass", r.criterion_4_stability.pass);
    if (r.reason.empty()) {
        Json ev4 = Json::object();
        ev4.set("min_overlap_population", r.criterion_4_stability.min_overlap_population);
        Json bonds = Json::array();
        for (const auto& e : r.criterion_4_stability.bonds_considered) {
            Json rec = Json::object();
            rec.set("a", e.a);
            rec.set("b", e.b);
            rec.set("overlap_population", e.overlap_population);
            bonds.push(std::move(rec));
        }
        ev4.set("bonds", std::move(bonds));
        c4.set("evidence", std::move(ev4));
    }
    root.set("criterion_4_stability", std::move(c4));

    root.set("overall", r.overall);
    if (!r.reason.empty()) root.set("reason", r.reason);
    return root;
}

std::string screening_report_text(const SuitabilityReport& r) {
    std::string out;
    char line[256];

    std::snprintf(line, sizeof(line), "criterion 1 (ordering group):  %s  chain length %d\n",
                  r.criterion_1_ordering.pass ? "PASS" : "FAIL",
                  r.criterion_1_ordering.chain_length);
    out += line;

    std::snprintf(line, sizeof(line), "criterion 2 (anchor group):    %s  %zu carboxyl match(es)\n",
                  r.criterion_2_anchor.pass ? "PASS" : "FAIL",
                  r.criterion_2_anchor.matches.size());
    out += line;

    if (r.reason.empty()) {
        std::string sites;
        for (const auto& s : r.criterion_3_localization.top_sites) {
            if (!sites.empty()) sites += ",";
            sites += std::to_string(s.atom);
        }
        std::snprintf(line, sizeof(line),
                      "criterion 3 (localization):    %s  top sites [%s] hold %.3f of net spin\n",
                      r.criterion_3_localization.pass ? "PASS" : "FAIL", sites.c_str(),
                      r.criterion_3_localization.top_fraction);
        out += line;
        if (!r.criterion_3_localization.antiferromagnetic_atoms.empty()) {
            std::string atoms;
            for (int a : r.criterion_3_localization.antiferromagnetic_atoms) {
                if (!atoms.empty()) atoms += ",";
                atoms += std::to_string(a);
            }
            std::snprintf(line, sizeof(line),
                          "  note: antiferromagnetic structure, opposite spin on atoms [%s]\n",
                          atoms.c_str());
            out += line;
        }
        std::snprintf(line, sizeof(line),
                      "criterion 4 (bond stability):  %s  min overlap population %.3f\n",
                      r.criterion_4_stability.pass ? "PASS" : "FAIL",
                      r.criterion_4_stability.min_overlap_population);
        out += line;
    } else {
        std::snprintf(line, sizeof(line), "criteria 3-4 not evaluated: %s\n", r.reason.c_str());
        out += line;
    }

    std::snprintf(line, sizeof(line), "overall: %s\n", r.overall ? "PASS" : "FAIL");
    out += line;
    return out;
}

}  // namespace radscf
