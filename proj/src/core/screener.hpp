#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/jsonw.hpp"
#include "core/molsys.hpp"

namespace radscf {

struct ScreeningThresholds {
    int localization_top_k = 2;
    double localization_fraction = 0.7;
    double bond_order_min = 0.3;
    int min_chain_length = 8;
    std::vector<std::string> anchor_patterns = {"carboxyl"};
};

struct OrderingAssessment {
    bool pass = false;
    int chain_length = 0;
    std::vector<int> chain_atoms;  // one longest qualifying chain
};

struct AnchorMatch {
    int carbon;
    std::array<int, 2> oxygens;
    int hydroxyl_oxygen;
};

struct AnchorAssessment {
    bool pass = false;
    std::vector<AnchorMatch> matches;
};

struct SpinSite {
    int atom;
    double spin;
};

struct SpinSeparation {
    int a, b;
    double distance_bohr;
};

struct LocalizationAssessment {
    bool pass = false;
    double net_spin = 0.0;
    std::vector<SpinSite> top_sites;
    double top_fraction = 0.0;  // top-k signed sum over net spin
    std::vector<SpinSeparation> separations;
    std::vector<int> antiferromagnetic_atoms;  // opposite-sign spins beyond 0.1
};

struct StabilityAssessment {
    bool pass = false;
    double min_overlap_population = 0.0;
    std::vector<BondOrder> bonds_considered;
};

struct SuitabilityReport {
    OrderingAssessment criterion_1_ordering;
    AnchorAssessment criterion_2_anchor;
    LocalizationAssessment criterion_3_localization;
    StabilityAssessment criterion_4_stability;
    bool overall = false;
    std::string reason;  // nonempty when criteria 3/4 could not be evaluated
};

// Criterion 1: longest simple path of sp3 CH2 carbons (exactly two hydrogens
// and exactly two heavy neighbors).
OrderingAssessment detect_ordering_group(const Molecule& m, const BondGraph& g, int min_len);

// Criterion 2: carboxyl pattern (C bonded to exactly two O and one C, with
// exactly one of the oxygens carrying a hydrogen).
AnchorAssessment detect_anchor_group(const Molecule& m, const BondGraph& g);

// Criterion 3: the k largest-|spin| sites carry the net spin's sign and
// jointly hold at least fraction f of it. Throws when net spin is zero.
LocalizationAssessment assess_spin_localization(const Molecule& m,
                                                const std::vector<double>& spins, int k, double f);

// Criterion 4: every perceived bond incident to a spin site has overlap
// population >= threshold. Throws when a spin site has no bonds at all.
StabilityAssessment assess_bond_stability(const BondOrderTable& bond_orders,
                                          const std::vector<int>& spin_atoms, double threshold);

struct ScreenInput {
    std::vector<double> spins;   // per atom; may come from SCF or be injected
    BondOrderTable bond_orders;  // likewise
    bool scf_converged = true;
};

SuitabilityReport screen(const Molecule& m, const ScreenInput& input,
                         const ScreeningThresholds& th);

Json screening_report_json(const SuitabilityReport& r);
std::string screening_report_text(const SuitabilityReport& r);

}  // namespace radscf
