#include "radscf.h"

#include <cstring>
#include <filesystem>
#include <string>
#include <utility>

#include "core/analysis.hpp"
#include "core/basis.hpp"
#include "core/error.hpp"
#include "core/geomopt.hpp"
#include "core/integrals.hpp"
#include "core/jsonw.hpp"
#include "core/molsys.hpp"
#include "core/scf.hpp"
#include "core/screener.hpp"

using namespace radscf;

struct radscf_molecule {
    Molecule m;
};

struct radscf_basis {
    BasisSet set;
};

// A result keeps everything the report functions need so they stay pure
// accessors: the inputs that produced it plus the converged state.
struct radscf_result {
    Molecule m;
    BasisSet set;
    MolecularBasis basis;
    IntegralTables tables;
    SCFResult scf;
    radscf_scf_options opts;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

radscf_status status_of(ErrorCode code) { return static_cast<radscf_status>(static_cast<int>(code)); }

template <typename F>
radscf_status guarded(F&& f) {
    try {
        t_last_error.clear();
        f();
        return RADSCF_OK;
    } catch (const Error& e) {
        set_error(e.what());
        return status_of(e.code());
    } catch (const std::exception& e) {
        set_error(e.what());
        return RADSCF_ERR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) throw InputError(what);
}

SCFConfig to_config(const radscf_scf_options* opts) {
    SCFConfig cfg;
    if (!opts) return cfg;
    cfg.max_iterations = opts->max_iterations;
    cfg.energy_tol = opts->energy_tol;
    cfg.density_rms_tol = opts->density_rms_tol;
    cfg.diis_depth = opts->diis_depth;
    cfg.level_shift = opts->level_shift;
    cfg.restricted = opts->restricted != 0;
    cfg.n_threads = opts->n_threads;
    return cfg;
}

Json energy_json(const radscf_result& r) {
    const ElectronCounts counts = electron_counts(r.m);
    Json j = Json::object();
    j.set("basis", r.set.name);
    j.set("charge", r.m.charge);
    j.set("commutator_max", r.scf.commutator_max);
    j.set("converged", r.scf.converged);
    j.set("e_electronic", r.scf.e_electronic);
    j.set("e_nuclear", r.scf.e_nuclear);
    j.set("e_total", r.scf.e_total);
    j.set("iterations", r.scf.iterations);
    j.set("method", r.opts.restricted ? "rhf" : "uhf");
    j.set("multiplicity", r.m.multiplicity);
    j.set("n_alpha", counts.alpha);
    j.set("n_basis_functions", r.basis.n());
    j.set("n_beta", counts.beta);
    Json eps = Json::object();
    Json ea = Json::array();
    for (int i = 0; i < r.scf.eps_alpha.size(); ++i) ea.push(r.scf.eps_alpha(i));
    Json eb = Json::array();
    for (int i = 0; i < r.scf.eps_beta.size(); ++i) eb.push(r.scf.eps_beta(i));
    eps.set("alpha", std::move(ea));
    eps.set("beta", std::move(eb));
    j.set("orbital_energies", std::move(eps));
    j.set("s_squared", r.scf.s_squared);
    return j;
}

std::string energy_text(const radscf_result& r) {
    const ElectronCounts counts = electron_counts(r.m);
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "method        %s/%s\n", r.opts.restricted ? "rhf" : "uhf",
                  r.set.name.c_str());
    out += buf;
    std::snprintf(buf, sizeof buf, "electrons     %d alpha, %d beta (charge %d, multiplicity %d)\n",
                  counts.alpha, counts.beta, r.m.charge, r.m.multiplicity);
    out += buf;
    std::snprintf(buf, sizeof buf, "converged     %s in %d iterations\n",
                  r.scf.converged ? "yes" : "NO", r.scf.iterations);
    out += buf;
    std::snprintf(buf, sizeof buf, "e_total       %.10f hartree\n", r.scf.e_total);
    out += buf;
    std::snprintf(buf, sizeof buf, "e_electronic  %.10f\n", r.scf.e_electronic);
    out += buf;
    std::snprintf(buf, sizeof buf, "e_nuclear     %.10f\n", r.scf.e_nuclear);
    out += buf;
    std::snprintf(buf, sizeof buf, "<S^2>         %.6f\n", r.scf.s_squared);
    out += buf;
    out += "orbital energies (hartree, occupied marked *)\n";
    for (int i = 0; i < r.scf.eps_alpha.size(); ++i) {
        std::snprintf(buf, sizeof buf, "  %3d  alpha %12.6f%s  beta %12.6f%s\n", i,
                      r.scf.eps_alpha(i), i < counts.alpha ? "*" : " ", r.scf.eps_beta(i),
                      i < counts.beta ? "*" : " ");
        out += buf;
    }
    return out;
}

ScreeningThresholds to_thresholds(const radscf_screen_options* opts) {
    ScreeningThresholds th;
    if (!opts) return th;
    th.localization_top_k = opts->localization_top_k;
    th.localization_fraction = opts->localization_fraction;
    th.bond_order_min = opts->bond_order_min;
    th.min_chain_length = opts->min_chain_length;
    return th;
}

}  // namespace

extern "C" {

const char* radscf_last_error(void) { return t_last_error.c_str(); }

const char* radscf_version(void) { return "1.0.0"; }

radscf_status radscf_molecule_from_xyz(const char* text, radscf_molecule** out) {
    return guarded([&] {
        require(text && out, "null argument");
        auto* h = new radscf_molecule{parse_xyz(text)};
        *out = h;
    });
}

radscf_status radscf_molecule_from_xyz_file(const char* path, radscf_molecule** out) {
    return guarded([&] {
        require(path && out, "null argument");
        auto* h = new radscf_molecule{parse_xyz_file(path)};
        *out = h;
    });
}

radscf_status radscf_molecule_set_charge(radscf_molecule* m, int charge) {
    return guarded([&] {
        require(m, "null molecule");
        Molecule trial = m->m;
        trial.charge = charge;
        // An explicit earlier multiplicity may become impossible; re-derive
        // the parity default rather than failing on a stale value.
        if ((trial.n_electrons() % 2 == 0) != (trial.multiplicity % 2 == 1))
            trial.multiplicity = trial.n_electrons() % 2 == 0 ? 1 : 2;
        trial.validate();
        m->m = std::move(trial);
    });
}

radscf_status radscf_molecule_set_multiplicity(radscf_molecule* m, int multiplicity) {
    return guarded([&] {
        require(m, "null molecule");
        Molecule trial = m->m;
        trial.multiplicity = multiplicity;
        trial.validate();
        m->m = std::move(trial);
    });
}

int radscf_molecule_atom_count(const radscf_molecule* m) { return m ? m->m.n_atoms() : 0; }

int radscf_molecule_electron_count(const radscf_molecule* m) { return m ? m->m.n_electrons() : 0; }

void radscf_molecule_free(radscf_molecule* m) { delete m; }

radscf_status radscf_basis_load(const char* name, const char* search_path, radscf_basis** out) {
    return guarded([&] {
        require(name && out, "null argument");
        std::string path = name;
        if (!std::filesystem::is_regular_file(path))
            path = find_basis_file(name, search_path ? search_path : "");
        auto* h = new radscf_basis{load_basis_file(path)};
        *out = h;
    });
}

void radscf_basis_free(radscf_basis* b) { delete b; }

void radscf_scf_options_init(radscf_scf_options* opts) {
    if (!opts) return;
    const SCFConfig cfg;
    opts->max_iterations = cfg.max_iterations;
    opts->energy_tol = cfg.energy_tol;
    opts->density_rms_tol = cfg.density_rms_tol;
    opts->diis_depth = cfg.diis_depth;
    opts->level_shift = cfg.level_shift;
    opts->restricted = cfg.restricted ? 1 : 0;
    opts->n_threads = cfg.n_threads;
}

radscf_status radscf_run_scf(const radscf_molecule* m, const radscf_basis* b,
                             const radscf_scf_options* opts, radscf_result** out) {
    return guarded([&] {
        require(m && b && out, "null argument");
        radscf_scf_options eff;
        radscf_scf_options_init(&eff);
        if (opts) eff = *opts;
        const SCFConfig cfg = to_config(&eff);
        auto* h = new radscf_result;
        try {
            h->m = m->m;
            h->set = b->set;
            h->basis = assign_basis(h->m, h->set);
            h->tables = build_integral_tables(h->basis, h->m, cfg.n_threads);
            h->scf = scf_uhf(h->m, h->basis, h->tables, cfg);
            h->opts = eff;
        } catch (...) {
            delete h;
            throw;
        }
        *out = h;
    });
}

int radscf_result_converged(const radscf_result* r) { return r && r->scf.converged ? 1 : 0; }

int radscf_result_iterations(const radscf_result* r) { return r ? r->scf.iterations : 0; }

double radscf_result_energy(const radscf_result* r) { return r ? r->scf.e_total : 0.0; }

double radscf_result_s_squared(const radscf_result* r) { return r ? r->scf.s_squared : 0.0; }

radscf_status radscf_result_iteration_log(const radscf_result* r, char** text_out) {
    return guarded([&] {
        require(r && text_out, "null argument");
        *text_out = copy_string(format_iteration_log(r->scf.log));
    });
}

void radscf_result_free(radscf_result* r) { delete r; }

radscf_status radscf_energy_report(const radscf_result* r, char** json_out) {
    return guarded([&] {
        require(r && json_out, "null argument");
        *json_out = copy_string(energy_json(*r).dump() + "\n");
    });
}

radscf_status radscf_energy_report_text(const radscf_result* r, char** text_out) {
    return guarded([&] {
        require(r && text_out, "null argument");
        *text_out = copy_string(energy_text(*r));
    });
}

radscf_status radscf_analysis_report(const radscf_result* r, char** json_out) {
    return guarded([&] {
        require(r && json_out, "null argument");
        const AnalysisResult ar = analyze(r->scf, r->tables, r->m, r->basis);
        Json j = energy_json(*r);
        Json body = analysis_report_json(r->m, ar);
        j.set("analysis", std::move(body));
        *json_out = copy_string(j.dump() + "\n");
    });
}

radscf_status radscf_analysis_report_text(const radscf_result* r, char** text_out) {
    return guarded([&] {
        require(r && text_out, "null argument");
        const AnalysisResult ar = analyze(r->scf, r->tables, r->m, r->basis);
        *text_out = copy_string(energy_text(*r) + analysis_report_text(r->m, ar));
    });
}

void radscf_screen_options_init(radscf_screen_options* opts) {
    if (!opts) return;
    const ScreeningThresholds th;
    opts->localization_top_k = th.localization_top_k;
    opts->localization_fraction = th.localization_fraction;
    opts->bond_order_min = th.bond_order_min;
    opts->min_chain_length = th.min_chain_length;
}

radscf_status radscf_screening_report(const radscf_result* r, const radscf_screen_options* opts,
                                      char** json_out) {
    return guarded([&] {
        require(r && json_out, "null argument");
        const ScreeningThresholds th = to_thresholds(opts);
        ScreenInput input;
        input.scf_converged = r->scf.converged;
        Json j = energy_json(*r);
        if (r->scf.converged) {
            const AnalysisResult ar = analyze(r->scf, r->tables, r->m, r->basis);
            input.spins = ar.populations.spin;
            input.bond_orders = ar.bond_orders;
            j.set("analysis", analysis_report_json(r->m, ar));
        }
        const SuitabilityReport rep = screen(r->m, input, th);
        j.set("screening", screening_report_json(rep));
        *json_out = copy_string(j.dump() + "\n");
    });
}

radscf_status radscf_screening_report_text(const radscf_result* r,
                                           const radscf_screen_options* opts, char** text_out) {
    return guarded([&] {
        require(r && text_out, "null argument");
        const ScreeningThresholds th = to_thresholds(opts);
        ScreenInput input;
        input.scf_converged = r->scf.converged;
        std::string out = energy_text(*r);
        if (r->scf.converged) {
            const AnalysisResult ar = analyze(r->scf, r->tables, r->m, r->basis);
            input.spins = ar.populations.spin;
            input.bond_orders = ar.bond_orders;
            out += analysis_report_text(r->m, ar);
        }
        const SuitabilityReport rep = screen(r->m, input, th);
        out += screening_report_text(rep);
        *text_out = copy_string(out);
    });
}

void radscf_opt_options_init(radscf_opt_options* opts) {
    if (!opts) return;
    const OptimizerConfig cfg;
    opts->fd_step = cfg.fd_step;
    opts->grad_tol = cfg.grad_tol;
    opts->max_steps = cfg.max_steps;
    opts->method = cfg.method == OptMethod::quasi_newton ? 1 : 0;
}

radscf_status radscf_optimize(const radscf_molecule* m, const radscf_basis* b,
                              const radscf_scf_options* scf_opts,
                              const radscf_opt_options* opt_opts, char** json_out,
                              char** trajectory_xyz_out) {
    return guarded([&] {
        require(m && b && json_out, "null argument");
        const SCFConfig scf_cfg = to_config(scf_opts);
        OptimizerConfig cfg;
        if (opt_opts) {
            cfg.fd_step = opt_opts->fd_step;
            cfg.grad_tol = opt_opts->grad_tol;
            cfg.max_steps = opt_opts->max_steps;
            cfg.method = opt_opts->method == 0 ? OptMethod::steepest_descent_with_backtracking
                                               : OptMethod::quasi_newton;
        }
        const OptimizationResult res = optimize(m->m, b->set, scf_cfg, cfg);

        Json j = Json::object();
        j.set("basis", b->set.name);
        j.set("charge", res.geometry.charge);
        j.set("converged", res.converged);
        j.set("e_total", res.e_total);
        Json trace = Json::array();
        for (double e : res.energy_trace) trace.push(e);
        j.set("energy_trace", std::move(trace));
        Json atoms = Json::array();
        for (const auto& a : res.geometry.atoms) {
            Json atom = Json::object();
            atom.set("element", a.element);
            const Eigen::Vector3d ang = a.position / kAngstromToBohr;
            atom.set("x", ang.x());
            atom.set("y", ang.y());
            atom.set("z", ang.z());
            atoms.push(std::move(atom));
        }
        Json geom = Json::object();
        geom.set("atoms", std::move(atoms));
        geom.set("unit", "angstrom");
        j.set("geometry", std::move(geom));
        j.set("grad_max", res.grad_max);
        j.set("multiplicity", res.geometry.multiplicity);
        j.set("steps", res.steps);

        if (trajectory_xyz_out) *trajectory_xyz_out = copy_string(trajectory_xyz(res));
        *json_out = copy_string(j.dump() + "\n");
    });
}

radscf_status radscf_scan(const radscf_molecule* m, const radscf_basis* b,
                          const radscf_scf_options* scf_opts, int atom_a, int atom_b,
                          double from_bohr, double to_bohr, int steps, char** json_out) {
    return guarded([&] {
        require(m && b && json_out, "null argument");
        const SCFConfig cfg = to_config(scf_opts);
        const std::vector<ScanPoint> points =
            scan_bond(m->m, b->set, cfg, atom_a, atom_b, from_bohr, to_bohr, steps);
        Json j = Json::object();
        j.set("atom_a", atom_a);
        j.set("atom_b", atom_b);
        j.set("basis", b->set.name);
        Json arr = Json::array();
        for (const auto& p : points) {
            Json point = Json::object();
            point.set("distance_bohr", p.distance);
            point.set("e_total", p.e_total);
            arr.push(std::move(point));
        }
        j.set("points", std::move(arr));
        *json_out = copy_string(j.dump() + "\n");
    });
}

void radscf_string_free(char* s) { delete[] s; }

}  // extern "C"
