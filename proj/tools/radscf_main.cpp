// Command-line front end; all chemistry goes through the C API in radscf.h.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radscf.h"

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

[[noreturn]] void fail_with(int code, const std::string& message) {
    std::fprintf(stderr, "{\n  \"error\": {\n    \"code\": %d,\n    \"message\": \"%s\"\n  }\n}\n",
                 code, json_escape(message).c_str());
    std::exit(code);
}

void check(radscf_status st) {
    if (st != RADSCF_OK) fail_with(static_cast<int>(st), radscf_last_error());
}

// Returned strings from the C API, released on scope exit.
struct ApiString {
    char* ptr = nullptr;
    ~ApiString() { radscf_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

void emit(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail_with(RADSCF_ERR_INPUT, "cannot open output file: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) fail_with(RADSCF_ERR_INPUT, "write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail_with(RADSCF_ERR_INPUT, "cannot move output into place: " + path);
    }
}

struct CommonOpts {
    std::string geometry;
    std::string basis = "sto-3g";
    std::string basis_path;
    int charge = 0;
    int multiplicity = 0;
    bool charge_set = false;
    bool mult_set = false;
    std::string method = "uhf";
    std::string format = "text";
    std::string output;
    radscf_scf_options scf{};
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    radscf_scf_options_init(&o.scf);
    cmd->add_option("--geometry", o.geometry, "XYZ geometry file (angstrom)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--basis", o.basis, "basis set name or .bas file path")
        ->capture_default_str();
    cmd->add_option("--basis-path", o.basis_path,
                    "extra colon-separated directories searched for <basis>.bas");
    cmd->add_option("--charge", o.charge, "total charge; overrides the XYZ comment")
        ->each([&o](const std::string&) { o.charge_set = true; });
    cmd->add_option("--mult", o.multiplicity, "spin multiplicity 2S+1; overrides the XYZ comment")
        ->each([&o](const std::string&) { o.mult_set = true; });
    cmd->add_option("--method", o.method, "rhf or uhf")
        ->check(CLI::IsMember({"rhf", "uhf"}))
        ->capture_default_str();
    cmd->add_option("--max-iterations", o.scf.max_iterations, "SCF iteration cap")
        ->capture_default_str();
    cmd->add_option("--energy-tol", o.scf.energy_tol, "SCF energy convergence (hartree)")
        ->capture_default_str();
    cmd->add_option("--density-tol", o.scf.density_rms_tol, "SCF density RMS convergence")
        ->capture_default_str();
    cmd->add_option("--diis-depth", o.scf.diis_depth, "DIIS history length; below 2 disables")
        ->capture_default_str();
    cmd->add_option("--level-shift", o.scf.level_shift, "virtual-orbital level shift (hartree)")
        ->capture_default_str();
    cmd->add_option("--threads", o.scf.n_threads,
                    "worker threads for integrals and Fock builds (results are identical "
                    "for any value)")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", o.output, "write the report here (atomic); default stdout");
}

struct MoleculeHandle {
    radscf_molecule* ptr = nullptr;
    ~MoleculeHandle() { radscf_molecule_free(ptr); }
};

struct BasisHandle {
    radscf_basis* ptr = nullptr;
    ~BasisHandle() { radscf_basis_free(ptr); }
};

struct ResultHandle {
    radscf_result* ptr = nullptr;
    ~ResultHandle() { radscf_result_free(ptr); }
};

void load_inputs(const CommonOpts& o, MoleculeHandle& mol, BasisHandle& basis) {
    check(radscf_molecule_from_xyz_file(o.geometry.c_str(), &mol.ptr));
    if (o.charge_set) check(radscf_molecule_set_charge(mol.ptr, o.charge));
    if (o.mult_set) check(radscf_molecule_set_multiplicity(mol.ptr, o.multiplicity));
    check(radscf_basis_load(o.basis.c_str(), o.basis_path.empty() ? nullptr : o.basis_path.c_str(),
                            &basis.ptr));
}

void finalize_scf_options(CommonOpts& o) { o.scf.restricted = o.method == "rhf" ? 1 : 0; }

void run_scf_checked(const CommonOpts& o, const MoleculeHandle& mol, const BasisHandle& basis,
                     ResultHandle& result, bool require_converged) {
    check(radscf_run_scf(mol.ptr, basis.ptr, &o.scf, &result.ptr));
    if (require_converged && !radscf_result_converged(result.ptr)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "SCF did not converge within %d iterations",
                      radscf_result_iterations(result.ptr));
        fail_with(RADSCF_ERR_SCF, msg);
    }
}

int run_energy(CommonOpts& o) {
    finalize_scf_options(o);
    MoleculeHandle mol;
    BasisHandle basis;
    ResultHandle result;
    load_inputs(o, mol, basis);
    run_scf_checked(o, mol, basis, result, true);
    ApiString report;
    if (o.format == "json")
        check(radscf_energy_report(result.ptr, &report.ptr));
    else
        check(radscf_energy_report_text(result.ptr, &report.ptr));
    emit(report.str(), o.output);
    return 0;
}

int run_analyze(CommonOpts& o) {
    finalize_scf_options(o);
    MoleculeHandle mol;
    BasisHandle basis;
    ResultHandle result;
    load_inputs(o, mol, basis);
    run_scf_checked(o, mol, basis, result, true);
    ApiString report;
    if (o.format == "json")
        check(radscf_analysis_report(result.ptr, &report.ptr));
    else
        check(radscf_analysis_report_text(result.ptr, &report.ptr));
    emit(report.str(), o.output);
    return 0;
}

int run_screen(CommonOpts& o, const radscf_screen_options& screen_opts) {
    finalize_scf_options(o);
    MoleculeHandle mol;
    BasisHandle basis;
    ResultHandle result;
    load_inputs(o, mol, basis);
    // An unconverged SCF is still a screening verdict (criteria needing the
    // wavefunction fail, with the reason recorded), so no convergence gate.
    run_scf_checked(o, mol, basis, result, false);
    ApiString report;
    if (o.format == "json")
        check(radscf_screening_report(result.ptr, &screen_opts, &report.ptr));
    else
        check(radscf_screening_report_text(result.ptr, &screen_opts, &report.ptr));
    emit(report.str(), o.output);
    return 0;
}

int run_optimize(CommonOpts& o, const radscf_opt_options& opt_opts,
                 const std::string& trajectory_path) {
    finalize_scf_options(o);
    MoleculeHandle mol;
    BasisHandle basis;
    load_inputs(o, mol, basis);
    ApiString report, trajectory;
    check(radscf_optimize(mol.ptr, basis.ptr, &o.scf, &opt_opts, &report.ptr, &trajectory.ptr));
    emit(trajectory.str(), trajectory_path);
    if (o.format == "json") {
        emit(report.str(), o.output);
        return 0;
    }
    const nlohmann::json j = nlohmann::json::parse(report.str());
    std::string text;
    char buf[160];
    std::snprintf(buf, sizeof buf, "converged    %s after %d accepted steps\n",
                  j["converged"].get<bool>() ? "yes" : "NO (step limit)", j["steps"].get<int>());
    text += buf;
    std::snprintf(buf, sizeof buf, "e_total      %.10f hartree\n", j["e_total"].get<double>());
    text += buf;
    std::snprintf(buf, sizeof buf, "grad_max     %.3e hartree/bohr\n",
                  j["grad_max"].get<double>());
    text += buf;
    text += "energy trace (hartree)\n";
    for (const auto& e : j["energy_trace"]) {
        std::snprintf(buf, sizeof buf, "  %.10f\n", e.get<double>());
        text += buf;
    }
    text += "final geometry (angstrom)\n";
    for (const auto& a : j["geometry"]["atoms"]) {
        std::snprintf(buf, sizeof buf, "  %-2s %14.8f %14.8f %14.8f\n",
                      a["element"].get<std::string>().c_str(), a["x"].get<double>(),
                      a["y"].get<double>(), a["z"].get<double>());
        text += buf;
    }
    std::snprintf(buf, sizeof buf, "trajectory written to %s\n", trajectory_path.c_str());
    text += buf;
    emit(text, o.output);
    return 0;
}

int run_scan(CommonOpts& o, const std::string& coord, double from, double to, int steps) {
    finalize_scf_options(o);
    int a = 0, b = 0;
    if (std::sscanf(coord.c_str(), "%d,%d", &a, &b) != 2 || a < 1 || b < 1)
        fail_with(RADSCF_ERR_INPUT,
                  "--coord expects two 1-based atom numbers separated by a comma, e.g. 1,2");
    MoleculeHandle mol;
    BasisHandle basis;
    load_inputs(o, mol, basis);
    ApiString report;
    check(radscf_scan(mol.ptr, basis.ptr, &o.scf, a - 1, b - 1, from, to, steps, &report.ptr));
    if (o.format == "json") {
        emit(report.str(), o.output);
        return 0;
    }
    const nlohmann::json j = nlohmann::json::parse(report.str());
    std::string text = "# distance_bohr      e_total\n";
    char buf[96];
    for (const auto& p : j["points"]) {
        std::snprintf(buf, sizeof buf, "%14.6f %18.10f\n", p["distance_bohr"].get<double>(),
                      p["e_total"].get<double>());
        text += buf;
    }
    emit(text, o.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radscf: Hartree-Fock energies, spin-density analysis and "
                 "radical-qubit suitability screening"};
    app.require_subcommand(1);
    app.set_version_flag("--version", radscf_version());

    CommonOpts energy_opts;
    CLI::App* energy = app.add_subcommand("energy", "total energy and orbitals");
    add_common_flags(energy, energy_opts);

    CommonOpts analyze_opts;
    CLI::App* analyze =
        app.add_subcommand("analyze", "energy plus populations, spins and bond orders");
    add_common_flags(analyze, analyze_opts);

    CommonOpts screen_opts_common;
    radscf_screen_options screen_opts;
    radscf_screen_options_init(&screen_opts);
    CLI::App* screen = app.add_subcommand("screen", "four-criterion qubit-suitability screen");
    add_common_flags(screen, screen_opts_common);
    screen->add_option("--top-k", screen_opts.localization_top_k,
                       "number of spin sites that must carry the spin")
        ->capture_default_str();
    screen->add_option("--fraction", screen_opts.localization_fraction,
                       "required top-k share of the net spin")
        ->capture_default_str();
    screen->add_option("--bond-order-min", screen_opts.bond_order_min,
                       "minimum overlap population on bonds at the spin sites")
        ->capture_default_str();
    screen->add_option("--min-chain", screen_opts.min_chain_length,
                       "required CH2 chain length for the ordering criterion")
        ->capture_default_str();

    CommonOpts opt_common;
    radscf_opt_options opt_opts;
    radscf_opt_options_init(&opt_opts);
    std::string opt_method = "qn";
    std::string trajectory_path = "trajectory.xyz";
    CLI::App* optimize = app.add_subcommand("optimize", "relax the geometry");
    add_common_flags(optimize, opt_common);
    optimize->add_option("--fd-step", opt_opts.fd_step, "finite-difference step (bohr)")
        ->capture_default_str();
    optimize->add_option("--grad-tol", opt_opts.grad_tol, "gradient tolerance (hartree/bohr)")
        ->capture_default_str();
    optimize->add_option("--max-steps", opt_opts.max_steps, "optimizer step cap")
        ->capture_default_str();
    optimize->add_option("--opt-method", opt_method, "sd (steepest descent) or qn (quasi-Newton)")
        ->check(CLI::IsMember({"sd", "qn"}))
        ->capture_default_str();
    optimize->add_option("--trajectory", trajectory_path, "multi-frame XYZ output path")
        ->capture_default_str();

    CommonOpts scan_common;
    std::string scan_coord;
    double scan_from = 0.0, scan_to = 0.0;
    int scan_steps = 0;
    CLI::App* scan = app.add_subcommand("scan", "1D bond scan emitting (distance, energy) pairs");
    add_common_flags(scan, scan_common);
    scan->add_option("--coord", scan_coord, "two 1-based atom numbers, e.g. 1,2")->required();
    scan->add_option("--from", scan_from, "first distance (bohr)")->required();
    scan->add_option("--to", scan_to, "last distance (bohr)")->required();
    scan->add_option("--steps", scan_steps, "number of points")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and --version
        std::stringstream ss;
        ss << e.what();
        fail_with(RADSCF_ERR_INPUT, ss.str());
    }

    try {
        if (energy->parsed()) return run_energy(energy_opts);
        if (analyze->parsed()) return run_analyze(analyze_opts);
        if (screen->parsed()) return run_screen(screen_opts_common, screen_opts);
        if (optimize->parsed()) {
            opt_opts.method = opt_method == "sd" ? 0 : 1;
            return run_optimize(opt_common, opt_opts, trajectory_path);
        }
        if (scan->parsed()) return run_scan(scan_common, scan_coord, scan_from, scan_to, scan_steps);
    } catch (const std::exception& e) {
        fail_with(RADSCF_ERR_INTERNAL, e.what());
    }
    fail_with(RADSCF_ERR_INPUT, "no command given");
}
