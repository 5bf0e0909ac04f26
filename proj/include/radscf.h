/* radscf: unrestricted Hartree-Fock engine with radical-suitability screening.
 *
 * All functions are thread-compatible: distinct handles may be used from
 * distinct threads concurrently, but a single handle must not be shared
 * without external locking. Strings returned through char** outputs are
 * heap-allocated; release them with radscf_string_free.
 */
#ifndef RADSCF_H
#define RADSCF_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the bundled CLI reuses them as process exit codes. */
typedef enum radscf_status {
    RADSCF_OK = 0,
    RADSCF_ERR_INPUT = 2,    /* malformed files, impossible options, bad indices */
    RADSCF_ERR_SCF = 3,      /* SCF or optimizer failed to converge */
    RADSCF_ERR_INTERNAL = 4  /* invariant violation; indicates a bug */
} radscf_status;

typedef struct radscf_molecule radscf_molecule;
typedef struct radscf_basis radscf_basis;
typedef struct radscf_result radscf_result;

/* Message for the calling thread's most recent failure. Never NULL; empty
 * when no error has occurred. Valid until the thread's next radscf call. */
const char* radscf_last_error(void);

const char* radscf_version(void);

/* ---- molecules ------------------------------------------------------- */

/* XYZ text or file: positions in angstrom; the comment line may carry
 * "charge=<int>" and "mult=<int>" tokens. Pass charge/multiplicity overrides
 * through the setters below. */
radscf_status radscf_molecule_from_xyz(const char* text, radscf_molecule** out);
radscf_status radscf_molecule_from_xyz_file(const char* path, radscf_molecule** out);

/* Overrides re-validate the electron count against the current spin state. */
radscf_status radscf_molecule_set_charge(radscf_molecule* m, int charge);
radscf_status radscf_molecule_set_multiplicity(radscf_molecule* m, int multiplicity);

int radscf_molecule_atom_count(const radscf_molecule* m);
int radscf_molecule_electron_count(const radscf_molecule* m);

void radscf_molecule_free(radscf_molecule* m);

/* ---- basis sets ------------------------------------------------------ */

/* Resolves `name` as a file path if it names one, otherwise as "<name>.bas"
 * in the colon-separated `search_path` directories (may be NULL), then in
 * $RADSCF_BASIS_PATH, then in the library's bundled data directory. */
radscf_status radscf_basis_load(const char* name, const char* search_path, radscf_basis** out);

void radscf_basis_free(radscf_basis* b);

/* ---- SCF ------------------------------------------------------------- */

typedef struct radscf_scf_options {
    int max_iterations;     /* default 128 */
    double energy_tol;      /* hartree, default 1e-9 */
    double density_rms_tol; /* default 1e-8 */
    int diis_depth;         /* default 8; below 2 disables DIIS */
    double level_shift;     /* hartree, default 0 */
    int restricted;         /* 0 = UHF (default), 1 = RHF (needs paired spins) */
    int n_threads;          /* default 1; results are identical for any value */
} radscf_scf_options;

void radscf_scf_options_init(radscf_scf_options* opts);

/* Runs SCF to completion. A result is produced even when the iteration limit
 * is hit without convergence; query radscf_result_converged. */
radscf_status radscf_run_scf(const radscf_molecule* m, const radscf_basis* b,
                             const radscf_scf_options* opts, radscf_result** out);

int radscf_result_converged(const radscf_result* r);
int radscf_result_iterations(const radscf_result* r);
double radscf_result_energy(const radscf_result* r);
double radscf_result_s_squared(const radscf_result* r);

/* One "key=value" record per SCF iteration, newline-separated. */
radscf_status radscf_result_iteration_log(const radscf_result* r, char** text_out);

void radscf_result_free(radscf_result* r);

/* ---- reports (JSON, deterministic formatting) ------------------------ */

/* Total/orbital energies, spin expectation, convergence data. */
radscf_status radscf_energy_report(const radscf_result* r, char** json_out);
radscf_status radscf_energy_report_text(const radscf_result* r, char** text_out);

/* Adds Mulliken populations, atomic spin densities, bond overlap
 * populations. Fails with RADSCF_ERR_SCF if the SCF did not converge. */
radscf_status radscf_analysis_report(const radscf_result* r, char** json_out);
radscf_status radscf_analysis_report_text(const radscf_result* r, char** text_out);

typedef struct radscf_screen_options {
    int localization_top_k;       /* default 2 */
    double localization_fraction; /* default 0.7 */
    double bond_order_min;        /* default 0.3 */
    int min_chain_length;         /* default 8 */
} radscf_screen_options;

void radscf_screen_options_init(radscf_screen_options* opts);

/* Four-criterion qubit-suitability screen. An unconverged SCF still yields a
 * report: the structural criteria are assessed, the electronic ones fail,
 * and the report carries reason "scf-unconverged". */
radscf_status radscf_screening_report(const radscf_result* r,
                                      const radscf_screen_options* opts, char** json_out);
radscf_status radscf_screening_report_text(const radscf_result* r,
                                           const radscf_screen_options* opts, char** text_out);

/* ---- geometry -------------------------------------------------------- */

typedef struct radscf_opt_options {
    double fd_step;  /* bohr, default 5e-3 */
    double grad_tol; /* hartree/bohr, default 3e-4 */
    int max_steps;   /* default 100 */
    int method;      /* 0 = steepest descent, 1 = quasi-Newton (default) */
} radscf_opt_options;

void radscf_opt_options_init(radscf_opt_options* opts);

/* Relaxes the geometry. json_out describes the final geometry, energy trace
 * and convergence; trajectory_xyz_out (optional, may be NULL) receives every
 * accepted frame as concatenated XYZ. */
radscf_status radscf_optimize(const radscf_molecule* m, const radscf_basis* b,
                              const radscf_scf_options* scf_opts,
                              const radscf_opt_options* opt_opts, char** json_out,
                              char** trajectory_xyz_out);

/* Energy profile over the atom_a-atom_b separation (0-based indices,
 * distances in bohr, endpoints included). */
radscf_status radscf_scan(const radscf_molecule* m, const radscf_basis* b,
                          const radscf_scf_options* scf_opts, int atom_a, int atom_b,
                          double from_bohr, double to_bohr, int steps, char** json_out);

void radscf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* RADSCF_H */
