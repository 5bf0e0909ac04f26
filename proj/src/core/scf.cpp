#include "core/scf.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include "core/error.hpp"

namespace radscf {

namespace {

constexpr double kMixingAngleDeg = 30.0;  // guess-stage HOMO/LUMO rotation for open shells
constexpr int kFockChunks = 64;           // fixed partition => thread-count-independent sums

// largest index t with t(t+1)/2 <= q
std::size_t triangular_root(std::size_t q) {
    auto t = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(q) + 1.0) - 1.0) / 2.0);
    while (t * (t + 1) / 2 > q) --t;
    while ((t + 1) * (t + 2) / 2 <= q) ++t;
    return t;
}

struct QuadCursor {
    int i, j, k, l;

    explicit QuadCursor(std::size_t flat) {
        const std::size_t pij = triangular_root(flat);
        const std::size_t pkl = flat - pij * (pij + 1) / 2;
        const std::size_t ii = triangular_root(pij);
        i = static_cast<int>(ii);
        j = static_cast<int>(pij - ii * (ii + 1) / 2);
        const std::size_t kk = triangular_root(pkl);
        k = static_cast<int>(kk);
        l = static_cast<int>(pkl - kk * (kk + 1) / 2);
    }

    void advance() {
        if (k == i && l == j) {
            if (j < i) ++j;
            else {
                ++i;
                j = 0;
            }
            k = 0;
            l = 0;
        } else if (l < k) {
            ++l;
        } else {
            ++k;
            l = 0;
        }
    }
};

void accumulate_range(const IntegralTables& t, const Eigen::MatrixXd& d_tot,
                      const Eigen::MatrixXd& p_alpha, const Eigen::MatrixXd& p_beta,
                      bool restricted, std::size_t begin, std::size_t end, Eigen::MatrixXd& J,
                      Eigen::MatrixXd& k_alpha, Eigen::MatrixXd& k_beta) {
    QuadCursor q(begin);
    for (std::size_t s = begin; s < end; ++s, q.advance()) {
        const double v = t.eri[s];
        const int i = q.i, j = q.j, k = q.k, l = q.l;

        J(i, j) += v * (k == l ? 1.0 : 2.0) * d_tot(k, l);
        const bool same_pair = (i == k && j == l);
        if (!same_pair) J(k, l) += v * (i == j ? 1.0 : 2.0) * d_tot(i, j);

        // exchange: expand the distinct index mirrors of (ij|kl)
        int ma[8], mb[8], mc[8], md[8];
        int nm = 0;
        auto push = [&](int aa, int bb, int cc, int dd) {
            for (int z = 0; z < nm; ++z)
                if (ma[z] == aa && mb[z] == bb && mc[z] == cc && md[z] == dd) return;
            ma[nm] = aa;
            mb[nm] = bb;
            mc[nm] = cc;
            md[nm] = dd;
            ++nm;
        };
        push(i, j, k, l);
        push(j, i, k, l);
        push(i, j, l, k);
        push(j, i, l, k);
        push(k, l, i, j);
        push(l, k, i, j);
        push(k, l, j, i);
        push(l, k, j, i);
        for (int z = 0; z < nm; ++z) {
            k_alpha(ma[z], mc[z]) += p_alpha(mb[z], md[z]) * v;
            if (!restricted) k_beta(ma[z], mc[z]) += p_beta(mb[z], md[z]) * v;
        }
    }
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> fock_build(const Eigen::MatrixXd& p_alpha,
                                                       const Eigen::MatrixXd& p_beta,
                                                       const Eigen::MatrixXd& h,
                                                       const IntegralTables& t, bool restricted,
                                                       int n_threads) {
    const int n = t.n;
    const Eigen::MatrixXd d_tot = p_alpha + p_beta;
    const std::size_t nquad = t.eri.size();

    // Per-chunk buffers reduced in chunk order keep the floating-point
    // summation order independent of the thread count.
    const int nchunks = kFockChunks;
    std::vector<Eigen::MatrixXd> js(nchunks, Eigen::MatrixXd::Zero(n, n));
    std::vector<Eigen::MatrixXd> kas(nchunks, Eigen::MatrixXd::Zero(n, n));
    std::vector<Eigen::MatrixXd> kbs;
    if (!restricted) kbs.assign(nchunks, Eigen::MatrixXd::Zero(n, n));

    auto run_chunks = [&](int c0, int c1) {
        for (int c = c0; c < c1; ++c) {
            const std::size_t begin = nquad * static_cast<std::size_t>(c) / nchunks;
            const std::size_t end = nquad * static_cast<std::size_t>(c + 1) / nchunks;
            if (begin < end)
                accumulate_range(t, d_tot, p_alpha, p_beta, restricted, begin, end, js[c], kas[c],
                                 restricted ? kas[c] : kbs[c]);  // beta slot unused when restricted
        }
    };

    int nt = n_threads < 1 ? 1 : n_threads;
    if (nt > nchunks) nt = nchunks;
    if (nt <= 1) {
        run_chunks(0, nchunks);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(nt));
        for (int w = 0; w < nt; ++w)
            workers.emplace_back(run_chunks, nchunks * w / nt, nchunks * (w + 1) / nt);
        for (auto& th : workers) th.join();
    }

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd ka = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd kb = Eigen::MatrixXd::Zero(n, n);
    for (int c = 0; c < nchunks; ++c) {
        J += js[c];
        ka += kas[c];
        if (!restricted) kb += kbs[c];
    }
    // J was accumulated on the lower triangle only
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) J(j, i) = J(i, j);

    Eigen::MatrixXd fa = h + J - ka;
    Eigen::MatrixXd fb = restricted ? fa : Eigen::MatrixXd(h + J - kb);
    return {std::move(fa), std::move(fb)};
}

Eigen::MatrixXd level_shifted(const Eigen::MatrixXd& F, const Eigen::MatrixXd& S,
                              const Eigen::MatrixXd& P, double shift) {
    // adds `shift` to every virtual orbital energy: F + shift (S - S P S)
    return F + shift * (S - S * P * S);
}

}  // namespace

Eigen::MatrixXd lowdin_x(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double largest = ev(ev.size() - 1);
    const double smallest = ev(0);
    if (!(smallest > 1e-10 * largest)) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "linear dependence in basis: overlap eigenvalue %.6e below 1e-10 x largest (%.6e)",
                      smallest, largest);
        throw InputError(msg);
    }
    return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

Eigen::MatrixXd core_hamiltonian(const IntegralTables& t) { return t.T + t.V; }

Eigen::MatrixXd density_matrix(const Eigen::MatrixXd& C, int n_occ) {
    if (n_occ < 0 || n_occ > C.cols())
        throw InputError("occupation count " + std::to_string(n_occ) + " out of range 0.." +
                         std::to_string(C.cols()));
    if (n_occ == 0) return Eigen::MatrixXd::Zero(C.rows(), C.rows());
    const auto occ = C.leftCols(n_occ);
    return occ * occ.transpose();
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_fock_uhf(const Eigen::MatrixXd& p_alpha,
                                                           const Eigen::MatrixXd& p_beta,
                                                           const Eigen::MatrixXd& h,
                                                           const IntegralTables& t,
                                                           int n_threads) {
    return fock_build(p_alpha, p_beta, h, t, false, n_threads);
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> solve_roothaan(const Eigen::MatrixXd& F,
                                                           const Eigen::MatrixXd& S) {
    const Eigen::MatrixXd X = lowdin_x(S);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X.transpose() * F * X);
    return {X * es.eigenvectors(), es.eigenvalues()};
}

Eigen::MatrixXd diis_extrapolate(std::vector<DiisEntry>& history) {
    while (history.size() >= 2) {
        const auto m = static_cast<Eigen::Index>(history.size());
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m + 1, m + 1);
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b <= a; ++b) {
                B(a, b) = history[static_cast<std::size_t>(a)].error.dot(
                    history[static_cast<std::size_t>(b)].error);
                B(b, a) = B(a, b);
            }
        B.row(m).setConstant(-1.0);
        B.col(m).setConstant(-1.0);
        B(m, m) = 0.0;

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        if (!(smin > 0.0) || smax / smin > 1e12) {
            history.erase(history.begin());  // oldest entry poisons the system
            continue;
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
        rhs(m) = -1.0;
        const Eigen::VectorXd c = svd.solve(rhs);
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(history[0].fock.rows(), history[0].fock.cols());
        for (Eigen::Index a = 0; a < m; ++a) out += c(a) * history[static_cast<std::size_t>(a)].fock;
        return out;
    }
    return history.back().fock;
}

double total_energy(const Eigen::MatrixXd& p_alpha, const Eigen::MatrixXd& p_beta,
                    const Eigen::MatrixXd& h, const Eigen::MatrixXd& f_alpha,
                    const Eigen::MatrixXd& f_beta, double e_nn) {
    const double e_elec = 0.5 * ((p_alpha + p_beta).cwiseProduct(h).sum() +
                                 p_alpha.cwiseProduct(f_alpha).sum() +
                                 p_beta.cwiseProduct(f_beta).sum());
    return e_elec + e_nn;
}

SCFResult scf_uhf(const Molecule& m, const MolecularBasis& basis, const IntegralTables& t,
                  const SCFConfig& cfg) {
    const int n = t.n;
    if (basis.n() != n) throw InputError("basis and integral tables disagree on dimension");
    if (!(cfg.energy_tol > 0.0) || !(cfg.density_rms_tol > 0.0))
        throw InputError("SCF tolerances must be positive");
    if (cfg.max_iterations < 1) throw InputError("max_iterations must be at least 1");

    const ElectronCounts counts = electron_counts(m);
    const int na = counts.alpha;
    const int nb = counts.beta;
    if (na > n || nb > n)
        throw InputError("not enough basis functions (" + std::to_string(n) + ") for " +
                         std::to_string(na) + " alpha / " + std::to_string(nb) +
                         " beta electrons");
    if (cfg.restricted && na != nb)
        throw InputError("restricted calculation requires equal alpha and beta counts; got " +
                         std::to_string(na) + "/" + std::to_string(nb) +
                         " (multiplicity " + std::to_string(m.multiplicity) + ")");

    const Eigen::MatrixXd X = lowdin_x(t.S);
    const Eigen::MatrixXd h = core_hamiltonian(t);
    const double e_nn = nuclear_repulsion(m);
    const bool use_diis = cfg.diis_depth >= 2;

    auto solve_ortho = [&](const Eigen::MatrixXd& F) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X.transpose() * F * X);
        return std::pair<Eigen::MatrixXd, Eigen::VectorXd>{X * es.eigenvectors(),
                                                           es.eigenvalues()};
    };

    SCFResult res;
    res.e_nuclear = e_nn;

    Eigen::MatrixXd pa, pb;
    if (cfg.initial_guess == InitialGuess::provided_density) {
        if (cfg.initial_p_alpha.rows() != n || cfg.initial_p_alpha.cols() != n ||
            cfg.initial_p_beta.rows() != n || cfg.initial_p_beta.cols() != n)
            throw InputError("provided initial density has the wrong shape");
        pa = cfg.initial_p_alpha;
        pb = cfg.initial_p_beta;
    } else {
        auto [c0, e0] = solve_ortho(h);
        Eigen::MatrixXd ca = c0;
        if (!cfg.restricted && na != nb && na < n && na > 0) {
            // break alpha/beta symmetry so open shells can leave the
            // spin-symmetric saddle point; fixed angle keeps it reproducible
            const double th = kMixingAngleDeg * std::numbers::pi / 180.0;
            const Eigen::VectorXd homo = ca.col(na - 1);
            const Eigen::VectorXd lumo = ca.col(na);
            ca.col(na - 1) = std::cos(th) * homo - std::sin(th) * lumo;
            ca.col(na) = std::sin(th) * homo + std::cos(th) * lumo;
        }
        pa = density_matrix(ca, na);
        pb = density_matrix(c0, nb);
    }

    std::vector<DiisEntry> history;
    Eigen::MatrixXd ca, cb;
    Eigen::VectorXd ea, eb;
    double e_prev = 0.0;

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        auto [fa, fb] = fock_build(pa, pb, h, t, cfg.restricted, cfg.n_threads);
        const double e = total_energy(pa, pb, h, fa, fb, e_nn);
        const double de = e - e_prev;

        const Eigen::MatrixXd erra = X.transpose() * (fa * pa * t.S - t.S * pa * fa) * X;
        const Eigen::MatrixXd errb =
            cfg.restricted ? erra : Eigen::MatrixXd(X.transpose() * (fb * pb * t.S - t.S * pb * fb) * X);
        const double diis_error = std::sqrt(erra.squaredNorm() + errb.squaredNorm());

        Eigen::MatrixXd fa_use = fa, fb_use = fb;
        if (use_diis) {
            DiisEntry entry;
            entry.fock.resize(2 * n, n);
            entry.fock.topRows(n) = fa;
            entry.fock.bottomRows(n) = fb;
            entry.error.resize(2 * n * n);
            entry.error.head(n * n) = Eigen::Map<const Eigen::VectorXd>(erra.data(), n * n);
            entry.error.tail(n * n) = Eigen::Map<const Eigen::VectorXd>(errb.data(), n * n);
            history.push_back(std::move(entry));
            if (static_cast<int>(history.size()) > cfg.diis_depth) history.erase(history.begin());
            if (history.size() >= 2) {
                const Eigen::MatrixXd fex = diis_extrapolate(history);
                fa_use = fex.topRows(n);
                fb_use = fex.bottomRows(n);
            }
        }
        if (cfg.level_shift > 0.0) {
            fa_use = level_shifted(fa_use, t.S, pa, cfg.level_shift);
            if (!cfg.restricted) fb_use = level_shifted(fb_use, t.S, pb, cfg.level_shift);
        }

        std::tie(ca, ea) = solve_ortho(fa_use);
        if (cfg.restricted) {
            cb = ca;
            eb = ea;
        } else {
            std::tie(cb, eb) = solve_ortho(fb_use);
        }

        Eigen::MatrixXd pa_new = density_matrix(ca, na);
        Eigen::MatrixXd pb_new = cfg.restricted ? pa_new : density_matrix(cb, nb);
        const double rms = std::sqrt(((pa_new - pa).squaredNorm() + (pb_new - pb).squaredNorm()) /
                                     (2.0 * n * n));

        res.log.push_back({iter, e, de, rms, diis_error});
        res.iterations = iter;
        pa = std::move(pa_new);
        pb = std::move(pb_new);
        e_prev = e;
        if (std::abs(de) < cfg.energy_tol && rms < cfg.density_rms_tol) {
            res.converged = true;
            break;
        }
    }
    // max_iterations >= 1, so the loop produced orbitals in ca/cb

    // final energy and diagnostics from the settled density
    auto [fa, fb] = fock_build(pa, pb, h, t, cfg.restricted, cfg.n_threads);
    res.e_total = total_energy(pa, pb, h, fa, fb, e_nn);
    res.e_electronic = res.e_total - e_nn;
    const double ca_max = (fa * pa * t.S - t.S * pa * fa).cwiseAbs().maxCoeff();
    const double cb_max = (fb * pb * t.S - t.S * pb * fb).cwiseAbs().maxCoeff();
    res.commutator_max = ca_max > cb_max ? ca_max : cb_max;
    res.c_alpha = std::move(ca);
    res.c_beta = std::move(cb);
    res.eps_alpha = std::move(ea);
    res.eps_beta = std::move(eb);
    res.p_alpha = std::move(pa);
    res.p_beta = std::move(pb);

    const double sz = 0.5 * (na - nb);
    double pair_overlap = 0.0;
    if (na > 0 && nb > 0) {
        const Eigen::MatrixXd o =
            res.c_alpha.leftCols(na).transpose() * t.S * res.c_beta.leftCols(nb);
        pair_overlap = o.squaredNorm();
    }
    res.s_squared = sz * (sz + 1.0) + nb - pair_overlap;
    return res;
}

std::string format_iteration_log(const std::vector<SCFIteration>& log) {
    std::string out;
    char line[200];
    for (const auto& r : log) {
        std::snprintf(line, sizeof(line),
                      "iter=%d e_total=%.12f delta_e=%.6e density_rms=%.6e diis_error=%.6e\n",
                      r.iteration, r.e_total, r.delta_e, r.density_rms, r.diis_error);
        out += line;
    }
    return out;
}

}  // namespace radscf
