#include "core/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <thread>

#include "core/boys.hpp"
#include "core/error.hpp"

namespace radscf {

namespace {

constexpr int kMaxL = 2;           // highest supported shell (d)
constexpr int kMaxShift = kMaxL + 2;  // kinetic shifts a ket index by 2
constexpr int kRDim = 4 * kMaxL + 1;  // Hermite Coulomb tensor extent per axis

inline int ridx(int t, int u, int v) { return (t * kRDim + u) * kRDim + v; }

// Hermite expansion coefficients E[i][j][t] of a 1D primitive pair; t runs
// over 0..i+j, everything else stays zero.
struct Hermite1D {
    double e[kMaxShift + 1][kMaxShift + 1][2 * kMaxShift + 1];

    void fill(double a, double b, double xab, int imax, int jmax) {
        std::memset(e, 0, sizeof(e));
        const double p = a + b;
        const double inv2p = 0.5 / p;
        const double xpa = -b * xab / p;
        const double xpb = a * xab / p;
        e[0][0][0] = std::exp(-a * b * xab * xab / p);
        for (int i = 0; i < imax; ++i)
            for (int t = 0; t <= i + 1; ++t)
                e[i + 1][0][t] = (t > 0 ? inv2p * e[i][0][t - 1] : 0.0) + xpa * e[i][0][t] +
                                 (t + 1) * e[i][0][t + 1];
        for (int j = 0; j < jmax; ++j)
            for (int i = 0; i <= imax; ++i)
                for (int t = 0; t <= i + j + 1; ++t)
                    e[i][j + 1][t] = (t > 0 ? inv2p * e[i][j][t - 1] : 0.0) + xpb * e[i][j][t] +
                                     (t + 1) * e[i][j][t + 1];
    }
};

// Hermite Coulomb tensor R_{tuv}(alpha, pq) at auxiliary order 0, for all
// t+u+v <= L, written into out (ridx layout).
void hermite_coulomb(int L, double alpha, const Eigen::Vector3d& pq, double* out) {
    double fb[4 * kMaxL + 1];
    boys_fill(L, alpha * pq.squaredNorm(), fb);
    double p2a[4 * kMaxL + 1];
    p2a[0] = 1.0;
    for (int m = 1; m <= L; ++m) p2a[m] = p2a[m - 1] * (-2.0 * alpha);

    double buf_a[kRDim * kRDim * kRDim];
    double buf_b[kRDim * kRDim * kRDim];
    double* prev = buf_a;
    double* cur = buf_b;
    for (int m = L; m >= 0; --m) {
        cur[ridx(0, 0, 0)] = p2a[m] * fb[m];
        for (int total = 1; total <= L - m; ++total)
            for (int t = 0; t <= total; ++t)
                for (int u = 0; t + u <= total; ++u) {
                    const int v = total - t - u;
                    double val;
                    if (t > 0)
                        val = (t > 1 ? (t - 1) * prev[ridx(t - 2, u, v)] : 0.0) +
                              pq.x() * prev[ridx(t - 1, u, v)];
                    else if (u > 0)
                        val = (u > 1 ? (u - 1) * prev[ridx(t, u - 2, v)] : 0.0) +
                              pq.y() * prev[ridx(t, u - 1, v)];
                    else
                        val = (v > 1 ? (v - 1) * prev[ridx(t, u, v - 2)] : 0.0) +
                              pq.z() * prev[ridx(t, u, v - 1)];
                    cur[ridx(t, u, v)] = val;
                }
        std::swap(prev, cur);
    }
    for (int t = 0; t <= L; ++t)
        for (int u = 0; t + u <= L; ++u)
            for (int v = 0; t + u + v <= L; ++v) out[ridx(t, u, v)] = prev[ridx(t, u, v)];
}

constexpr double kPi = std::numbers::pi;

}  // namespace

double overlap(const BasisFunction& fa, const BasisFunction& fb) {
    const Eigen::Vector3d ab = fa.center - fb.center;
    double sum = 0.0;
    Hermite1D ex, ey, ez;
    for (const auto& pa : fa.primitives)
        for (const auto& pb : fb.primitives) {
            const double p = pa.exponent + pb.exponent;
            ex.fill(pa.exponent, pb.exponent, ab.x(), fa.powers[0], fb.powers[0]);
            ey.fill(pa.exponent, pb.exponent, ab.y(), fa.powers[1], fb.powers[1]);
            ez.fill(pa.exponent, pb.exponent, ab.z(), fa.powers[2], fb.powers[2]);
            sum += pa.coefficient * pb.coefficient * ex.e[fa.powers[0]][fb.powers[0]][0] *
                   ey.e[fa.powers[1]][fb.powers[1]][0] * ez.e[fa.powers[2]][fb.powers[2]][0] *
                   std::pow(kPi / p, 1.5);
        }
    return sum;
}

double kinetic(const BasisFunction& fa, const BasisFunction& fb) {
    const Eigen::Vector3d ab = fa.center - fb.center;
    double sum = 0.0;
    Hermite1D h[3];
    for (const auto& pa : fa.primitives)
        for (const auto& pb : fb.primitives) {
            const double b = pb.exponent;
            const double p = pa.exponent + b;
            double s[3], t[3];
            for (int d = 0; d < 3; ++d) {
                const int i = fa.powers[d];
                const int j = fb.powers[d];
                h[d].fill(pa.exponent, b, ab[d], i, j + 2);
                s[d] = h[d].e[i][j][0];
                // Laplacian acting on the ket, written through index shifts
                t[d] = -2.0 * b * b * h[d].e[i][j + 2][0] + b * (2 * j + 1) * h[d].e[i][j][0];
                if (j >= 2) t[d] -= 0.5 * j * (j - 1) * h[d].e[i][j - 2][0];
            }
            sum += pa.coefficient * pb.coefficient * std::pow(kPi / p, 1.5) *
                   (t[0] * s[1] * s[2] + s[0] * t[1] * s[2] + s[0] * s[1] * t[2]);
        }
    return sum;
}

double nuclear_attraction(const BasisFunction& fa, const BasisFunction& fb, const Molecule& m) {
    const Eigen::Vector3d ab = fa.center - fb.center;
    const int lx = fa.powers[0] + fb.powers[0];
    const int ly = fa.powers[1] + fb.powers[1];
    const int lz = fa.powers[2] + fb.powers[2];
    const int L = lx + ly + lz;
    double sum = 0.0;
    Hermite1D ex, ey, ez;
    double R[kRDim * kRDim * kRDim];
    for (const auto& pa : fa.primitives)
        for (const auto& pb : fb.primitives) {
            const double p = pa.exponent + pb.exponent;
            const Eigen::Vector3d P = (pa.exponent * fa.center + pb.exponent * fb.center) / p;
            ex.fill(pa.exponent, pb.exponent, ab.x(), fa.powers[0], fb.powers[0]);
            ey.fill(pa.exponent, pb.exponent, ab.y(), fa.powers[1], fb.powers[1]);
            ez.fill(pa.exponent, pb.exponent, ab.z(), fa.powers[2], fb.powers[2]);
            double pair_sum = 0.0;
            for (const auto& atom : m.atoms) {
                hermite_coulomb(L, p, P - atom.position, R);
                double acc = 0.0;
                for (int t = 0; t <= lx; ++t)
                    for (int u = 0; u <= ly; ++u)
                        for (int v = 0; v <= lz; ++v)
                            acc += ex.e[fa.powers[0]][fb.powers[0]][t] *
                                   ey.e[fa.powers[1]][fb.powers[1]][u] *
                                   ez.e[fa.powers[2]][fb.powers[2]][v] * R[ridx(t, u, v)];
                pair_sum -= atom.atomic_number * acc;
            }
            sum += pa.coefficient * pb.coefficient * (2.0 * kPi / p) * pair_sum;
        }
    return sum;
}

double eri(const BasisFunction& fa, const BasisFunction& fb, const BasisFunction& fc,
           const BasisFunction& fd) {
    const Eigen::Vector3d ab = fa.center - fb.center;
    const Eigen::Vector3d cd = fc.center - fd.center;
    const int bx = fa.powers[0] + fb.powers[0], by = fa.powers[1] + fb.powers[1],
              bz = fa.powers[2] + fb.powers[2];
    const int kx = fc.powers[0] + fd.powers[0], ky = fc.powers[1] + fd.powers[1],
              kz = fc.powers[2] + fd.powers[2];
    const int L = bx + by + bz + kx + ky + kz;
    double total = 0.0;
    Hermite1D e1x, e1y, e1z, e2x, e2y, e2z;
    double R[kRDim * kRDim * kRDim];
    for (const auto& pa : fa.primitives)
        for (const auto& pb : fb.primitives) {
            const double p = pa.exponent + pb.exponent;
            const Eigen::Vector3d P = (pa.exponent * fa.center + pb.exponent * fb.center) / p;
            e1x.fill(pa.exponent, pb.exponent, ab.x(), fa.powers[0], fb.powers[0]);
            e1y.fill(pa.exponent, pb.exponent, ab.y(), fa.powers[1], fb.powers[1]);
            e1z.fill(pa.exponent, pb.exponent, ab.z(), fa.powers[2], fb.powers[2]);
            for (const auto& pc : fc.primitives)
                for (const auto& pd : fd.primitives) {
                    const double q = pc.exponent + pd.exponent;
                    const Eigen::Vector3d Q =
                        (pc.exponent * fc.center + pd.exponent * fd.center) / q;
                    e2x.fill(pc.exponent, pd.exponent, cd.x(), fc.powers[0], fd.powers[0]);
                    e2y.fill(pc.exponent, pd.exponent, cd.y(), fc.powers[1], fd.powers[1]);
                    e2z.fill(pc.exponent, pd.exponent, cd.z(), fc.powers[2], fd.powers[2]);
                    const double alpha = p * q / (p + q);
                    hermite_coulomb(L, alpha, P - Q, R);
                    double sum = 0.0;
                    for (int t = 0; t <= bx; ++t)
                        for (int u = 0; u <= by; ++u)
                            for (int v = 0; v <= bz; ++v) {
                                const double eb = e1x.e[fa.powers[0]][fb.powers[0]][t] *
                                                  e1y.e[fa.powers[1]][fb.powers[1]][u] *
                                                  e1z.e[fa.powers[2]][fb.powers[2]][v];
                                for (int tau = 0; tau <= kx; ++tau)
                                    for (int nu = 0; nu <= ky; ++nu)
                                        for (int phi = 0; phi <= kz; ++phi) {
                                            const double ek =
                                                e2x.e[fc.powers[0]][fd.powers[0]][tau] *
                                                e2y.e[fc.powers[1]][fd.powers[1]][nu] *
                                                e2z.e[fc.powers[2]][fd.powers[2]][phi];
                                            const double sign =
                                                ((tau + nu + phi) & 1) ? -1.0 : 1.0;
                                            sum += eb * ek * sign *
                                                   R[ridx(t + tau, u + nu, v + phi)];
                                        }
                            }
                    total += pa.coefficient * pb.coefficient * pc.coefficient * pd.coefficient *
                             2.0 * std::pow(kPi, 2.5) /
                             (p * q * std::sqrt(p + q)) * sum;
                }
        }
    return total;
}

namespace {

// Precomputed per-primitive-pair data for one ordered shell pair.
struct PairPrim {
    double p;
    Eigen::Vector3d P;
    double coeff;
    // [dim][i][j][t] with i over the first shell's l, j over the second's
    double e[3][kMaxL + 1][kMaxL + 1][2 * kMaxL + 1];
};

struct ShellPair {
    const ShellBlock* a;
    const ShellBlock* b;
    std::vector<PairPrim> prims;
};

std::vector<ShellPair> make_shell_pairs(const MolecularBasis& basis) {
    std::vector<ShellPair> pairs;
    const auto nb = basis.blocks.size();
    pairs.reserve(nb * (nb + 1) / 2);
    Hermite1D h;
    for (std::size_t ia = 0; ia < nb; ++ia)
        for (std::size_t ib = 0; ib <= ia; ++ib) {
            const ShellBlock& A = basis.blocks[ia];
            const ShellBlock& B = basis.blocks[ib];
            ShellPair sp{&A, &B, {}};
            sp.prims.reserve(A.primitives.size() * B.primitives.size());
            const Eigen::Vector3d ab = A.center - B.center;
            for (const auto& pa : A.primitives)
                for (const auto& pb : B.primitives) {
                    PairPrim pp;
                    pp.p = pa.exponent + pb.exponent;
                    pp.P = (pa.exponent * A.center + pb.exponent * B.center) / pp.p;
                    pp.coeff = pa.coefficient * pb.coefficient;
                    for (int d = 0; d < 3; ++d) {
                        h.fill(pa.exponent, pb.exponent, ab[d], A.l, B.l);
                        for (int i = 0; i <= A.l; ++i)
                            for (int j = 0; j <= B.l; ++j)
                                for (int t = 0; t <= i + j; ++t) pp.e[d][i][j][t] = h.e[i][j][t];
                    }
                    sp.prims.push_back(pp);
                }
            pairs.push_back(std::move(sp));
        }
    return pairs;
}

// All contracted integrals of one shell quadruple, in component order
// (a outermost, d innermost). Component normalization is NOT applied here.
void shell_quad_eri(const ShellPair& bra, const ShellPair& ket, double* out) {
    const auto& ca = cartesian_powers(bra.a->l);
    const auto& cb = cartesian_powers(bra.b->l);
    const auto& cc = cartesian_powers(ket.a->l);
    const auto& cd = cartesian_powers(ket.b->l);
    const int nquad =
        bra.a->count * bra.b->count * ket.a->count * ket.b->count;
    std::fill(out, out + nquad, 0.0);
    const int L = bra.a->l + bra.b->l + ket.a->l + ket.b->l;
    double R[kRDim * kRDim * kRDim];
    for (const auto& pp : bra.prims)
        for (const auto& qq : ket.prims) {
            const double alpha = pp.p * qq.p / (pp.p + qq.p);
            hermite_coulomb(L, alpha, pp.P - qq.P, R);
            const double pref = 2.0 * std::pow(kPi, 2.5) /
                                (pp.p * qq.p * std::sqrt(pp.p + qq.p)) * pp.coeff * qq.coeff;
            int o = 0;
            for (const auto& pwa : ca)
                for (const auto& pwb : cb) {
                    const int bx = pwa[0] + pwb[0], by = pwa[1] + pwb[1], bz = pwa[2] + pwb[2];
                    for (const auto& pwc : cc)
                        for (const auto& pwd : cd) {
                            const int kx = pwc[0] + pwd[0], ky = pwc[1] + pwd[1],
                                      kz = pwc[2] + pwd[2];
                            double sum = 0.0;
                            for (int t = 0; t <= bx; ++t)
                                for (int u = 0; u <= by; ++u)
                                    for (int v = 0; v <= bz; ++v) {
                                        const double eb = pp.e[0][pwa[0]][pwb[0]][t] *
                                                          pp.e[1][pwa[1]][pwb[1]][u] *
                                                          pp.e[2][pwa[2]][pwb[2]][v];
                                        for (int tau = 0; tau <= kx; ++tau)
                                            for (int nu = 0; nu <= ky; ++nu)
                                                for (int phi = 0; phi <= kz; ++phi) {
                                                    const double ek =
                                                        qq.e[0][pwc[0]][pwd[0]][tau] *
                                                        qq.e[1][pwc[1]][pwd[1]][nu] *
                                                        qq.e[2][pwc[2]][pwd[2]][phi];
                                                    const double sgn =
                                                        ((tau + nu + phi) & 1) ? -1.0 : 1.0;
                                                    sum += eb * ek * sgn *
                                                           R[ridx(t + tau, u + nu, v + phi)];
                                                }
                                    }
                            out[o++] += pref * sum;
                        }
                }
        }
}

// Scatters one computed shell quadruple into the packed unique-integral list.
// The canonical-slot guards ensure every slot is written exactly once over the
// whole (sp >= sq) pair-of-pairs sweep.
void scatter_quad(const ShellPair& bra, const ShellPair& ket, bool same_pair, const double* vals,
                  std::vector<double>& eri_out) {
    const ShellBlock &A = *bra.a, &B = *bra.b, &C = *ket.a, &D = *ket.b;
    int o = 0;
    for (int ia = 0; ia < A.count; ++ia)
        for (int ib = 0; ib < B.count; ++ib) {
            const int i = A.first + ia;
            const int j = B.first + ib;
            if (&A == &B && i < j) {
                o += C.count * D.count;
                continue;
            }
            const std::size_t pij = pair_index(i, j);
            const double sab = A.component_scale[static_cast<std::size_t>(ia)] *
                               B.component_scale[static_cast<std::size_t>(ib)];
            for (int ic = 0; ic < C.count; ++ic)
                for (int id = 0; id < D.count; ++id, ++o) {
                    const int k = C.first + ic;
                    const int l = D.first + id;
                    if (&C == &D && k < l) continue;
                    const std::size_t pkl = pair_index(k, l);
                    if (same_pair && pij < pkl) continue;
                    eri_out[quad_index(pij, pkl)] =
                        vals[o] * sab * C.component_scale[static_cast<std::size_t>(ic)] *
                        D.component_scale[static_cast<std::size_t>(id)];
                }
        }
}

}  // namespace

IntegralTables build_integral_tables(const MolecularBasis& basis, const Molecule& m,
                                     int n_threads) {
    IntegralTables tab;
    const int n = basis.n();
    tab.n = n;
    tab.S.resize(n, n);
    tab.T.resize(n, n);
    tab.V.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const auto& fi = basis.functions[static_cast<std::size_t>(i)];
            const auto& fj = basis.functions[static_cast<std::size_t>(j)];
            tab.S(i, j) = tab.S(j, i) = overlap(fi, fj);
            tab.T(i, j) = tab.T(j, i) = kinetic(fi, fj);
            tab.V(i, j) = tab.V(j, i) = nuclear_attraction(fi, fj, m);
        }

    const std::size_t npair = static_cast<std::size_t>(n) * (n + 1) / 2;
    tab.eri.assign(npair * (npair + 1) / 2, 0.0);

    const auto pairs = make_shell_pairs(basis);
    const std::size_t nsp = pairs.size();
    const std::size_t ntask = nsp * (nsp + 1) / 2;

    auto run_range = [&](std::size_t begin, std::size_t end) {
        std::vector<double> vals(6 * 6 * 6 * 6);
        for (std::size_t t = begin; t < end; ++t) {
            // invert the triangular task index into (sp, sq), sp >= sq
            auto sp = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(t) + 1.0) - 1.0) / 2.0);
            while (sp * (sp + 1) / 2 > t) --sp;
            while ((sp + 1) * (sp + 2) / 2 <= t) ++sp;
            const std::size_t sq = t - sp * (sp + 1) / 2;
            shell_quad_eri(pairs[sp], pairs[sq], vals.data());
            scatter_quad(pairs[sp], pairs[sq], sp == sq, vals.data(), tab.eri);
        }
    };

    if (n_threads < 1) n_threads = 1;
    const auto nt = std::min<std::size_t>(static_cast<std::size_t>(n_threads), ntask ? ntask : 1);
    if (nt <= 1) {
        run_range(0, ntask);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(nt);
        for (std::size_t w = 0; w < nt; ++w) {
            const std::size_t begin = ntask * w / nt;
            const std::size_t end = ntask * (w + 1) / nt;
            workers.emplace_back(run_range, begin, end);
        }
        for (auto& th : workers) th.join();
    }
    return tab;
}

namespace {

constexpr char kMagic[] = "RADSCF-INT v1\n";

void write_matrix(std::ofstream& out, const Eigen::MatrixXd& mat) {
    for (int i = 0; i < mat.rows(); ++i)
        for (int j = 0; j < mat.cols(); ++j) {
            const double v = mat(i, j);
            out.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
}

void read_matrix(std::ifstream& in, Eigen::MatrixXd& mat) {
    for (int i = 0; i < mat.rows(); ++i)
        for (int j = 0; j < mat.cols(); ++j) {
            double v;
            in.read(reinterpret_cast<char*>(&v), sizeof(v));
            mat(i, j) = v;
        }
}

}  // namespace

void dump_integrals(const IntegralTables& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out.write(kMagic, sizeof(kMagic) - 1);
    const std::int64_t n = t.n;
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    write_matrix(out, t.S);
    write_matrix(out, t.T);
    write_matrix(out, t.V);
    const std::int64_t ne = static_cast<std::int64_t>(t.eri.size());
    out.write(reinterpret_cast<const char*>(&ne), sizeof(ne));
    out.write(reinterpret_cast<const char*>(t.eri.data()),
              static_cast<std::streamsize>(t.eri.size() * sizeof(double)));
    if (!out) throw InternalError("short write to '" + path + "'");
}

IntegralTables load_integrals(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    char magic[sizeof(kMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
        throw InputError("'" + path + "' is not an integral snapshot (bad magic)");
    std::int64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!in || n < 1 || n > 100000) throw InputError("integral snapshot has implausible size");
    IntegralTables t;
    t.n = static_cast<int>(n);
    t.S.resize(t.n, t.n);
    t.T.resize(t.n, t.n);
    t.V.resize(t.n, t.n);
    read_matrix(in, t.S);
    read_matrix(in, t.T);
    read_matrix(in, t.V);
    std::int64_t ne = 0;
    in.read(reinterpret_cast<char*>(&ne), sizeof(ne));
    const std::size_t npair = static_cast<std::size_t>(t.n) * (t.n + 1) / 2;
    if (!in || static_cast<std::size_t>(ne) != npair * (npair + 1) / 2)
        throw InputError("integral snapshot has inconsistent two-electron count");
    t.eri.resize(static_cast<std::size_t>(ne));
    in.read(reinterpret_cast<char*>(t.eri.data()),
            static_cast<std::streamsize>(t.eri.size() * sizeof(double)));
    if (!in) throw InputError("integral snapshot truncated");
    return t;
}

}  // namespace radscf
