"""Probes the UHF solution character of the propanedial radical fixture:
does the 30-degree HOMO/LUMO guess mixing land in a symmetric or a
broken-symmetry minimum, and what do the O spins / C-O overlap populations
look like there?  Informs the frozen expectations before the engine exists.
"""

import time

import numpy as np

import reference_hf as ref


def run(mix):
    shells = ref.load_basis_file("../../data/basis/sto-3g.bas")
    with open("../../data/geometries/propanedial_radical.xyz") as fh:
        mol = ref.parse_xyz(fh.read())
    funcs = ref.assign_basis(mol, shells)
    t0 = time.time()
    S, T, V, ERI = ref.build_tables(funcs, mol)
    print(f"tables built in {time.time()-t0:.1f} s (n={len(funcs)})")
    out = ref.scf(mol, funcs, S, T, V, ERI, mix_deg=mix, max_iter=300)
    pops, spins = ref.mulliken(funcs, out.Da, out.Db, S, len(mol.symbols))
    a_co1 = ref.overlap_population(funcs, out.Da, out.Db, S, 0, 1)
    a_co2 = ref.overlap_population(funcs, out.Da, out.Db, S, 3, 4)
    print(f"mix={mix}: converged={out.converged} iters={out.iterations} "
          f"E={out.e_total:.10f} <S2>={out.s_squared:.6f}")
    print("  spins per atom [C1 O2 C3 C4 O5 H6 H7 H8]:")
    print("  " + " ".join(f"{s:+.6f}" for s in spins))
    print(f"  A(C1-O2)={a_co1:.6f}  A(C4-O5)={a_co2:.6f}  |diff|={abs(a_co1-a_co2):.6f}")
    print(f"  top2 spin sum={sum(sorted(np.abs(spins))[-2:]):.6f}  net={spins.sum():.6f}")
    return out


for mix in (0.0, 30.0):
    run(mix)
