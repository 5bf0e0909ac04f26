"""Generates the fixture geometries in data/geometries/.

Structures are assembled from idealized internal coordinates (standard bond
lengths and angles) with small vector-geometry helpers, then checked against
the intended covalent connectivity using the same 1.2 x (r_cov sum) rule the
engine uses, so every fixture ships with a verified bond graph.
"""

import math
import os

import numpy as np

BOHR = 1.8897259886
OUT = os.path.join(os.path.dirname(__file__), "..", "..", "data", "geometries")

RADII = {"H": 0.31, "He": 0.28, "C": 0.76, "N": 0.71, "O": 0.66}

TET = math.degrees(math.acos(-1.0 / 3.0))  # 109.471


def unit(v):
    return v / np.linalg.norm(v)


def any_perp(v):
    ref = np.array([1.0, 0.0, 0.0])
    if abs(np.dot(unit(v), ref)) > 0.9:
        ref = np.array([0.0, 1.0, 0.0])
    return unit(np.cross(v, ref))


def tetra_dirs(a, b):
    """Two remaining tetrahedral directions at an atom with bonds along a, b."""
    m = -unit(unit(a) + unit(b))
    p = unit(np.cross(a, b))
    phi = math.radians(TET / 2.0)
    return m * math.cos(phi) + p * math.sin(phi), m * math.cos(phi) - p * math.sin(phi)


def sp2_third(a, b):
    return -unit(unit(a) + unit(b))


def methyl_dirs(a, ref=None):
    """Three directions at ~109.47 deg from -a, staggered around the bond."""
    u = -unit(a)
    p = any_perp(u) if ref is None else unit(ref - np.dot(ref, u) * u)
    q = np.cross(u, p)
    alpha = math.radians(180.0 - TET)
    out = []
    for g in (0.0, 120.0, 240.0):
        g = math.radians(g)
        out.append(u * math.cos(alpha)
                   + (p * math.cos(g) + q * math.sin(g)) * math.sin(alpha))
    return out


def rot2(v, deg):
    c, s = math.cos(math.radians(deg)), math.sin(math.radians(deg))
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1], 0.0])


class Mol:
    def __init__(self):
        self.atoms = []

    def add(self, sym, pos):
        self.atoms.append((sym, np.asarray(pos, dtype=float)))
        return len(self.atoms)  # 1-based index

    def pos(self, i):
        return self.atoms[i - 1][1]

    def write(self, name, comment):
        path = os.path.join(OUT, name)
        with open(path, "w") as fh:
            fh.write(f"{len(self.atoms)}\n{comment}\n")
            for sym, p in self.atoms:
                fh.write(f"{sym} {p[0]:.8f} {p[1]:.8f} {p[2]:.8f}\n")
        return path

    def bonds(self):
        edges = set()
        for i in range(len(self.atoms)):
            for j in range(i):
                si, pi = self.atoms[i]
                sj, pj = self.atoms[j]
                d = np.linalg.norm(pi - pj)
                if d <= 1.2 * (RADII[si] + RADII[sj]):
                    edges.add((j + 1, i + 1))
        return edges

    def neighbors(self):
        nb = {i: set() for i in range(1, len(self.atoms) + 1)}
        for a, b in self.bonds():
            nb[a].add(b)
            nb[b].add(a)
        return nb

    def formula(self):
        from collections import Counter
        return dict(Counter(s for s, _ in self.atoms))


def ch2_chain_length(mol):
    """Longest simple path over CH2 carbons (2 H + 2 heavy neighbors)."""
    nb = mol.neighbors()
    sym = {i: mol.atoms[i - 1][0] for i in nb}
    ch2 = set()
    for i in nb:
        if sym[i] != "C":
            continue
        hs = sum(1 for j in nb[i] if sym[j] == "H")
        heavy = sum(1 for j in nb[i] if sym[j] != "H")
        if hs == 2 and heavy == 2:
            ch2.add(i)
    best = 0
    for start in ch2:
        stack = [(start, {start})]
        while stack:
            node, seen = stack.pop()
            best = max(best, len(seen))
            for j in nb[node]:
                if j in ch2 and j not in seen:
                    stack.append((j, seen | {j}))
    return best


def carboxyl_matches(mol):
    nb = mol.neighbors()
    sym = {i: mol.atoms[i - 1][0] for i in nb}
    hits = []
    for c in nb:
        if sym[c] != "C":
            continue
        os_ = [j for j in nb[c] if sym[j] == "O"]
        cs = [j for j in nb[c] if sym[j] == "C"]
        if len(os_) == 2 and len(cs) == 1 and len(nb[c]) == 3:
            with_h = [o for o in os_ if any(sym[k] == "H" for k in nb[o])]
            if len(with_h) == 1:
                hits.append(c)
    return hits


def build_h2():
    m = Mol()
    r = 1.4 / BOHR
    m.add("H", [0, 0, 0])
    m.add("H", [0, 0, r])
    return m


def build_heh_plus():
    m = Mol()
    r = 1.4632 / BOHR
    m.add("He", [0, 0, 0])
    m.add("H", [0, 0, r])
    return m


def build_h2o():
    # the widely used water test geometry, given in bohr
    m = Mol()
    m.add("O", np.array([0.000000000000, -0.143225816552, 0.0]) / BOHR)
    m.add("H", np.array([1.638036840407, 1.136548822547, 0.0]) / BOHR)
    m.add("H", np.array([-1.638036840407, 1.136548822547, 0.0]) / BOHR)
    return m


def build_oh():
    m = Mol()
    m.add("O", [0, 0, 0])
    m.add("H", [0, 0, 0.9697])
    return m


def build_h_atom():
    m = Mol()
    m.add("H", [0, 0, 0])
    return m


def build_ch4():
    m = Mol()
    c = m.add("C", [0, 0, 0])
    r = 1.09 / math.sqrt(3.0)
    for s in ([1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]):
        m.add("H", np.array(s, dtype=float) * r)
    return m


def add_cooh(m, c_anchor_idx, direction):
    """Attach a COOH at 1.50 A from an anchor carbon along `direction`.
    Returns (C, O_carbonyl, O_hydroxyl, H) indices."""
    anchor = m.pos(c_anchor_idx)
    cpos = anchor + 1.50 * unit(direction)
    c = m.add("C", cpos)
    back = unit(anchor - cpos)
    p = any_perp(back)
    d1 = rot_about(back, p, 120.0)
    d2 = rot_about(back, p, -120.0)
    o1 = m.add("O", cpos + 1.21 * d1)   # C=O
    o2 = m.add("O", cpos + 1.36 * d2)   # C-OH
    oh_dir = sp2_third(unit(cpos - m.pos(o2)), unit(cpos - m.pos(o2)))
    # place H at ~105 deg from the O-C bond, in the sp2 plane
    oc = unit(cpos - m.pos(o2))
    h_dir = rot_about_axis(oc, np.cross(d1, back), 105.0)
    h = m.add("H", m.pos(o2) + 0.97 * h_dir)
    return c, o1, o2, h


def rot_about(back, p, deg):
    """Direction at `deg` from `back` within the back/p plane."""
    a = math.radians(deg)
    return unit(back * math.cos(a) + p * math.sin(a))


def rot_about_axis(v, axis, deg):
    axis = unit(axis)
    a = math.radians(deg)
    return (v * math.cos(a) + np.cross(axis, v) * math.sin(a)
            + axis * np.dot(axis, v) * (1 - math.cos(a)))


def build_acetic():
    m = Mol()
    c1 = m.add("C", [0, 0, 0])                       # methyl C
    c2, o1, o2, h = add_cooh(m, c1, np.array([1.0, 0, 0]))
    for d in methyl_dirs(unit(m.pos(c2) - m.pos(c1))):
        m.add("H", m.pos(c1) + 1.09 * d)
    return m


def build_formic():
    m = Mol()
    c = m.add("C", [0, 0, 0])
    o1 = m.add("O", c_pos := None)  # placeholder replaced below
    m.atoms.pop()
    d1 = rot2(np.array([1.0, 0, 0]), 120.0)
    d2 = rot2(np.array([1.0, 0, 0]), -120.0)
    o1 = m.add("O", 1.21 * d1)
    o2 = m.add("O", 1.36 * d2)
    m.add("H", m.pos(c) + 1.10 * np.array([-1.0, 0, 0]))
    h_dir = rot2(unit(m.pos(c) - m.pos(o2)), -105.0)
    m.add("H", m.pos(o2) + 0.97 * h_dir)
    return m


def build_propanedial_radical():
    """OHC-CH(.)-CHO, planar C2v, anti/anti carbonyls (W shape).

    Bond lengths lean toward the delocalized allyl-like resonance (long C-O,
    short C-C) so the minimal-basis UHF ground state shows the oxygen-centered
    spin pattern this radical is known for; with textbook carbonyl lengths the
    unrestricted solution overweights the central carbon instead."""
    m = Mol()
    cc, co, ch = 1.35, 1.34, 1.09
    half = 62.0
    dl = np.array([-math.sin(math.radians(half)), -math.cos(math.radians(half)), 0.0])
    dr = np.array([+math.sin(math.radians(half)), -math.cos(math.radians(half)), 0.0])
    c1 = m.add("C", cc * dl)                         # carbonyl C (left)
    to_c3 = unit(-m.pos(c1))
    o_dir = rot2(to_c3, -123.0)
    o2 = m.add("O", m.pos(c1) + co * o_dir)          # O on C1
    c3 = m.add("C", [0, 0, 0])                       # central radical C
    c4 = m.add("C", cc * dr)                         # carbonyl C (right)
    to_c3r = unit(-m.pos(c4))
    o5 = m.add("O", m.pos(c4) + co * rot2(to_c3r, 123.0))
    m.add("H", m.pos(c1) + ch * sp2_third(to_c3, unit(m.pos(o2) - m.pos(c1))))
    m.add("H", [0, ch, 0])                           # H on central C
    m.add("H", m.pos(c4) + ch * sp2_third(to_c3r, unit(m.pos(o5) - m.pos(c4))))
    return m


def zigzag_extend(m, prev_idx, cur_idx, n, bond=1.53, angle=112.0, axis=None):
    """Extends an all-anti carbon chain, zigzagging in the plane normal to
    `axis` (default: the z axis, i.e. a chain in the z=0 plane)."""
    if axis is None:
        axis = np.array([0.0, 0.0, 1.0])
    out = []
    sign = 1.0
    for _ in range(n):
        u = unit(m.pos(cur_idx) - m.pos(prev_idx))
        d = rot_about_axis(u, axis, sign * (180.0 - angle))
        new = m.add("C", m.pos(cur_idx) + bond * d)
        prev_idx, cur_idx = cur_idx, new
        sign = -sign
        out.append(new)
    return out


def add_ch2_hydrogens(m, chain):
    nb = m.neighbors()
    for c in chain:
        heavies = [j for j in nb[c] if m.atoms[j - 1][0] != "H"]
        a = unit(m.pos(heavies[0]) - m.pos(c))
        b = unit(m.pos(heavies[1]) - m.pos(c))
        for d in tetra_dirs(a, b):
            m.add("H", m.pos(c) + 1.09 * d)


def build_tempo():
    """2,2,6,6-tetramethylpiperidine-N-oxyl: chair ring, N at index 6,
    quaternary ring carbons at 2 and 4, nitroxide O at index 17."""
    m = Mol()
    rb = 1.51
    r = math.sqrt(rb * rb - 0.25)
    ring_pos = {}
    # ring order around the hexagon: C2, C8, C9, C10, C4, N6
    ring_seq = ["C2", "C8", "C9", "C10", "C4", "N6"]
    for k, namek in enumerate(ring_seq):
        th = math.radians(60.0 * k)
        ring_pos[namek] = np.array([r * math.cos(th), r * math.sin(th),
                                    0.25 * (1 if k % 2 == 0 else -1)])
    ring_nb = {namek: (ring_seq[(k - 1) % 6], ring_seq[(k + 1) % 6])
               for k, namek in enumerate(ring_seq)}

    def exo_dirs(namek):
        a_, b_ = ring_nb[namek]
        return tetra_dirs(unit(ring_pos[a_] - ring_pos[namek]),
                          unit(ring_pos[b_] - ring_pos[namek]))

    d2a, d2b = exo_dirs("C2")
    d4a, d4b = exo_dirs("C4")
    idx = {}
    idx["C1"] = m.add("C", ring_pos["C2"] + 1.53 * d2a)   # methyl
    idx["C2"] = m.add("C", ring_pos["C2"])
    idx["C3"] = m.add("C", ring_pos["C2"] + 1.53 * d2b)   # methyl
    idx["C4"] = m.add("C", ring_pos["C4"])
    idx["C5"] = m.add("C", ring_pos["C4"] + 1.53 * d4a)   # methyl
    na, nb_ = ring_nb["N6"]
    n_exo = sp2_third(unit(ring_pos[na] - ring_pos["N6"]),
                      unit(ring_pos[nb_] - ring_pos["N6"]))
    idx["N6"] = m.add("N", ring_pos["N6"])
    idx["C7"] = m.add("C", ring_pos["C4"] + 1.53 * d4b)   # methyl
    idx["C8"] = m.add("C", ring_pos["C8"])
    idx["C9"] = m.add("C", ring_pos["C9"])
    idx["C10"] = m.add("C", ring_pos["C10"])
    for namek in ("C8", "C9", "C10"):                      # ring CH2 hydrogens
        for d in exo_dirs(namek):
            m.add("H", ring_pos[namek] + 1.09 * d)
    m.add("O", ring_pos["N6"] + 1.28 * n_exo)              # index 17
    for methyl, anchor in (("C1", "C2"), ("C3", "C2"), ("C5", "C4"), ("C7", "C4")):
        a = unit(ring_pos[anchor] - m.pos(idx[methyl]))
        for d in methyl_dirs(a):
            m.add("H", m.pos(idx[methyl]) + 1.09 * d)
    return m


def build_diketone_sam_radical():
    """CH3-CO-CH(.)-CO-(CH2)12-COOH, 50 atoms.  Head atoms numbered so the
    carbonyl oxygens are 2 and 11, their carbons 1 and 8, carboxyl C/O 45/46."""
    m = Mol()
    cc, co = 1.44, 1.23
    # head: central C4 at origin, carbonyl carbons C1/C8 below at +-120 deg
    p_c4 = np.array([0.0, 0.0, 0.0])
    p_c1 = 1.44 * np.array([-math.cos(math.radians(30)), -0.5, 0.0])
    p_c8 = 1.44 * np.array([+math.cos(math.radians(30)), -0.5, 0.0])
    to_c4_l = unit(p_c4 - p_c1)
    to_c4_r = unit(p_c4 - p_c8)
    p_o2 = p_c1 + co * rot2(to_c4_l, -118.0)    # points into the V: O-O short
    p_o11 = p_c8 + co * rot2(to_c4_r, 118.0)
    p_c3 = p_c1 + 1.50 * rot2(to_c4_l, 118.0)   # methyl C
    p_c10 = p_c8 + 1.53 * rot2(to_c4_r, -118.0)  # first chain CH2

    i_c1 = m.add("C", p_c1)
    m.add("O", p_o2)                             # 2
    i_c3 = m.add("C", p_c3)
    m.add("C", p_c4)                             # 4 central radical C
    for d in methyl_dirs(unit(p_c1 - p_c3)):
        m.add("H", p_c3 + 1.09 * d)              # 5, 6, 7
    i_c8 = m.add("C", p_c8)                      # 8
    m.add("H", p_c4 + 1.08 * np.array([0.0, 1.0, 0.0]))   # 9, H on central C
    i_c10 = m.add("C", p_c10)                    # 10
    m.add("O", p_o11)                            # 11
    chain = zigzag_extend(m, i_c8, i_c10, 11)    # 12..22: CH2 x 11 more
    chain = [i_c10] + chain
    # hydrogens for CH2 carbons 10..21 (skip the last chain C until COOH is on)
    add_ch2_hydrogens(m, chain[:-1])             # 23..44
    last = chain[-1]
    u = unit(m.pos(last) - m.pos(chain[-2]))
    d = rot2(u, (180.0 - 112.0) * (1 if len(chain) % 2 == 0 else -1))
    add_cooh(m, last, d)                         # 45 C, 46 O, 47 O, 48 H
    add_ch2_hydrogens(m, [last])                 # 49, 50
    return m


def build_phenoxyl_sam_radical():
    """Phenoxyl-type radical: ring C1..C6, ester C7(=O8)-O9 on the para C3,
    methoxy groups O21-C22 / O26-C25 on the ortho C1/C5, phenoxyl O at 23,
    O9-(CH2)11-CH3 chain (C10..C20 + terminal C24) leaving the ring plane."""
    m = Mol()
    rring = 1.395
    # ring in the z=0 plane, ipso C6 at top (bears the phenoxyl O), para C3
    # at the bottom (bears the ester tail)
    p = {}
    for namek, deg in (("C6", 90.0), ("C1", 30.0), ("C2", -30.0), ("C3", -90.0),
                       ("C4", -150.0), ("C5", 150.0)):
        th = math.radians(deg)
        p[namek] = np.array([rring * math.cos(th), rring * math.sin(th), 0.0])
    order = ["C1", "C2", "C3", "C4", "C5", "C6"]
    nbmap = {"C1": ("C6", "C2"), "C2": ("C1", "C3"), "C3": ("C2", "C4"),
             "C4": ("C3", "C5"), "C5": ("C4", "C6"), "C6": ("C5", "C1")}

    def exo(namek):
        a_, b_ = nbmap[namek]
        return sp2_third(unit(p[a_] - p[namek]), unit(p[b_] - p[namek]))

    for namek in order:
        m.add("C", p[namek])                     # 1..6
    p_c7 = p["C3"] + 1.49 * exo("C3")
    m.add("C", p_c7)                             # 7
    back = unit(p["C3"] - p_c7)
    perp_ = unit(np.cross(np.array([0.0, 0.0, 1.0]), back))
    m.add("O", p_c7 + 1.21 * rot_about(back, perp_, 120.0))    # 8  ester C=O
    d_o9 = rot_about(back, perp_, -120.0)
    p_o9 = p_c7 + 1.34 * d_o9
    i_o9 = m.add("O", p_o9)                      # 9  ester bridge
    # first chain carbon dives out of the ring plane, away from the carbonyl
    d10 = unit(d_o9 * math.sin(math.radians(58.0))
               + np.array([0.0, 0.0, -math.cos(math.radians(58.0))]))
    p_c10 = p_o9 + 1.44 * d10
    i_c10 = m.add("C", p_c10)                    # 10
    chain_axis = unit(np.cross(d10, d_o9))
    chain = zigzag_extend(m, i_o9, i_c10, 10, axis=chain_axis)   # 11..20
    chain = [i_c10] + chain
    p_o21 = p["C1"] + 1.36 * exo("C1")
    i_o21 = m.add("O", p_o21)                    # 21
    i_c22 = m.add("C", p_o21 + 1.43 * rot2(unit(p_o21 - p["C1"]), 63.0))   # 22
    m.add("O", p["C6"] + 1.26 * exo("C6"))       # 23  phenoxyl O
    u = unit(m.pos(chain[-1]) - m.pos(chain[-2]))
    d = rot_about_axis(u, chain_axis, (180.0 - 112.0) * (1 if len(chain) % 2 == 0 else -1))
    i_c24 = m.add("C", m.pos(chain[-1]) + 1.53 * d)      # 24 terminal CH3
    p_o26 = p["C5"] + 1.36 * exo("C5")
    i_c25 = m.add("C", p_o26 + 1.43 * rot2(unit(p_o26 - p["C5"]), -63.0))  # 25
    m.add("O", p_o26)                            # 26
    # hydrogens: ring H on C2/C4, then methyls, chain, terminal
    for namek in ("C2", "C4"):
        m.add("H", p[namek] + 1.08 * exo(namek))
    for methyl, opos in ((i_c22, p_o21), (i_c25, p_o26)):
        a = unit(opos - m.pos(methyl))
        for d3 in methyl_dirs(a):
            m.add("H", m.pos(methyl) + 1.09 * d3)
    add_ch2_hydrogens(m, chain)
    a = unit(m.pos(chain[-1]) - m.pos(i_c24))
    for d3 in methyl_dirs(a):
        m.add("H", m.pos(i_c24) + 1.09 * d3)
    return m


def build_tetradecane():
    m = Mol()
    c1 = m.add("C", [0, 0, 0])
    c2 = m.add("C", [1.53 * math.sin(math.radians(56.0)),
                     1.53 * math.cos(math.radians(56.0)), 0.0])
    chain = [c2] + zigzag_extend(m, c1, c2, 12)
    mid = chain[:-1]                              # 12 CH2 carbons
    add_ch2_hydrogens(m, mid)
    for term, ref in ((c1, c2), (chain[-1], chain[-2])):
        a = unit(m.pos(ref) - m.pos(term))
        for d in methyl_dirs(a):
            m.add("H", m.pos(term) + 1.09 * d)
    return m


def check(label, cond):
    print(("ok  " if cond else "FAIL") + " " + label)
    if not cond:
        raise SystemExit(f"fixture check failed: {label}")


def min_nonbonded_gap(m):
    """Smallest margin (in A) by which a non-bonded pair clears the bond
    threshold; negative would mean a spurious bond."""
    worst = 1e9
    edges = m.bonds()
    for i in range(len(m.atoms)):
        for j in range(i):
            if (j + 1, i + 1) in edges:
                continue
            si, pi = m.atoms[i]
            sj, pj = m.atoms[j]
            d = np.linalg.norm(pi - pj)
            worst = min(worst, d - 1.2 * (RADII[si] + RADII[sj]))
    return worst


def main():
    os.makedirs(OUT, exist_ok=True)

    m = build_h2()
    m.write("h2.xyz", "charge=0 mult=1 hydrogen molecule, R = 1.4 bohr")
    check("h2: one bond", m.bonds() == {(1, 2)})

    m = build_heh_plus()
    m.write("heh_plus.xyz", "charge=1 mult=1 helium hydride cation, R = 1.4632 bohr")

    m = build_h2o()
    m.write("h2o.xyz", "charge=0 mult=1 water")
    check("h2o: two bonds", m.bonds() == {(1, 2), (1, 3)})

    m = build_oh()
    m.write("oh_radical.xyz", "charge=0 mult=2 hydroxyl radical")
    check("oh: one bond", m.bonds() == {(1, 2)})

    m = build_h_atom()
    m.write("h_atom.xyz", "charge=0 mult=2 hydrogen atom")

    m = build_ch4()
    m.write("ch4.xyz", "charge=0 mult=1 methane")
    check("ch4: 4 bonds", len(m.bonds()) == 4)

    m = build_acetic()
    m.write("acetic_acid.xyz", "charge=0 mult=1 acetic acid")
    check("acetic: formula C2H4O2", m.formula() == {"C": 2, "H": 4, "O": 2})
    check("acetic: one carboxyl", len(carboxyl_matches(m)) == 1)
    check("acetic: 7 bonds", len(m.bonds()) == 7)

    m = build_formic()
    m.write("formic_acid.xyz", "charge=0 mult=1 formic acid")
    check("formic: formula CH2O2", m.formula() == {"C": 1, "H": 2, "O": 2})
    check("formic: no carboxyl under strict pattern", len(carboxyl_matches(m)) == 0)

    m = build_propanedial_radical()
    m.write("propanedial_radical.xyz", "charge=0 mult=2 propane-1,3-dial-2-yl radical")
    check("propanedial: formula C3H3O2", m.formula() == {"C": 3, "H": 3, "O": 2})
    check("propanedial: 7 bonds", len(m.bonds()) == 7)
    nbm = m.neighbors()
    check("propanedial: O2 bonds C1 only", nbm[2] == {1})
    check("propanedial: O5 bonds C4 only", nbm[5] == {4})
    check("propanedial: central C bonds both carbonyl C", nbm[3] >= {1, 4})
    check("propanedial: clearance > 0.2 A", min_nonbonded_gap(m) > 0.2)

    m = build_tempo()
    m.write("tempo.xyz", "charge=0 mult=2 TEMPO nitroxide radical")
    check("tempo: formula C9H18NO", m.formula() == {"C": 9, "H": 18, "N": 1, "O": 1})
    nbm = m.neighbors()
    check("tempo: N6 bonded to C2, C4, O17", nbm[6] == {2, 4, 17})
    check("tempo: O17 bonds N only", nbm[17] == {6})
    check("tempo: ring closes (C8-C9-C10)", nbm[9] >= {8, 10} and 2 in nbm[8] and 4 in nbm[10])
    check("tempo: CH2 chain length 3", ch2_chain_length(m) == 3)
    check("tempo: no carboxyl", len(carboxyl_matches(m)) == 0)
    check("tempo: clearance > 0.15 A", min_nonbonded_gap(m) > 0.15)

    m = build_diketone_sam_radical()
    m.write("diketone_sam_radical.xyz", "charge=0 mult=2 beta-diketone radical with C12 linker and COOH anchor")
    f = m.formula()
    check("diketone sam: 50 atoms", len(m.atoms) == 50)
    check("diketone sam: formula C17H29O4", f == {"C": 17, "H": 29, "O": 4})
    nbm = m.neighbors()
    check("diketone sam: O2-C1 carbonyl", nbm[2] == {1})
    check("diketone sam: O11-C8 carbonyl", nbm[11] == {8})
    check("diketone sam: central C4 bonds C1, C8, H9", nbm[4] == {1, 8, 9})
    check("diketone sam: carboxyl at C45 with O46/O47",
          carboxyl_matches(m) == [45] and nbm[45] >= {46, 47, 22})
    check("diketone sam: CH2 chain length 12", ch2_chain_length(m) == 12)
    check("diketone sam: clearance > 0.1 A", min_nonbonded_gap(m) > 0.1)
    d_oo = np.linalg.norm(m.pos(2) - m.pos(11))
    check("diketone sam: O2..O11 within 1.9-2.6 A", 1.9 < d_oo < 2.6)

    m = build_phenoxyl_sam_radical()
    m.write("phenoxyl_sam_radical.xyz", "charge=0 mult=2 dimethoxyphenoxyl radical with ester-linked C12 tail")
    check("phenoxyl sam: 59 atoms", len(m.atoms) == 59)
    f = m.formula()
    check("phenoxyl sam: formula C21H33O5", f == {"C": 21, "H": 33, "O": 5})
    nbm = m.neighbors()
    check("phenoxyl sam: O23 on ring C6", nbm[23] == {6})
    check("phenoxyl sam: ester C7 bonds C3, O8, O9", nbm[7] == {3, 8, 9})
    check("phenoxyl sam: methoxy O21-C22 on C1", nbm[21] == {1, 22})
    check("phenoxyl sam: methoxy O26-C25 on C5", nbm[26] == {5, 25})
    check("phenoxyl sam: chain C10..C20 CH2 x 11", ch2_chain_length(m) == 11)
    check("phenoxyl sam: no carboxyl", len(carboxyl_matches(m)) == 0)
    check("phenoxyl sam: clearance > 0.1 A", min_nonbonded_gap(m) > 0.1)

    m = build_tetradecane()
    m.write("tetradecane.xyz", "charge=0 mult=1 tetradecane")
    check("tetradecane: formula C14H30", m.formula() == {"C": 14, "H": 30})
    check("tetradecane: CH2 chain length 12", ch2_chain_length(m) == 12)
    check("tetradecane: clearance > 0.2 A", min_nonbonded_gap(m) > 0.2)

    print("all fixtures written to", os.path.abspath(OUT))


if __name__ == "__main__":
    main()
